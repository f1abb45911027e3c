//! One-shot evaluations: `compose`, `boost`, `rotate`, `gboost`.
//!
//! Each command is written once over [`CliScalar`]; float mode runs the core
//! at `f64`, exact mode at `BigRational`.

use std::fmt::Write as _;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use relkin_core::oracle::{fraction, HalfAngle};
use relkin_core::{
    boost_event, boost_event_3d, compose, g_factor, g_factor_3d, generalized_boost, generalized_boost_3d,
    invariance_residual_1d, invariance_residual_3d, rotate_coordinate, rotate_position_3d, rotate_velocity,
    rotate_velocity_3d, Beta, Event1D, ReciprocityAxis, ReciprocityRotation, Scalar, Sign, Vec3,
};
use serde::Serialize;

use crate::config::{Format, Mode};
use crate::error::{CliError, Result};
use crate::parse::{self, AngleSpec};
use crate::report::{fmt_f64, ComplexNamed, Named};

/// A scalar the command line can parse and print.
pub trait CliScalar: Scalar {
    const MODE: Mode;
    fn parse(s: &str) -> Result<Self>;
    fn render(&self) -> String;
    fn rotation(spec: &AngleSpec) -> Result<ReciprocityRotation<Self>>;
}

impl CliScalar for f64 {
    const MODE: Mode = Mode::Float;

    fn parse(s: &str) -> Result<Self> {
        parse::parse_real(s)
    }

    fn render(&self) -> String {
        fmt_f64(*self)
    }

    fn rotation(spec: &AngleSpec) -> Result<ReciprocityRotation<Self>> {
        spec.to_rotation()
    }
}

impl CliScalar for BigRational {
    const MODE: Mode = Mode::Exact;

    fn parse(s: &str) -> Result<Self> {
        parse::parse_rational(s)
    }

    fn render(&self) -> String {
        fraction(self)
    }

    fn rotation(spec: &AngleSpec) -> Result<ReciprocityRotation<Self>> {
        Ok(match spec.to_half_angle()? {
            HalfAngle::Finite(r) => ReciprocityRotation::from_tan_half(r)?,
            HalfAngle::Infinite => ReciprocityRotation::half_turn(),
        })
    }
}

/// Raw operation flags, as strings; which ones are required depends on the command.
#[derive(Debug, Clone, Default)]
pub struct OpInputs {
    pub u: Option<String>,
    pub v: Option<String>,
    pub sign: Option<Sign>,
    pub x: Option<String>,
    pub t: Option<String>,
    pub beta: Option<String>,
    pub phi: Option<String>,
    pub phi_deg: Option<String>,
    pub vec: Option<String>,
    pub axis: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Compose,
    Boost,
    Rotate,
    Gboost,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Compose => "compose",
            Op::Boost => "boost",
            Op::Rotate => "rotate",
            Op::Gboost => "gboost",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandOutput {
    pub command: String,
    pub mode: Mode,
    pub inputs: Vec<Named>,
    pub outputs: Vec<ComplexNamed>,
}

impl CommandOutput {
    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(self)? + "\n",
            Format::Csv => {
                let mut s = String::from("name,re,im\n");
                for o in &self.outputs {
                    let _ = writeln!(s, "{},{},{}", o.name, o.re, o.im);
                }
                s
            }
        })
    }

    pub fn output(&self, name: &str) -> Option<&ComplexNamed> {
        self.outputs.iter().find(|o| o.name == name)
    }
}

struct Builder<S> {
    inputs: Vec<Named>,
    outputs: Vec<ComplexNamed>,
    _s: std::marker::PhantomData<S>,
}

impl<S: CliScalar> Builder<S> {
    fn new() -> Self {
        Builder { inputs: Vec::new(), outputs: Vec::new(), _s: std::marker::PhantomData }
    }

    fn input(&mut self, name: &str, value: impl Into<String>) {
        self.inputs.push(Named { name: name.into(), value: value.into() });
    }

    fn scalar(&mut self, name: &str, raw: &Option<String>) -> Result<S> {
        let raw = raw.as_deref().ok_or_else(|| CliError::usage(format!("missing --{name}")))?;
        let v = S::parse(raw)?;
        self.input(name, v.render());
        Ok(v)
    }

    fn vector(&mut self, name: &str, raw: &str) -> Result<Vec3<S>> {
        let [a, b, c] = parse::parse_triple(raw, S::parse, S::zero)?;
        self.input(name, format!("{},{},{}", a.render(), b.render(), c.render()));
        Ok(Vec3::new(a, b, c)?)
    }

    fn rotation(&mut self, args: &OpInputs) -> Result<ReciprocityRotation<S>> {
        let spec = match (&args.phi, &args.phi_deg) {
            (Some(_), Some(_)) => return Err(CliError::usage("give either --phi or --phi-deg, not both")),
            (Some(p), None) => parse::parse_phi(p)?,
            (None, Some(d)) => parse::parse_phi_deg(d)?,
            (None, None) => return Err(CliError::usage("missing --phi (or --phi-deg)")),
        };
        let rot = S::rotation(&spec)?;
        self.input("phi", fmt_f64(rot.phi()));
        match rot.tan_half() {
            Some(r) => self.input("r", r.render()),
            None => self.input("r", "inf"),
        }
        Ok(rot)
    }

    fn real(&mut self, name: &str, v: S) {
        self.outputs.push(ComplexNamed { name: name.into(), re: v.render(), im: S::zero().render() });
    }

    fn complex(&mut self, name: &str, z: Complex<S>) {
        self.outputs.push(ComplexNamed { name: name.into(), re: z.re.render(), im: z.im.render() });
    }

    fn finish(self, op: Op) -> CommandOutput {
        CommandOutput { command: op.name().into(), mode: S::MODE, inputs: self.inputs, outputs: self.outputs }
    }
}

const AXES: [&str; 3] = ["x", "y", "z"];

fn axis<S: CliScalar>(b: &mut Builder<S>, args: &OpInputs, rot: ReciprocityRotation<S>) -> Result<ReciprocityAxis<S>> {
    let n = b.vector("axis", args.axis.as_deref().unwrap_or("1,0,0"))?;
    Ok(ReciprocityAxis::new(n, rot)?)
}

fn velocity3<S: CliScalar>(b: &mut Builder<S>, args: &OpInputs) -> Result<Vec3<S>> {
    let raw = args.beta.as_deref().ok_or_else(|| CliError::usage("missing --beta"))?;
    b.vector("beta", raw)
}

fn run_typed<S: CliScalar>(op: Op, args: &OpInputs) -> Result<CommandOutput> {
    let mut b = Builder::<S>::new();
    match op {
        Op::Compose => {
            let u = Beta::new(b.scalar("u", &args.u)?)?;
            let v = Beta::new(b.scalar("v", &args.v)?)?;
            let sign = args.sign.unwrap_or(Sign::Plus);
            b.input("sign", if sign == Sign::Plus { "+" } else { "-" });
            let w = compose(&u, &v, sign)?;
            b.real("w", w.into_inner());
        }
        Op::Boost => {
            if let Some(raw) = &args.vec {
                let x = b.vector("vec", raw)?;
                let t = b.scalar("t", &args.t)?;
                let v = velocity3(&mut b, args)?;
                let (xo, to) = boost_event_3d(&x, &t, &v)?;
                for (name, c) in AXES.iter().zip(xo.components()) {
                    b.real(name, c);
                }
                b.real("t", to);
            } else {
                let e = Event1D::new(b.scalar("x", &args.x)?, b.scalar("t", &args.t)?)?;
                let beta = Beta::new(b.scalar("beta", &args.beta)?)?;
                let out = boost_event(&e, &beta)?;
                b.real("x", out.x);
                b.real("t", out.t);
            }
        }
        Op::Rotate => {
            let rot = b.rotation(args)?;
            if let Some(raw) = &args.vec {
                let w = b.vector("vec", raw)?;
                let axis = axis(&mut b, args, rot)?;
                let out = match &args.t {
                    Some(_) => {
                        let t = b.scalar("t", &args.t)?;
                        rotate_position_3d(&w, &t, &axis)?
                    }
                    None => rotate_velocity_3d(&w, &axis)?,
                };
                for (name, c) in AXES.iter().zip(out.components()) {
                    b.complex(name, c);
                }
            } else if args.beta.is_some() {
                let beta = Beta::new(b.scalar("beta", &args.beta)?)?;
                let z = rotate_velocity(&beta, &rot)?;
                b.complex("v", z);
            } else if args.x.is_some() {
                let e = Event1D::new(b.scalar("x", &args.x)?, b.scalar("t", &args.t)?)?;
                let z = rotate_coordinate(&e, &rot)?;
                b.complex("x", z);
            } else {
                return Err(CliError::usage("rotate needs --beta, --x with --t, or --vec"));
            }
        }
        Op::Gboost => {
            let rot = b.rotation(args)?;
            if let Some(raw) = &args.vec {
                let x = b.vector("vec", raw)?;
                let t = b.scalar("t", &args.t)?;
                let v = velocity3(&mut b, args)?;
                let axis = axis(&mut b, args, rot)?;
                let out = generalized_boost_3d(&x, &t, &v, &axis)?;
                for (name, c) in AXES.iter().zip(out.x_out.components()) {
                    b.complex(name, c);
                }
                b.complex("t", out.t_out);
                b.complex("g", g_factor_3d(&x, &t, &v, &axis)?);
                b.complex("residual", invariance_residual_3d(&x, &t, &v, &axis)?);
            } else {
                let e = Event1D::new(b.scalar("x", &args.x)?, b.scalar("t", &args.t)?)?;
                let beta = Beta::new(b.scalar("beta", &args.beta)?)?;
                let out = generalized_boost(&e, &beta, &rot)?;
                b.complex("x", out.x_out);
                b.complex("t", out.t_out);
                b.complex("g", g_factor(&e, &beta, &rot)?);
                b.complex("residual", invariance_residual_1d(&e, &beta, &rot)?);
            }
        }
    }
    Ok(b.finish(op))
}

pub fn run_op(op: Op, mode: Mode, args: &OpInputs) -> Result<CommandOutput> {
    match mode {
        Mode::Float => run_typed::<f64>(op, args),
        Mode::Exact => run_typed::<BigRational>(op, args),
    }
}

/// Whether a printed residual is zero, for either back end's rendering.
pub fn is_zero_text(s: &str) -> bool {
    s == "0/1" || s.parse::<f64>().map(|v| v.is_zero()).unwrap_or(false)
}
