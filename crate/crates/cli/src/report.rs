//! Residual reports: per-configuration records plus a summary per check.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use relkin_core::oracle::fraction;
use serde::{Deserialize, Serialize};

use crate::config::SweepConfig;

pub const SCHEMA_ID: &str = "relkin/residual-report/v1";

/// Floats print with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// A number in either back end.
#[derive(Debug, Clone, PartialEq)]
pub enum Num {
    Float(f64),
    Exact(BigRational),
    /// The projective point, for `r = tan(φ/2)` at φ = π.
    Infinite,
}

impl Num {
    pub fn render(&self) -> String {
        match self {
            Num::Float(v) => fmt_f64(*v),
            Num::Exact(v) => fraction(v),
            Num::Infinite => "inf".into(),
        }
    }
}

impl From<f64> for Num {
    fn from(v: f64) -> Self {
        Num::Float(v)
    }
}

impl From<BigRational> for Num {
    fn from(v: BigRational) -> Self {
        Num::Exact(v)
    }
}

impl From<&BigRational> for Num {
    fn from(v: &BigRational) -> Self {
        Num::Exact(v.clone())
    }
}

/// Size of a residual, ordered within one back end.
///
/// Floats use the complex modulus; exact values use `max(|re|, |im|)`, which
/// is rational and vanishes exactly when the residual does.
#[derive(Debug, Clone, PartialEq)]
pub enum Magnitude {
    Float(f64),
    Exact(BigRational),
}

impl Default for Magnitude {
    fn default() -> Self {
        Magnitude::Float(0.0)
    }
}

impl Magnitude {
    fn of_float(z: Complex<f64>) -> Self {
        Magnitude::Float(z.re.hypot(z.im))
    }

    fn of_exact(z: &Complex<BigRational>) -> Self {
        let (a, b) = (z.re.abs(), z.im.abs());
        Magnitude::Exact(if a > b { a } else { b })
    }

    pub fn render(&self) -> String {
        match self {
            Magnitude::Float(v) => fmt_f64(*v),
            Magnitude::Exact(v) => fraction(v),
        }
    }

    /// NaN sorts above everything so it is always reported.
    fn cmp_key(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Magnitude::Float(a), Magnitude::Float(b)) => match (a.is_nan(), b.is_nan()) {
                (true, true) => Ordering::Equal,
                (true, false) => Ordering::Greater,
                (false, true) => Ordering::Less,
                _ => a.partial_cmp(b).unwrap_or(Ordering::Equal),
            },
            (Magnitude::Exact(a), Magnitude::Exact(b)) => a.cmp(b),
            (Magnitude::Float(_), Magnitude::Exact(_)) => Ordering::Less,
            (Magnitude::Exact(_), Magnitude::Float(_)) => Ordering::Greater,
        }
    }
}

/// How a section decides pass/fail.
#[derive(Debug, Clone, PartialEq)]
pub enum Threshold {
    /// `max_abs_residual < tol`.
    Below(f64),
    /// Every residual exactly zero.
    ExactZero,
}

impl Threshold {
    fn render(&self) -> String {
        match self {
            Threshold::Below(t) => format!("{t:e}"),
            Threshold::ExactZero => "0/1".into(),
        }
    }

    fn accepts(&self, m: &Magnitude) -> bool {
        match (self, m) {
            (Threshold::Below(t), Magnitude::Float(v)) => *v < *t,
            (Threshold::Below(t), Magnitude::Exact(v)) => relkin_core::oracle::rat_f64(v) < *t,
            (Threshold::ExactZero, Magnitude::Exact(v)) => v.is_zero(),
            (Threshold::ExactZero, Magnitude::Float(v)) => *v == 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Named {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexNamed {
    pub name: String,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Record {
    pub phi_index: usize,
    pub sample_index: usize,
    pub phi: Option<String>,
    pub inputs: Vec<Named>,
    pub outputs: Vec<ComplexNamed>,
    pub residual_re: String,
    pub residual_im: String,
    pub abs_residual: String,
    #[serde(skip)]
    pub magnitude: Magnitude,
}

/// Where a record sits in the (φ, sample) grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slot {
    pub phi_index: usize,
    pub sample_index: usize,
    pub phi: Option<f64>,
}

impl Slot {
    pub fn fixed(sample_index: usize) -> Self {
        Slot { phi_index: 0, sample_index, phi: None }
    }
}

impl Record {
    pub fn float(
        slot: Slot,
        inputs: &[(&str, f64)],
        outputs: &[(&str, Complex<f64>)],
        residual: Complex<f64>,
    ) -> Self {
        let magnitude = Magnitude::of_float(residual);
        Record {
            phi_index: slot.phi_index,
            sample_index: slot.sample_index,
            phi: slot.phi.map(fmt_f64),
            inputs: inputs.iter().map(|(n, v)| Named { name: n.to_string(), value: fmt_f64(*v) }).collect(),
            outputs: outputs
                .iter()
                .map(|(n, z)| ComplexNamed { name: n.to_string(), re: fmt_f64(z.re), im: fmt_f64(z.im) })
                .collect(),
            residual_re: fmt_f64(residual.re),
            residual_im: fmt_f64(residual.im),
            abs_residual: magnitude.render(),
            magnitude,
        }
    }

    pub fn exact(
        slot: Slot,
        inputs: &[(&str, Num)],
        outputs: &[(&str, Complex<BigRational>)],
        residual: Complex<BigRational>,
    ) -> Self {
        let magnitude = Magnitude::of_exact(&residual);
        Record {
            phi_index: slot.phi_index,
            sample_index: slot.sample_index,
            phi: slot.phi.map(fmt_f64),
            inputs: inputs.iter().map(|(n, v)| Named { name: n.to_string(), value: v.render() }).collect(),
            outputs: outputs
                .iter()
                .map(|(n, z)| ComplexNamed { name: n.to_string(), re: fraction(&z.re), im: fraction(&z.im) })
                .collect(),
            residual_re: fraction(&residual.re),
            residual_im: fraction(&residual.im),
            abs_residual: magnitude.render(),
            magnitude,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Argmax {
    pub phi_index: usize,
    pub sample_index: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub count: usize,
    pub max_abs_residual: String,
    pub argmax: Option<Argmax>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Section {
    pub name: String,
    /// The identity being checked, in words.
    pub identity: String,
    /// Ungated sections are reported but never fail the run.
    pub gated: bool,
    pub tolerance: String,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl Section {
    /// Sort records into (phi_index, sample_index) order and summarise.
    pub fn new(name: &str, identity: &str, gated: bool, threshold: Threshold, mut records: Vec<Record>) -> Self {
        records.sort_by_key(|r| (r.phi_index, r.sample_index));
        let worst = records.iter().reduce(|best, r| {
            if r.magnitude.cmp_key(&best.magnitude) == Ordering::Greater {
                r
            } else {
                best
            }
        });
        let summary = match worst {
            Some(r) => Summary {
                count: records.len(),
                max_abs_residual: r.magnitude.render(),
                argmax: Some(Argmax { phi_index: r.phi_index, sample_index: r.sample_index }),
                pass: threshold.accepts(&r.magnitude),
            },
            None => Summary { count: 0, max_abs_residual: String::new(), argmax: None, pass: true },
        };
        Section {
            name: name.into(),
            identity: identity.into(),
            gated,
            tolerance: threshold.render(),
            summary,
            records,
        }
    }

    pub fn max_magnitude(&self) -> Option<&Magnitude> {
        let a = self.summary.argmax?;
        self.records
            .iter()
            .find(|r| r.phi_index == a.phi_index && r.sample_index == a.sample_index)
            .map(|r| &r.magnitude)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    pub phi_count: usize,
    pub sample_count: usize,
    pub seed: u64,
    pub tolerance: Option<String>,
    pub mode: crate::config::Mode,
    pub family: crate::config::Family,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualReport {
    pub schema: String,
    pub command: String,
    pub config: ConfigEcho,
    /// True when every gated section passes.
    pub pass: bool,
    pub sections: Vec<Section>,
}

impl ResidualReport {
    pub fn new(command: &str, cfg: &SweepConfig, sections: Vec<Section>) -> Self {
        let pass = sections.iter().filter(|s| s.gated).all(|s| s.summary.pass);
        ResidualReport {
            schema: SCHEMA_ID.into(),
            command: command.into(),
            config: ConfigEcho {
                phi_count: cfg.phi_count,
                sample_count: cfg.sample_count,
                seed: cfg.seed,
                tolerance: cfg.tolerance.map(|t| format!("{t:e}")),
                mode: cfg.mode,
                family: cfg.family,
            },
            pass,
            sections,
        }
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&CSV_HEADER.join(","));
        out.push('\n');
        for section in &self.sections {
            for r in &section.records {
                let mut row: Vec<String> = Vec::with_capacity(CSV_HEADER.len());
                row.push(r.phi.clone().unwrap_or_default());
                row.push(section.name.clone());
                row.push(r.phi_index.to_string());
                row.push(r.sample_index.to_string());
                for col in CSV_INPUTS {
                    row.push(
                        r.inputs.iter().find(|n| n.name == col).map(|n| n.value.clone()).unwrap_or_default(),
                    );
                }
                for k in 0..CSV_OUTPUT_SLOTS {
                    row.push(r.outputs.get(k).map(|o| o.re.clone()).unwrap_or_default());
                }
                for k in 0..CSV_OUTPUT_SLOTS {
                    row.push(r.outputs.get(k).map(|o| o.im.clone()).unwrap_or_default());
                }
                row.push(r.residual_re.clone());
                row.push(r.residual_im.clone());
                row.push(r.abs_residual.clone());
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        out
    }

    /// One line per section, for terminals.
    pub fn summary_lines(&self) -> String {
        let mut s = String::new();
        for sec in &self.sections {
            let verdict = match (sec.gated, sec.summary.pass) {
                (true, true) => "PASS",
                (true, false) => "FAIL",
                (false, _) => "INFO",
            };
            let _ = writeln!(
                s,
                "{verdict} {:<28} n={:<6} max={} tol={}",
                sec.name, sec.summary.count, sec.summary.max_abs_residual, sec.tolerance
            );
        }
        let _ = writeln!(s, "{}", if self.pass { "overall: PASS" } else { "overall: FAIL" });
        s
    }
}

/// Named input columns; a record fills the ones it has.
pub const CSV_INPUTS: [&str; 13] = ["u", "v", "x", "y", "z", "t", "vx", "vy", "vz", "nx", "ny", "nz", "r"];
pub const CSV_OUTPUT_SLOTS: usize = 4;

pub static CSV_HEADER: std::sync::LazyLock<Vec<String>> = std::sync::LazyLock::new(|| {
    let mut h: Vec<String> = ["phi", "section", "phi_index", "sample_index"].map(String::from).to_vec();
    h.extend(CSV_INPUTS.iter().map(|s| s.to_string()));
    h.extend((0..CSV_OUTPUT_SLOTS).map(|k| format!("out_re_{k}")));
    h.extend((0..CSV_OUTPUT_SLOTS).map(|k| format!("out_im_{k}")));
    h.extend(["residual_re", "residual_im", "abs_residual"].map(String::from));
    h
});
