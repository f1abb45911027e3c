//! The invariant checks behind `verify` and `sweep`, in both back ends.
//!
//! Grid checks run over every (φ, sample) pair; the others use
//! `phi_count * sample_count` samples at a fixed slot. Float checks compare
//! against a tolerance, exact checks require the residual to vanish.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use relkin_core::oracle::{self, HalfAngle, QVec3};
use relkin_core::{
    boost_event, boost_event_3d, compose, generalized_boost, generalized_boost_3d, interval,
    invariance_residual_1d, invariance_residual_3d, reciprocal_coordinate, reciprocal_position_3d,
    reciprocal_velocity_3d, rotate_coordinate, rotate_position_3d, rotate_velocity,
    rotate_velocity_3d, slowness, Axis64, Beta64, Complex64, Event1D64, Rotation64, Sign, Vec3f64,
};

use crate::config::{Family, Mode, SweepConfig};
use crate::error::Result;
use crate::report::{Num, Record, ResidualReport, Section, Slot, Threshold};
use crate::sampling::{self, Config3, ExactConfig3};

/// Default tolerance for real 1D identities and the φ = 0 / φ = π limits.
pub const TOL_REAL: f64 = 1e-12;
/// Default tolerance for identities evaluated through complex rotations.
pub const TOL_COMPLEX: f64 = 1e-10;

pub mod names {
    pub const RECIPROCAL_SYMMETRY: &str = "reciprocal-symmetry";
    pub const INTERVAL: &str = "interval-invariance";
    pub const VELOCITY_IDENTITY: &str = "velocity-identity-rotation";
    pub const VELOCITY_POLE: &str = "velocity-pole";
    pub const COORDINATE_POLE: &str = "coordinate-pole";
    pub const INVARIANCE_1D: &str = "invariance-1d";
    pub const COLLAPSE_1D: &str = "collapse-1d";
    pub const DOT_VELOCITY: &str = "dot-identity-velocity";
    pub const DOT_POSITION: &str = "dot-identity-position";
    pub const POLE_3D_VELOCITY: &str = "pole-3d-velocity";
    pub const POLE_3D_POSITION: &str = "pole-3d-position";
    pub const REDUCTION_3D: &str = "reduction-3d-phi0";
    pub const INVARIANCE_3D_COLLINEAR: &str = "invariance-3d-collinear";
    pub const INVARIANCE_3D_GENERAL: &str = "invariance-3d-general";
    pub const COLLAPSE_3D_GENERAL: &str = "collapse-3d-general";
}

use names::*;

fn threshold(cfg: &SweepConfig, default: f64) -> Threshold {
    match cfg.mode {
        Mode::Float => Threshold::Below(cfg.tolerance.unwrap_or(default)),
        Mode::Exact => Threshold::ExactZero,
    }
}

fn c(re: f64) -> Complex64 {
    Complex::new(re, 0.0)
}

fn cq(re: BigRational) -> Complex<BigRational> {
    Complex::new(re, BigRational::zero())
}

/// The difference with the largest modulus.
fn worst(diffs: impl IntoIterator<Item = Complex64>) -> Complex64 {
    diffs.into_iter().fold(Complex::new(0.0, 0.0), |w, d| if d.norm() > w.norm() || d.is_nan() { d } else { w })
}

fn worst_exact(diffs: impl IntoIterator<Item = Complex<BigRational>>) -> Complex<BigRational> {
    diffs.into_iter().find(|d| !d.is_zero()).unwrap_or_else(Complex::zero)
}

fn draws<T>(cfg: &SweepConfig, stream: u64, count: usize, mut f: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> T) -> Vec<T> {
    let mut rng = sampling::rng_for(cfg.seed, stream);
    (0..count).map(|_| f(&mut rng)).collect()
}

fn fixed_count(cfg: &SweepConfig) -> usize {
    cfg.sample_count * sampling::turn_fractions(cfg.phi_count).len()
}

/// Evaluate `f` on every (grid point, sample) pair in parallel, in grid order.
fn over_grid<G: Sync, S: Sync>(
    grid: &[G],
    samples: &[S],
    f: impl Fn(&G, usize, &S, usize) -> Result<Record> + Sync,
) -> Result<Vec<Record>> {
    let per = samples.len();
    (0..grid.len() * per)
        .into_par_iter()
        .map(|idx| f(&grid[idx / per], idx / per, &samples[idx % per], idx % per))
        .collect()
}

fn over_samples<S: Sync>(samples: &[S], f: impl Fn(usize, &S) -> Result<Record> + Sync) -> Result<Vec<Record>> {
    samples.par_iter().enumerate().map(|(i, s)| f(i, s)).collect()
}

// ----- float -----

fn vec3(v: &[f64; 3]) -> Vec3f64 {
    Vec3f64::new(v[0], v[1], v[2]).expect("finite draw")
}

fn inputs3(c3: &Config3) -> [(&'static str, f64); 10] {
    [
        ("x", c3.x[0]),
        ("y", c3.x[1]),
        ("z", c3.x[2]),
        ("t", c3.t),
        ("vx", c3.v[0]),
        ("vy", c3.v[1]),
        ("vz", c3.v[2]),
        ("nx", c3.n[0]),
        ("ny", c3.n[1]),
        ("nz", c3.n[2]),
    ]
}

pub fn float_reciprocal_symmetry(cfg: &SweepConfig) -> Result<Section> {
    let pairs = draws(cfg, 1, fixed_count(cfg), |r| (sampling::nonzero_beta(r), sampling::nonzero_beta(r)));
    let records = over_samples(&pairs, |i, &(u, v)| {
        let (bu, bv) = (Beta64::new(u)?, Beta64::new(v)?);
        let direct = *compose(&bu, &bv, Sign::Plus)?.value();
        let mirrored = *compose(&slowness(&bu)?, &slowness(&bv)?, Sign::Plus)?.value();
        Ok(Record::float(
            Slot::fixed(i),
            &[("u", u), ("v", v)],
            &[("direct", c(direct)), ("mirrored", c(mirrored))],
            c(direct - mirrored),
        ))
    })?;
    Ok(Section::new(RECIPROCAL_SYMMETRY, "u (+) v = (1/u) (+) (1/v)", true, threshold(cfg, TOL_REAL), records))
}

pub fn float_events(cfg: &SweepConfig, stream: u64, count: usize) -> Vec<(f64, f64, f64)> {
    draws(cfg, stream, count, |r| {
        let (x, t) = sampling::timelike_event(r);
        (x, t, sampling::nonzero_beta(r))
    })
}

pub fn float_interval(cfg: &SweepConfig) -> Result<Section> {
    let samples = float_events(cfg, 2, fixed_count(cfg));
    let records = over_samples(&samples, |i, &(x, t, v)| {
        let e = Event1D64::new(x, t)?;
        let out = boost_event(&e, &Beta64::new(v)?)?;
        Ok(Record::float(
            Slot::fixed(i),
            &[("x", x), ("t", t), ("v", v)],
            &[("x_out", c(out.x)), ("t_out", c(out.t))],
            c(interval(&out).0 - interval(&e).0),
        ))
    })?;
    Ok(Section::new(INTERVAL, "t'^2 - x'^2 = t^2 - x^2", true, threshold(cfg, TOL_REAL), records))
}

pub fn float_rotation_limits(cfg: &SweepConfig) -> Result<Vec<Section>> {
    let samples = float_events(cfg, 3, fixed_count(cfg));
    let identity = over_samples(&samples, |i, &(_, _, v)| {
        let z = rotate_velocity(&Beta64::new(v)?, &Rotation64::identity())?;
        Ok(Record::float(Slot::fixed(i), &[("v", v)], &[("v_rot", z)], z - c(v)))
    })?;
    let vpole = over_samples(&samples, |i, &(_, _, v)| {
        let b = Beta64::new(v)?;
        let z = rotate_velocity(&b, &Rotation64::half_turn())?;
        let s = *slowness(&b)?.value();
        Ok(Record::float(Slot::fixed(i), &[("v", v)], &[("v_rot", z), ("slowness", c(s))], (z - c(s)) / s.abs()))
    })?;
    let xpole = over_samples(&samples, |i, &(x, t, _)| {
        let e = Event1D64::new(x, t)?;
        let z = rotate_coordinate(&e, &Rotation64::half_turn())?;
        let s = reciprocal_coordinate(&e)?;
        Ok(Record::float(
            Slot::fixed(i),
            &[("x", x), ("t", t)],
            &[("x_rot", z), ("reciprocal", c(s))],
            (z - c(s)) / s.abs(),
        ))
    })?;
    Ok(vec![
        Section::new(VELOCITY_IDENTITY, "rotation by 0 is the identity", true, threshold(cfg, TOL_REAL), identity),
        Section::new(VELOCITY_POLE, "rotation by pi gives 1/v (relative)", true, threshold(cfg, TOL_REAL), vpole),
        Section::new(COORDINATE_POLE, "rotation by pi gives t^2/x (relative)", true, threshold(cfg, TOL_REAL), xpole),
    ])
}

pub fn float_invariance_1d(cfg: &SweepConfig, with_collapse: bool) -> Result<Vec<Section>> {
    let grid = sampling::float_grid(cfg.phi_count);
    let samples = float_events(cfg, 4, cfg.sample_count);
    let slot = |g: &sampling::FloatGridPoint, s| Slot { phi_index: g.index, sample_index: s, phi: Some(g.phi) };
    let inv = over_grid(&grid, &samples, |g, _, &(x, t, v), s| {
        let (e, b) = (Event1D64::new(x, t)?, Beta64::new(v)?);
        let out = generalized_boost(&e, &b, &g.rotation)?;
        let res = invariance_residual_1d(&e, &b, &g.rotation)?;
        Ok(Record::float(
            slot(g, s),
            &[("x", x), ("t", t), ("v", v)],
            &[("x_out", out.x_out), ("t_out", out.t_out)],
            res,
        ))
    })?;
    let mut sections = vec![Section::new(
        INVARIANCE_1D,
        "t_out^2 - x_out^2 = t^2 - x^2 for every phi",
        true,
        threshold(cfg, TOL_COMPLEX),
        inv,
    )];
    if with_collapse {
        let col = over_grid(&grid, &samples, |g, _, &(x, t, v), s| {
            let (e, b) = (Event1D64::new(x, t)?, Beta64::new(v)?);
            let out = generalized_boost(&e, &b, &g.rotation)?;
            let std = boost_event(&e, &b)?;
            Ok(Record::float(
                slot(g, s),
                &[("x", x), ("t", t), ("v", v)],
                &[("x_out", out.x_out), ("t_out", out.t_out), ("x_std", c(std.x)), ("t_std", c(std.t))],
                worst([out.x_out - c(std.x), out.t_out - c(std.t)]),
            ))
        })?;
        sections.push(Section::new(
            COLLAPSE_1D,
            "generalized boost equals the standard boost for every phi",
            true,
            threshold(cfg, TOL_COMPLEX),
            col,
        ));
    }
    Ok(sections)
}

pub fn float_dot_and_pole(cfg: &SweepConfig) -> Result<Vec<Section>> {
    let samples = draws(cfg, 5, fixed_count(cfg), |r| sampling::config3(r, Family::General));
    let axis = |c3: &Config3, rot| Axis64::new(vec3(&c3.n), rot);
    let dv = over_samples(&samples, |i, c3| {
        let v = vec3(&c3.v);
        let star = reciprocal_velocity_3d(&v, &axis(c3, Rotation64::identity())?)?;
        let out = star.components().map(c);
        Ok(Record::float(Slot::fixed(i), &inputs3(c3), &[("sx", out[0]), ("sy", out[1]), ("sz", out[2])], c(star.dot(&v) - 1.0)))
    })?;
    let dx = over_samples(&samples, |i, c3| {
        let x = vec3(&c3.x);
        let star = reciprocal_position_3d(&x, &c3.t, &axis(c3, Rotation64::identity())?)?;
        let out = star.components().map(c);
        Ok(Record::float(
            Slot::fixed(i),
            &inputs3(c3),
            &[("sx", out[0]), ("sy", out[1]), ("sz", out[2])],
            c(star.dot(&x) - c3.t * c3.t),
        ))
    })?;
    let pv = over_samples(&samples, |i, c3| {
        let v = vec3(&c3.v);
        let a = axis(c3, Rotation64::half_turn())?;
        let rot = rotate_velocity_3d(&v, &a)?;
        let star = reciprocal_velocity_3d(&v, &a)?;
        let scale = star.norm_sqr().sqrt().max(1.0);
        let diffs = rot.components().into_iter().zip(star.components()).map(|(z, s)| (z - c(s)) / scale);
        let out = rot.components();
        Ok(Record::float(Slot::fixed(i), &inputs3(c3), &[("x", out[0]), ("y", out[1]), ("z", out[2])], worst(diffs)))
    })?;
    let px = over_samples(&samples, |i, c3| {
        let x = vec3(&c3.x);
        let a = axis(c3, Rotation64::half_turn())?;
        let rot = rotate_position_3d(&x, &c3.t, &a)?;
        let star = reciprocal_position_3d(&x, &c3.t, &a)?;
        let scale = star.norm_sqr().sqrt().max(1.0);
        let diffs = rot.components().into_iter().zip(star.components()).map(|(z, s)| (z - c(s)) / scale);
        let out = rot.components();
        Ok(Record::float(Slot::fixed(i), &inputs3(c3), &[("x", out[0]), ("y", out[1]), ("z", out[2])], worst(diffs)))
    })?;
    let red = over_samples(&samples, |i, c3| {
        let (x, v) = (vec3(&c3.x), vec3(&c3.v));
        let out = generalized_boost_3d(&x, &c3.t, &v, &axis(c3, Rotation64::identity())?)?;
        let (xs, ts) = boost_event_3d(&x, &c3.t, &v)?;
        let xo = out.x_out.components();
        let diffs = xo.iter().zip(xs.components()).map(|(z, s)| z - c(s)).chain([out.t_out - c(ts)]);
        Ok(Record::float(
            Slot::fixed(i),
            &inputs3(c3),
            &[("x", xo[0]), ("y", xo[1]), ("z", xo[2]), ("t", out.t_out)],
            worst(diffs),
        ))
    })?;
    Ok(vec![
        Section::new(DOT_VELOCITY, "V* . V = 1", true, threshold(cfg, TOL_REAL), dv),
        Section::new(DOT_POSITION, "X* . X = t^2", true, threshold(cfg, TOL_REAL), dx),
        Section::new(POLE_3D_VELOCITY, "rotated V at pi equals V* (relative)", true, threshold(cfg, TOL_REAL), pv),
        Section::new(POLE_3D_POSITION, "rotated X at pi equals X* (relative)", true, threshold(cfg, TOL_REAL), px),
        Section::new(REDUCTION_3D, "phi = 0 gives the standard vector boost", true, threshold(cfg, TOL_REAL), red),
    ])
}

/// 3D invariance over the grid. Gated only for the collinear family; the
/// general family is reported as measured.
pub fn float_invariance_3d(cfg: &SweepConfig, family: Family, with_collapse: bool) -> Result<Vec<Section>> {
    let grid = sampling::float_grid(cfg.phi_count);
    let stream = match family {
        Family::General => 6,
        Family::Collinear => 7,
    };
    let samples = draws(cfg, stream, cfg.sample_count, |r| sampling::config3(r, family));
    let slot = |g: &sampling::FloatGridPoint, s| Slot { phi_index: g.index, sample_index: s, phi: Some(g.phi) };
    let inv = over_grid(&grid, &samples, |g, _, c3, s| {
        let (x, v) = (vec3(&c3.x), vec3(&c3.v));
        let a = Axis64::new(vec3(&c3.n), g.rotation.clone())?;
        let out = generalized_boost_3d(&x, &c3.t, &v, &a)?;
        let res = invariance_residual_3d(&x, &c3.t, &v, &a)?;
        let xo = out.x_out.components();
        Ok(Record::float(slot(g, s), &inputs3(c3), &[("x", xo[0]), ("y", xo[1]), ("z", xo[2]), ("t", out.t_out)], res))
    })?;
    let (name, gated) = match family {
        Family::General => (INVARIANCE_3D_GENERAL, false),
        Family::Collinear => (INVARIANCE_3D_COLLINEAR, true),
    };
    let mut sections = vec![Section::new(
        name,
        "t_out^2 - X_out.X_out = t^2 - X.X for every phi",
        gated,
        threshold(cfg, TOL_COMPLEX),
        inv,
    )];
    if with_collapse {
        let col = over_grid(&grid, &samples, |g, _, c3, s| {
            let (x, v) = (vec3(&c3.x), vec3(&c3.v));
            let a = Axis64::new(vec3(&c3.n), g.rotation.clone())?;
            let out = generalized_boost_3d(&x, &c3.t, &v, &a)?;
            let (xs, ts) = boost_event_3d(&x, &c3.t, &v)?;
            let xo = out.x_out.components();
            let diffs = xo.iter().zip(xs.components()).map(|(z, s)| z - c(s)).chain([out.t_out - c(ts)]);
            Ok(Record::float(
                slot(g, s),
                &inputs3(c3),
                &[("x", xo[0]), ("y", xo[1]), ("z", xo[2]), ("t", out.t_out)],
                worst(diffs),
            ))
        })?;
        sections.push(Section::new(
            COLLAPSE_3D_GENERAL,
            "3D generalized boost equals the standard vector boost (not expected to hold)",
            false,
            threshold(cfg, TOL_COMPLEX),
            col,
        ));
    }
    Ok(sections)
}

// ----- exact -----

fn half_angle_input(h: &HalfAngle) -> Num {
    match h {
        HalfAngle::Finite(r) => Num::Exact(r.clone()),
        HalfAngle::Infinite => Num::Infinite,
    }
}

fn inputs3_exact(c3: &ExactConfig3) -> Vec<(&'static str, Num)> {
    let names = ["x", "y", "z", "t", "vx", "vy", "vz", "nx", "ny", "nz"];
    let vals = [&c3.x[0], &c3.x[1], &c3.x[2], &c3.t, &c3.v[0], &c3.v[1], &c3.v[2], &c3.n[0], &c3.n[1], &c3.n[2]];
    names.into_iter().zip(vals).map(|(n, v)| (n, Num::from(v))).collect()
}

pub fn exact_pairs(cfg: &SweepConfig, stream: u64, count: usize) -> Vec<(BigRational, BigRational, BigRational)> {
    draws(cfg, stream, count, |r| {
        let (x, t) = sampling::exact_event(r);
        (x, t, sampling::pythagorean(r))
    })
}

pub fn exact_scalar_sections(cfg: &SweepConfig) -> Result<Vec<Section>> {
    let n = fixed_count(cfg);
    let pairs = draws(cfg, 1, n, |r| (sampling::pythagorean(r), sampling::pythagorean(r)));
    let sym = over_samples(&pairs, |i, (u, v)| {
        let direct = oracle::compose(u, v, Sign::Plus)?;
        let mirrored = oracle::compose(&oracle::slowness(u)?, &oracle::slowness(v)?, Sign::Plus)?;
        Ok(Record::exact(
            Slot::fixed(i),
            &[("u", u.into()), ("v", v.into())],
            &[("direct", cq(direct.clone())), ("mirrored", cq(mirrored.clone()))],
            cq(direct - mirrored),
        ))
    })?;
    let events = exact_pairs(cfg, 2, n);
    let int = over_samples(&events, |i, (x, t, v)| {
        let (xo, to) = oracle::boost_event(x, t, v)?;
        let res = oracle::interval(&xo, &to) - oracle::interval(x, t);
        Ok(Record::exact(
            Slot::fixed(i),
            &[("x", x.into()), ("t", t.into()), ("v", v.into())],
            &[("x_out", cq(xo)), ("t_out", cq(to))],
            cq(res),
        ))
    })?;
    let identity = over_samples(&events, |i, (_, _, v)| {
        let z = oracle::rotate_velocity(v, &HalfAngle::zero())?;
        Ok(Record::exact(Slot::fixed(i), &[("v", v.into())], &[("v_rot", z.clone())], z - cq(v.clone())))
    })?;
    let vpole = over_samples(&events, |i, (_, _, v)| {
        let z = oracle::rotate_velocity(v, &HalfAngle::Infinite)?;
        let s = oracle::slowness(v)?;
        Ok(Record::exact(Slot::fixed(i), &[("v", v.into())], &[("v_rot", z.clone()), ("slowness", cq(s.clone()))], z - cq(s)))
    })?;
    let xpole = over_samples(&events, |i, (x, t, _)| {
        let z = oracle::rotate_coordinate(x, t, &HalfAngle::Infinite)?;
        let s = oracle::reciprocal_coordinate(x, t)?;
        Ok(Record::exact(
            Slot::fixed(i),
            &[("x", x.into()), ("t", t.into())],
            &[("x_rot", z.clone()), ("reciprocal", cq(s.clone()))],
            z - cq(s),
        ))
    })?;
    let th = Threshold::ExactZero;
    Ok(vec![
        Section::new(RECIPROCAL_SYMMETRY, "u (+) v = (1/u) (+) (1/v)", true, th.clone(), sym),
        Section::new(INTERVAL, "t'^2 - x'^2 = t^2 - x^2", true, th.clone(), int),
        Section::new(VELOCITY_IDENTITY, "rotation by 0 is the identity", true, th.clone(), identity),
        Section::new(VELOCITY_POLE, "rotation by pi gives 1/v", true, th.clone(), vpole),
        Section::new(COORDINATE_POLE, "rotation by pi gives t^2/x", true, th, xpole),
    ])
}

pub fn exact_invariance_1d(cfg: &SweepConfig, with_collapse: bool) -> Result<Vec<Section>> {
    let grid = sampling::exact_grid(cfg.phi_count);
    let samples = exact_pairs(cfg, 4, cfg.sample_count);
    let slot = |g: &sampling::ExactGridPoint, s| Slot { phi_index: g.index, sample_index: s, phi: Some(g.phi) };
    let inputs = |x: &BigRational, t: &BigRational, v: &BigRational, h: &HalfAngle| {
        [("x", Num::from(x)), ("t", t.into()), ("v", v.into()), ("r", half_angle_input(h))]
    };
    let inv = over_grid(&grid, &samples, |g, _, (x, t, v), s| {
        let (xo, to) = oracle::generalized_boost(x, t, v, &g.half_angle)?;
        let res = oracle::invariance_residual_1d(x, t, v, &g.half_angle)?;
        Ok(Record::exact(slot(g, s), &inputs(x, t, v, &g.half_angle), &[("x_out", xo), ("t_out", to)], res))
    })?;
    let mut sections = vec![Section::new(
        INVARIANCE_1D,
        "t_out^2 - x_out^2 = t^2 - x^2 for every phi",
        true,
        Threshold::ExactZero,
        inv,
    )];
    if with_collapse {
        let col = over_grid(&grid, &samples, |g, _, (x, t, v), s| {
            let (xo, to) = oracle::generalized_boost(x, t, v, &g.half_angle)?;
            let (xs, ts) = oracle::boost_event(x, t, v)?;
            let res = worst_exact([xo.clone() - cq(xs.clone()), to.clone() - cq(ts.clone())]);
            Ok(Record::exact(
                slot(g, s),
                &inputs(x, t, v, &g.half_angle),
                &[("x_out", xo), ("t_out", to), ("x_std", cq(xs)), ("t_std", cq(ts))],
                res,
            ))
        })?;
        sections.push(Section::new(
            COLLAPSE_1D,
            "generalized boost equals the standard boost for every phi",
            true,
            Threshold::ExactZero,
            col,
        ));
    }
    Ok(sections)
}

fn qdot(a: &QVec3, b: &QVec3) -> BigRational {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

pub fn exact_dot_and_pole(cfg: &SweepConfig) -> Result<Vec<Section>> {
    let samples = draws(cfg, 5, fixed_count(cfg), |r| sampling::exact_config3(r, Family::General));
    let dv = over_samples(&samples, |i, c3| {
        let star = oracle::reciprocal_velocity_3d(&c3.v, &c3.n)?;
        let res = qdot(&star, &c3.v) - BigRational::one();
        let out = star.map(cq);
        Ok(Record::exact(Slot::fixed(i), &inputs3_exact(c3), &[("sx", out[0].clone()), ("sy", out[1].clone()), ("sz", out[2].clone())], cq(res)))
    })?;
    let dx = over_samples(&samples, |i, c3| {
        let star = oracle::reciprocal_position_3d(&c3.x, &c3.t, &c3.n)?;
        let res = qdot(&star, &c3.x) - &c3.t * &c3.t;
        let out = star.map(cq);
        Ok(Record::exact(Slot::fixed(i), &inputs3_exact(c3), &[("sx", out[0].clone()), ("sy", out[1].clone()), ("sz", out[2].clone())], cq(res)))
    })?;
    let pv = over_samples(&samples, |i, c3| {
        let rot = oracle::rotate_velocity_3d(&c3.v, &c3.n, &HalfAngle::Infinite)?;
        let star = oracle::reciprocal_velocity_3d(&c3.v, &c3.n)?;
        let res = worst_exact(rot.iter().zip(star).map(|(z, s)| z - cq(s)));
        Ok(Record::exact(Slot::fixed(i), &inputs3_exact(c3), &[("x", rot[0].clone()), ("y", rot[1].clone()), ("z", rot[2].clone())], res))
    })?;
    let px = over_samples(&samples, |i, c3| {
        let rot = oracle::rotate_position_3d(&c3.x, &c3.t, &c3.n, &HalfAngle::Infinite)?;
        let star = oracle::reciprocal_position_3d(&c3.x, &c3.t, &c3.n)?;
        let res = worst_exact(rot.iter().zip(star).map(|(z, s)| z - cq(s)));
        Ok(Record::exact(Slot::fixed(i), &inputs3_exact(c3), &[("x", rot[0].clone()), ("y", rot[1].clone()), ("z", rot[2].clone())], res))
    })?;
    let red = over_samples(&samples, |i, c3| {
        let (xo, to) = oracle::generalized_boost_3d(&c3.x, &c3.t, &c3.v, &c3.n, &HalfAngle::zero())?;
        let (xs, ts) = oracle::boost_event_3d(&c3.x, &c3.t, &c3.v)?;
        let res = worst_exact(xo.iter().zip(xs).map(|(z, s)| z - cq(s)).chain([to.clone() - cq(ts)]));
        Ok(Record::exact(
            Slot::fixed(i),
            &inputs3_exact(c3),
            &[("x", xo[0].clone()), ("y", xo[1].clone()), ("z", xo[2].clone()), ("t", to)],
            res,
        ))
    })?;
    let th = Threshold::ExactZero;
    Ok(vec![
        Section::new(DOT_VELOCITY, "V* . V = 1", true, th.clone(), dv),
        Section::new(DOT_POSITION, "X* . X = t^2", true, th.clone(), dx),
        Section::new(POLE_3D_VELOCITY, "rotated V at pi equals V*", true, th.clone(), pv),
        Section::new(POLE_3D_POSITION, "rotated X at pi equals X*", true, th.clone(), px),
        Section::new(REDUCTION_3D, "phi = 0 gives the standard vector boost", true, th, red),
    ])
}

pub fn exact_invariance_3d(cfg: &SweepConfig, family: Family, with_collapse: bool) -> Result<Vec<Section>> {
    let grid = sampling::exact_grid(cfg.phi_count);
    let stream = match family {
        Family::General => 6,
        Family::Collinear => 7,
    };
    let samples = draws(cfg, stream, cfg.sample_count, |r| sampling::exact_config3(r, family));
    let slot = |g: &sampling::ExactGridPoint, s| Slot { phi_index: g.index, sample_index: s, phi: Some(g.phi) };
    let inputs = |c3: &ExactConfig3, h: &HalfAngle| {
        let mut v = inputs3_exact(c3);
        v.push(("r", half_angle_input(h)));
        v
    };
    let inv = over_grid(&grid, &samples, |g, _, c3, s| {
        let (xo, to) = oracle::generalized_boost_3d(&c3.x, &c3.t, &c3.v, &c3.n, &g.half_angle)?;
        let res = oracle::invariance_residual_3d(&c3.x, &c3.t, &c3.v, &c3.n, &g.half_angle)?;
        Ok(Record::exact(
            slot(g, s),
            &inputs(c3, &g.half_angle),
            &[("x", xo[0].clone()), ("y", xo[1].clone()), ("z", xo[2].clone()), ("t", to)],
            res,
        ))
    })?;
    let (name, gated) = match family {
        Family::General => (INVARIANCE_3D_GENERAL, false),
        Family::Collinear => (INVARIANCE_3D_COLLINEAR, true),
    };
    let mut sections = vec![Section::new(
        name,
        "t_out^2 - X_out.X_out = t^2 - X.X for every phi",
        gated,
        Threshold::ExactZero,
        inv,
    )];
    if with_collapse {
        let col = over_grid(&grid, &samples, |g, _, c3, s| {
            let (xo, to) = oracle::generalized_boost_3d(&c3.x, &c3.t, &c3.v, &c3.n, &g.half_angle)?;
            let (xs, ts) = oracle::boost_event_3d(&c3.x, &c3.t, &c3.v)?;
            let res = worst_exact(xo.iter().zip(xs).map(|(z, s)| z - cq(s)).chain([to.clone() - cq(ts)]));
            Ok(Record::exact(
                slot(g, s),
                &inputs(c3, &g.half_angle),
                &[("x", xo[0].clone()), ("y", xo[1].clone()), ("z", xo[2].clone()), ("t", to)],
                res,
            ))
        })?;
        sections.push(Section::new(
            COLLAPSE_3D_GENERAL,
            "3D generalized boost equals the standard vector boost (not expected to hold)",
            false,
            Threshold::ExactZero,
            col,
        ));
    }
    Ok(sections)
}

// ----- entry points -----

/// The full invariant suite.
pub fn run_verify(cfg: &SweepConfig) -> Result<ResidualReport> {
    cfg.validate()?;
    let mut sections = Vec::new();
    match cfg.mode {
        Mode::Float => {
            sections.push(float_reciprocal_symmetry(cfg)?);
            sections.push(float_interval(cfg)?);
            sections.extend(float_rotation_limits(cfg)?);
            sections.extend(float_invariance_1d(cfg, true)?);
            sections.extend(float_dot_and_pole(cfg)?);
            sections.extend(float_invariance_3d(cfg, Family::Collinear, false)?);
            sections.extend(float_invariance_3d(cfg, Family::General, true)?);
        }
        Mode::Exact => {
            sections.extend(exact_scalar_sections(cfg)?);
            sections.extend(exact_invariance_1d(cfg, true)?);
            sections.extend(exact_dot_and_pole(cfg)?);
            sections.extend(exact_invariance_3d(cfg, Family::Collinear, false)?);
            sections.extend(exact_invariance_3d(cfg, Family::General, true)?);
        }
    }
    Ok(ResidualReport::new("verify", cfg, sections))
}

/// 1D and 3D invariance residuals over the φ grid.
pub fn run_sweep(cfg: &SweepConfig) -> Result<ResidualReport> {
    cfg.validate()?;
    let sections = match cfg.mode {
        Mode::Float => {
            let mut s = float_invariance_1d(cfg, false)?;
            s.extend(float_invariance_3d(cfg, cfg.family, false)?);
            s
        }
        Mode::Exact => {
            let mut s = exact_invariance_1d(cfg, false)?;
            s.extend(exact_invariance_3d(cfg, cfg.family, false)?);
            s
        }
    };
    Ok(ResidualReport::new("sweep", cfg, sections))
}
