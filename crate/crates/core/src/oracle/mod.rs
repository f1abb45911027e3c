//! Exact reference evaluation over complex rationals.
//!
//! The formulas here are written directly in the half-angle tangent
//! `r = tan(φ/2)`, e.g. `(v + i r)/(1 + i v r)`, with [`HalfAngle::Infinite`]
//! standing for φ = π, where each map is replaced by its limit. This is a
//! different route from the homogeneous `(sin, cos)` evaluation used by the
//! generic modules, so agreement between the two is meaningful. No result is
//! ever rounded: a square root that is not rational is an error.

mod generators;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{KinematicsError, Result};
use crate::scalar_kinematics::Sign;

pub use generators::{
    family_vector_with_norm, gen_pythagorean_beta, gen_rational_vec3, pythagorean_betas,
    PythagoreanBeta, RationalVec3, FAMILIES,
};

pub type ComplexRational = Complex<BigRational>;
pub type QVec3 = [BigRational; 3];
pub type CQVec3 = [ComplexRational; 3];

/// `r = tan(φ/2)`, projectively extended with the pole at φ = π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HalfAngle {
    Finite(BigRational),
    Infinite,
}

impl HalfAngle {
    pub fn zero() -> Self {
        HalfAngle::Finite(BigRational::zero())
    }

    /// φ in radians, rounded.
    pub fn phi(&self) -> f64 {
        match self {
            HalfAngle::Finite(r) => 2.0 * rat_f64(r).atan(),
            HalfAngle::Infinite => std::f64::consts::PI,
        }
    }
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` with an explicit denominator, `0/1` for zero.
pub fn fraction(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn rat_f64(v: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

fn exact_sqrt(v: &BigRational) -> Result<BigRational> {
    let irrational = || KinematicsError::IrrationalRoot(fraction(v));
    if v.is_negative() {
        return Err(irrational());
    }
    let (n, d) = (v.numer().sqrt(), v.denom().sqrt());
    if &(&n * &n) == v.numer() && &(&d * &d) == v.denom() {
        Ok(BigRational::new(n, d))
    } else {
        Err(irrational())
    }
}

fn cq(re: BigRational) -> ComplexRational {
    Complex::new(re, BigRational::zero())
}

fn i_times(v: BigRational) -> ComplexRational {
    Complex::new(BigRational::zero(), v)
}

fn cdiv(num: ComplexRational, den: ComplexRational, err: KinematicsError) -> Result<ComplexRational> {
    if den.is_zero() {
        Err(err)
    } else {
        Ok(num / den)
    }
}

fn div(num: BigRational, den: BigRational, err: KinematicsError) -> Result<BigRational> {
    if den.is_zero() {
        Err(err)
    } else {
        Ok(num / den)
    }
}

fn dot(a: &QVec3, b: &QVec3) -> BigRational {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn cdot(a: &CQVec3, b: &CQVec3) -> ComplexRational {
    a.iter().zip(b).fold(ComplexRational::zero(), |acc, (p, q)| acc + p * q)
}

fn lorentz_root(v2: &BigRational, strict: bool) -> Result<BigRational> {
    let one = BigRational::one();
    if v2 > &one || (strict && v2 == &one) {
        return Err(if strict {
            KinematicsError::SuperluminalBoost
        } else {
            KinematicsError::SuperluminalInput
        });
    }
    exact_sqrt(&(one - v2))
}

/// Unit vector along `n`; its length must be rational.
pub fn normalize_axis(n: &QVec3) -> Result<QVec3> {
    let len2 = dot(n, n);
    if len2.is_zero() {
        return Err(KinematicsError::ZeroAxis);
    }
    let len = exact_sqrt(&len2)?;
    Ok(n.clone().map(|c| c / &len))
}

// ----- one space dimension -----

pub fn slowness(v: &BigRational) -> Result<BigRational> {
    div(BigRational::one(), v.clone(), KinematicsError::ZeroVelocity)
}

pub fn compose(u: &BigRational, v: &BigRational, sign: Sign) -> Result<BigRational> {
    let v = match sign {
        Sign::Plus => v.clone(),
        Sign::Minus => -v,
    };
    div(u + &v, BigRational::one() + u * &v, KinematicsError::DegenerateDenominator)
}

pub fn boost_event(x: &BigRational, t: &BigRational, v: &BigRational) -> Result<(BigRational, BigRational)> {
    let root = lorentz_root(&(v * v), true)?;
    Ok(((x - v * t) / &root, (t - v * x) / &root))
}

pub fn interval(x: &BigRational, t: &BigRational) -> BigRational {
    t * t - x * x
}

pub fn reciprocal_symmetry_residual(u: &BigRational, v: &BigRational) -> Result<BigRational> {
    let direct = compose(u, v, Sign::Plus)?;
    let mirrored = compose(&slowness(u)?, &slowness(v)?, Sign::Plus)?;
    Ok((direct - mirrored).abs())
}

/// `(v + i r)/(1 + i v r)`; `1/v` at the pole.
pub fn rotate_velocity(v: &BigRational, r: &HalfAngle) -> Result<ComplexRational> {
    match r {
        HalfAngle::Finite(r) => cdiv(
            cq(v.clone()) + i_times(r.clone()),
            cq(BigRational::one()) + i_times(v * r),
            KinematicsError::ZeroVelocity,
        ),
        HalfAngle::Infinite => slowness(v).map(cq),
    }
}

/// `(x + i t r)/(1 + i (x/t) r)`; `t²/x` at the pole.
pub fn rotate_coordinate(x: &BigRational, t: &BigRational, r: &HalfAngle) -> Result<ComplexRational> {
    if t.is_zero() {
        return Err(KinematicsError::ZeroTime);
    }
    match r {
        HalfAngle::Finite(r) => cdiv(
            cq(x.clone()) + i_times(t * r),
            cq(BigRational::one()) + i_times(x / t * r),
            KinematicsError::ZeroCoordinate,
        ),
        HalfAngle::Infinite => reciprocal_coordinate(x, t).map(cq),
    }
}

pub fn reciprocal_coordinate(x: &BigRational, t: &BigRational) -> Result<BigRational> {
    div(t * t, x.clone(), KinematicsError::ZeroCoordinate)
}

/// `(1 + i(x/t)r)(1 + i v r)/((1 + r²) sqrt(1 - v²))`; `-(x/t) v / sqrt(1 - v²)` at the pole.
pub fn g_factor(x: &BigRational, t: &BigRational, v: &BigRational, r: &HalfAngle) -> Result<ComplexRational> {
    let root = lorentz_root(&(v * v), true)?;
    let ratio = div(x.clone(), t.clone(), KinematicsError::ZeroTime)?;
    match r {
        HalfAngle::Finite(r) => {
            let one = cq(BigRational::one());
            let num = (one.clone() + i_times(&ratio * r)) * (one + i_times(v * r));
            Ok(num / cq((BigRational::one() + r * r) * root))
        }
        HalfAngle::Infinite => Ok(cq(-(ratio * v) / root)),
    }
}

pub fn generalized_boost(
    x: &BigRational,
    t: &BigRational,
    v: &BigRational,
    r: &HalfAngle,
) -> Result<(ComplexRational, ComplexRational)> {
    let g = g_factor(x, t, v, r)?;
    let xr = rotate_coordinate(x, t, r)?;
    let vr = rotate_velocity(v, r)?;
    let tc = cq(t.clone());
    let x_out = &g * (&xr - &vr * &tc);
    let t_out = g * (tc - xr * vr);
    Ok((x_out, t_out))
}

pub fn invariance_residual_1d(
    x: &BigRational,
    t: &BigRational,
    v: &BigRational,
    r: &HalfAngle,
) -> Result<ComplexRational> {
    let (xo, to) = generalized_boost(x, t, v, r)?;
    Ok(&to * &to - &xo * &xo - cq(interval(x, t)))
}

// ----- three space dimensions -----

/// `[(1-s)(n·W/W²) W + n s] · unit² / (n·W)` with `s = sqrt(1 - W²/unit²)`.
fn reciprocal_vector(w: &QVec3, unit: &BigRational, n: &QVec3, zero: KinematicsError) -> Result<QVec3> {
    let w2 = dot(w, w);
    if w2.is_zero() {
        return Err(zero);
    }
    let nw = dot(n, w);
    if nw.is_zero() {
        return Err(KinematicsError::PerpendicularAxis);
    }
    let s = vector_root(&w2, unit)?;
    let u2 = unit * unit;
    let along = (BigRational::one() - &s) * &nw / &w2;
    Ok(std::array::from_fn(|k| (&along * &w[k] + &n[k] * &s) * &u2 / &nw))
}

fn vector_root(w2: &BigRational, unit: &BigRational) -> Result<BigRational> {
    let ratio = w2 / (unit * unit);
    if ratio > BigRational::one() {
        return Err(if unit.is_one() {
            KinematicsError::SuperluminalInput
        } else {
            KinematicsError::SpacelikeInput
        });
    }
    exact_sqrt(&(BigRational::one() - ratio))
}

pub fn reciprocal_velocity_3d(v: &QVec3, n: &QVec3) -> Result<QVec3> {
    reciprocal_vector(v, &BigRational::one(), &normalize_axis(n)?, KinematicsError::ZeroVelocity)
}

pub fn reciprocal_position_3d(x: &QVec3, t: &BigRational, n: &QVec3) -> Result<QVec3> {
    if t.is_zero() {
        return Err(KinematicsError::ZeroTime);
    }
    reciprocal_vector(x, t, &normalize_axis(n)?, KinematicsError::ZeroCoordinate)
}

/// `[W + (1-s) i unit (r·W)/W² W + i unit r s] / (1 + i (r·W)/unit)` with `r = tan(φ/2) n`.
fn rotate_vector(
    w: &QVec3,
    unit: &BigRational,
    n: &QVec3,
    r: &HalfAngle,
    zero: KinematicsError,
) -> Result<CQVec3> {
    let n = normalize_axis(n)?;
    let r = match r {
        HalfAngle::Infinite => {
            return Ok(reciprocal_vector(w, unit, &n, zero)?.map(cq));
        }
        HalfAngle::Finite(r) => r,
    };
    let w2 = dot(w, w);
    if w2.is_zero() {
        return Err(zero);
    }
    let s = vector_root(&w2, unit)?;
    let rvec: QVec3 = n.map(|c| c * r);
    let rw = dot(&rvec, w);
    let along = (BigRational::one() - &s) * unit * &rw / &w2;
    let den = cq(BigRational::one()) + i_times(&rw / unit);
    let mut out: Vec<ComplexRational> = Vec::with_capacity(3);
    for k in 0..3 {
        let num = cq(w[k].clone()) + i_times(&along * &w[k]) + i_times(unit * &rvec[k] * &s);
        out.push(cdiv(num, den.clone(), KinematicsError::PerpendicularAxis)?);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

pub fn rotate_velocity_3d(v: &QVec3, n: &QVec3, r: &HalfAngle) -> Result<CQVec3> {
    rotate_vector(v, &BigRational::one(), n, r, KinematicsError::ZeroVelocity)
}

pub fn rotate_position_3d(x: &QVec3, t: &BigRational, n: &QVec3, r: &HalfAngle) -> Result<CQVec3> {
    if t.is_zero() {
        return Err(KinematicsError::ZeroTime);
    }
    rotate_vector(x, t, n, r, KinematicsError::ZeroCoordinate)
}

/// `(1 + i r (X·n)/t)(1 + i r (V·n)) / ((1 + r²) sqrt(1 - V²))`.
pub fn g_factor_3d(x: &QVec3, t: &BigRational, v: &QVec3, n: &QVec3, r: &HalfAngle) -> Result<ComplexRational> {
    let root = lorentz_root(&dot(v, v), true)?;
    if t.is_zero() {
        return Err(KinematicsError::ZeroTime);
    }
    let n = normalize_axis(n)?;
    let xn = dot(x, &n) / t;
    let vn = dot(v, &n);
    match r {
        HalfAngle::Finite(r) => {
            let one = cq(BigRational::one());
            let num = (one.clone() + i_times(r * &xn)) * (one + i_times(r * &vn));
            Ok(num / cq((BigRational::one() + r * r) * root))
        }
        HalfAngle::Infinite => Ok(cq(-(xn * vn) / root)),
    }
}

pub fn generalized_boost_3d(
    x: &QVec3,
    t: &BigRational,
    v: &QVec3,
    n: &QVec3,
    r: &HalfAngle,
) -> Result<(CQVec3, ComplexRational)> {
    let g = g_factor_3d(x, t, v, n, r)?;
    // The origin is admissible for the boost; its rotation is the limit W -> 0.
    let xr = if x.iter().all(Zero::is_zero) {
        rotate_origin(t, n, r)?
    } else {
        rotate_position_3d(x, t, n, r)?
    };
    let vr = rotate_velocity_3d(v, n, r)?;
    let vv = cdot(&vr, &vr);
    if vv.is_zero() {
        return Err(KinematicsError::DegenerateRotatedVelocity);
    }
    let s = lorentz_root(&dot(v, v), true)?;
    let xv = cdot(&xr, &vr);
    let tc = cq(t.clone());
    let coeff = cq(BigRational::one() - &s) * &xv / vv - &tc;
    let x_out = std::array::from_fn(|k| &g * (cq(s.clone()) * &xr[k] + &coeff * &vr[k]));
    Ok((x_out, g * (tc - xv)))
}

/// `X̃` at `X = 0`: the `(1-s)/X²` term tends to `1/(2t²)` and drops out, leaving `i t r n`.
fn rotate_origin(t: &BigRational, n: &QVec3, r: &HalfAngle) -> Result<CQVec3> {
    match r {
        HalfAngle::Infinite => Err(KinematicsError::ZeroCoordinate),
        HalfAngle::Finite(r) => Ok(normalize_axis(n)?.map(|c| i_times(t * r * c))),
    }
}

pub fn invariance_residual_3d(
    x: &QVec3,
    t: &BigRational,
    v: &QVec3,
    n: &QVec3,
    r: &HalfAngle,
) -> Result<ComplexRational> {
    let (xo, to) = generalized_boost_3d(x, t, v, n, r)?;
    Ok(&to * &to - cdot(&xo, &xo) - cq(t * t - dot(x, x)))
}

/// Standard vector boost, `X + (γ - 1)(X·V)V/V² - γ V t`.
pub fn boost_event_3d(x: &QVec3, t: &BigRational, v: &QVec3) -> Result<(QVec3, BigRational)> {
    let v2 = dot(v, v);
    let root = lorentz_root(&v2, true)?;
    let gamma = BigRational::one() / &root;
    let xv = dot(x, v);
    let along = if v2.is_zero() {
        BigRational::zero()
    } else {
        (&gamma - BigRational::one()) * &xv / &v2
    };
    let shift = &along - &gamma * t;
    let xo = std::array::from_fn(|k| &x[k] + &shift * &v[k]);
    Ok((xo, gamma * (t - xv)))
}

// ----- dispatch -----

/// One named operation with exact inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleOp {
    Slowness { v: BigRational },
    Compose { u: BigRational, v: BigRational, sign: Sign },
    Boost { x: BigRational, t: BigRational, v: BigRational },
    Interval { x: BigRational, t: BigRational },
    ReciprocalSymmetry { u: BigRational, v: BigRational },
    RotateVelocity { v: BigRational, r: HalfAngle },
    RotateCoordinate { x: BigRational, t: BigRational, r: HalfAngle },
    ReciprocalCoordinate { x: BigRational, t: BigRational },
    GFactor { x: BigRational, t: BigRational, v: BigRational, r: HalfAngle },
    GeneralizedBoost { x: BigRational, t: BigRational, v: BigRational, r: HalfAngle },
    InvarianceResidual1D { x: BigRational, t: BigRational, v: BigRational, r: HalfAngle },
    ReciprocalVelocity3D { v: QVec3, n: QVec3 },
    ReciprocalPosition3D { x: QVec3, t: BigRational, n: QVec3 },
    RotateVelocity3D { v: QVec3, n: QVec3, r: HalfAngle },
    RotatePosition3D { x: QVec3, t: BigRational, n: QVec3, r: HalfAngle },
    GFactor3D { x: QVec3, t: BigRational, v: QVec3, n: QVec3, r: HalfAngle },
    GeneralizedBoost3D { x: QVec3, t: BigRational, v: QVec3, n: QVec3, r: HalfAngle },
    InvarianceResidual3D { x: QVec3, t: BigRational, v: QVec3, n: QVec3, r: HalfAngle },
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleValue {
    Real(BigRational),
    Complex(ComplexRational),
    Event { x: BigRational, t: BigRational },
    ComplexEvent { x: ComplexRational, t: ComplexRational },
    Vector(QVec3),
    ComplexVector(CQVec3),
    ComplexEvent3 { x: CQVec3, t: ComplexRational },
}

pub fn oracle_eval(op: &OracleOp) -> Result<OracleValue> {
    use OracleOp as Op;
    use OracleValue as Val;
    Ok(match op {
        Op::Slowness { v } => Val::Real(slowness(v)?),
        Op::Compose { u, v, sign } => Val::Real(compose(u, v, *sign)?),
        Op::Boost { x, t, v } => {
            let (x, t) = boost_event(x, t, v)?;
            Val::Event { x, t }
        }
        Op::Interval { x, t } => Val::Real(interval(x, t)),
        Op::ReciprocalSymmetry { u, v } => Val::Real(reciprocal_symmetry_residual(u, v)?),
        Op::RotateVelocity { v, r } => Val::Complex(rotate_velocity(v, r)?),
        Op::RotateCoordinate { x, t, r } => Val::Complex(rotate_coordinate(x, t, r)?),
        Op::ReciprocalCoordinate { x, t } => Val::Real(reciprocal_coordinate(x, t)?),
        Op::GFactor { x, t, v, r } => Val::Complex(g_factor(x, t, v, r)?),
        Op::GeneralizedBoost { x, t, v, r } => {
            let (x, t) = generalized_boost(x, t, v, r)?;
            Val::ComplexEvent { x, t }
        }
        Op::InvarianceResidual1D { x, t, v, r } => Val::Complex(invariance_residual_1d(x, t, v, r)?),
        Op::ReciprocalVelocity3D { v, n } => Val::Vector(reciprocal_velocity_3d(v, n)?),
        Op::ReciprocalPosition3D { x, t, n } => Val::Vector(reciprocal_position_3d(x, t, n)?),
        Op::RotateVelocity3D { v, n, r } => Val::ComplexVector(rotate_velocity_3d(v, n, r)?),
        Op::RotatePosition3D { x, t, n, r } => Val::ComplexVector(rotate_position_3d(x, t, n, r)?),
        Op::GFactor3D { x, t, v, n, r } => Val::Complex(g_factor_3d(x, t, v, n, r)?),
        Op::GeneralizedBoost3D { x, t, v, n, r } => {
            let (x, t) = generalized_boost_3d(x, t, v, n, r)?;
            Val::ComplexEvent3 { x, t }
        }
        Op::InvarianceResidual3D { x, t, v, n, r } => Val::Complex(invariance_residual_3d(x, t, v, n, r)?),
    })
}
