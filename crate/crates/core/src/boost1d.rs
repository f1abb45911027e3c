//! The reciprocity-independent 1D Lorentz transform.
//!
//! With `x̃`, `ṽ` the reciprocity-rotated coordinate and velocity,
//!
//! ```text
//! x̃' = g (x̃ - ṽ t)        t̃' = g (t - x̃ ṽ)
//! g  = (1 + i (x/t) r)(1 + i v r) / ((1 + r²) sqrt(1 - v²))
//! ```
//!
//! The numerators factor as `(x - v t)(1 + r²)` and `(t - v x)(1 + r²)`, so the
//! output is the standard boost for every φ. Nothing here relies on that;
//! the tests check it.

use num_complex::Complex;

use crate::error::{KinematicsError, Result};
use crate::mobius::{rotate_coordinate, rotate_velocity, ReciprocityRotation};
use crate::scalar::{real, sq, ComplexScalar, Scalar};
use crate::scalar_kinematics::{Beta, Event1D};

/// Output `(x̃', t̃')` of [`generalized_boost`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedEvent1D<S> {
    pub x_out: ComplexScalar<S>,
    pub t_out: ComplexScalar<S>,
}

impl<S: Scalar> GeneralizedEvent1D<S> {
    /// Complex interval `t̃'² - x̃'²` (bilinear, no conjugation).
    pub fn interval(&self) -> ComplexScalar<S> {
        self.t_out.clone() * self.t_out.clone() - self.x_out.clone() * self.x_out.clone()
    }
}

/// Complex normalisation factor in homogeneous form:
/// `(c + i (x/t) s)(c + i v s) / ((s² + c²) sqrt(1 - v²))` for the pair `(s, c)`.
pub fn g_factor<S: Scalar>(
    e: &Event1D<S>,
    beta: &Beta<S>,
    rot: &ReciprocityRotation<S>,
) -> Result<ComplexScalar<S>> {
    let root = beta.contraction()?;
    let ratio = e.ratio()?;
    let (s, c) = (rot.half_num().clone(), rot.half_den().clone());
    let coord = Complex::new(c.clone(), ratio * s.clone());
    let vel = Complex::new(c, beta.value().clone() * s);
    let norm = rot.norm_sqr() * root;
    if norm.is_zero() {
        return Err(KinematicsError::DegenerateRotation);
    }
    Ok(coord * vel / norm)
}

/// Transform `(x, t)` through reciprocity state `rot`.
pub fn generalized_boost<S: Scalar>(
    e: &Event1D<S>,
    beta: &Beta<S>,
    rot: &ReciprocityRotation<S>,
) -> Result<GeneralizedEvent1D<S>> {
    beta.require_subluminal()?;
    // Rotate once and share between both components.
    let x_rot = rotate_coordinate(e, rot)?;
    let v_rot = rotate_velocity(beta, rot)?;
    let g = g_factor(e, beta, rot)?;
    let t = real(e.t.clone());
    let x_out = g.clone() * (x_rot.clone() - v_rot.clone() * t.clone());
    let t_out = g * (t - x_rot * v_rot);
    Ok(GeneralizedEvent1D { x_out, t_out })
}

/// `(t̃'² - x̃'²) - (t² - x²)`; zero up to rounding.
pub fn invariance_residual_1d<S: Scalar>(
    e: &Event1D<S>,
    beta: &Beta<S>,
    rot: &ReciprocityRotation<S>,
) -> Result<ComplexScalar<S>> {
    let out = generalized_boost(e, beta, rot)?;
    Ok(out.interval() - real(sq(&e.t) - sq(&e.x)))
}
