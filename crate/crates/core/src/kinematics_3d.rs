//! Three space dimensions: vector reciprocals, rotated complex 3-vectors,
//! the complex G-factor and the generalized vector boost.
//!
//! All complex dot products are bilinear (`Σ aᵢ bᵢ`, no conjugation).
//! The factor `(1 - s) / V²` with `s = sqrt(1 - V²)` is evaluated as
//! `1 / (1 + s)`, which is the same number and stays finite at `V = 0`.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{KinematicsError, Result};
use crate::mobius::ReciprocityRotation;
use crate::scalar::{cdiv, check_finite, real, sq, ComplexScalar, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Vec3<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Vec3<S> {
    pub fn new(x: S, y: S, z: S) -> Result<Self> {
        check_finite(&x)?;
        check_finite(&y)?;
        check_finite(&z)?;
        Ok(Self { x, y, z })
    }

    pub fn zero() -> Self {
        Self { x: S::zero(), y: S::zero(), z: S::zero() }
    }

    pub fn dot(&self, other: &Self) -> S {
        self.x.clone() * other.x.clone()
            + self.y.clone() * other.y.clone()
            + self.z.clone() * other.z.clone()
    }

    pub fn norm_sqr(&self) -> S {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, k: S) -> Self {
        Self { x: self.x.clone() * k.clone(), y: self.y.clone() * k.clone(), z: self.z.clone() * k }
    }

    pub fn to_complex(&self) -> CVec3<S> {
        CVec3 { x: real(self.x.clone()), y: real(self.y.clone()), z: real(self.z.clone()) }
    }

    pub fn components(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

impl<S: Scalar> Add for Vec3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }
}

impl<S: Scalar> Sub for Vec3<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { x: self.x - o.x, y: self.y - o.y, z: self.z - o.z }
    }
}

/// Complex 3-vector.
#[derive(Debug, Clone, PartialEq)]
pub struct CVec3<S> {
    pub x: ComplexScalar<S>,
    pub y: ComplexScalar<S>,
    pub z: ComplexScalar<S>,
}

impl<S: Scalar> CVec3<S> {
    /// Bilinear product, no conjugation.
    pub fn dot(&self, o: &Self) -> ComplexScalar<S> {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone() + self.z.clone() * o.z.clone()
    }

    pub fn scale(&self, k: &ComplexScalar<S>) -> Self {
        Self { x: self.x.clone() * k.clone(), y: self.y.clone() * k.clone(), z: self.z.clone() * k.clone() }
    }

    pub fn components(&self) -> [ComplexScalar<S>; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    fn div(&self, den: &ComplexScalar<S>, err: KinematicsError) -> Result<Self> {
        Ok(Self {
            x: cdiv(self.x.clone(), den.clone(), err.clone())?,
            y: cdiv(self.y.clone(), den.clone(), err.clone())?,
            z: cdiv(self.z.clone(), den.clone(), err)?,
        })
    }
}

impl<S: Scalar> Add for CVec3<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }
}

impl<S: Scalar> Mul<ComplexScalar<S>> for CVec3<S> {
    type Output = Self;
    fn mul(self, k: ComplexScalar<S>) -> Self {
        self.scale(&k)
    }
}

/// Direction `n` and angle of the vector half-angle parameter `r = tan(φ/2) n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocityAxis<S> {
    n: Vec3<S>,
    rot: ReciprocityRotation<S>,
}

impl<S: Scalar> ReciprocityAxis<S> {
    /// `n` is normalised here; exact scalars need a rational length.
    pub fn new(n: Vec3<S>, rot: ReciprocityRotation<S>) -> Result<Self> {
        let len2 = n.norm_sqr();
        if len2.is_zero() {
            return Err(KinematicsError::ZeroAxis);
        }
        let n = if len2 == S::one() { n } else { n.scale(S::one() / len2.try_sqrt()?) };
        Ok(Self { n, rot })
    }

    pub fn n(&self) -> &Vec3<S> {
        &self.n
    }

    pub fn rotation(&self) -> &ReciprocityRotation<S> {
        &self.rot
    }

    pub fn with_rotation(&self, rot: ReciprocityRotation<S>) -> Self {
        Self { n: self.n.clone(), rot }
    }
}

/// Output `(X̃', t̃')` of [`generalized_boost_3d`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedEvent3D<S> {
    pub x_out: CVec3<S>,
    pub t_out: ComplexScalar<S>,
}

/// `sqrt(1 - V²)` for a velocity, rejecting |V| > 1.
fn velocity_root<S: Scalar>(v: &Vec3<S>) -> Result<S> {
    let v2 = v.norm_sqr();
    if v2 > S::one() {
        return Err(KinematicsError::SuperluminalInput);
    }
    (S::one() - v2).try_sqrt()
}

/// `sqrt(1 - (X/t)²)` for a position, rejecting t = 0 and |X| > |t|.
fn position_root<S: Scalar>(x: &Vec3<S>, t: &S) -> Result<S> {
    if t.is_zero() {
        return Err(KinematicsError::ZeroTime);
    }
    let ratio2 = x.norm_sqr() / sq(t);
    if ratio2 > S::one() {
        return Err(KinematicsError::SpacelikeInput);
    }
    (S::one() - ratio2).try_sqrt()
}

/// Real part of the reciprocal numerator: `(1-s) (n·W / W²) W + n s`, with
/// `(1-s)/W²` supplied as `lead` so the caller picks the right scaling.
fn reciprocal_direction<S: Scalar>(w: &Vec3<S>, n: &Vec3<S>, lead: S, s: S) -> Vec3<S> {
    let along = lead * n.dot(w);
    w.scale(along) + n.scale(s)
}

/// Vector slowness `V*` with `V*·V = 1`; depends on the axis through `n` only.
pub fn reciprocal_velocity_3d<S: Scalar>(v: &Vec3<S>, axis: &ReciprocityAxis<S>) -> Result<Vec3<S>> {
    if v.is_zero() {
        return Err(KinematicsError::ZeroVelocity);
    }
    let nv = axis.n.dot(v);
    if nv.is_zero() {
        return Err(KinematicsError::PerpendicularAxis);
    }
    let s = velocity_root(v)?;
    let lead = S::one() / (S::one() + s.clone());
    Ok(reciprocal_direction(v, &axis.n, lead, s).scale(S::one() / nv))
}

/// Vector reciprocal position `X*` with `X*·X = t²`.
pub fn reciprocal_position_3d<S: Scalar>(
    x: &Vec3<S>,
    t: &S,
    axis: &ReciprocityAxis<S>,
) -> Result<Vec3<S>> {
    if x.is_zero() {
        return Err(KinematicsError::ZeroCoordinate);
    }
    let nx = axis.n.dot(x);
    if nx.is_zero() {
        return Err(KinematicsError::PerpendicularAxis);
    }
    let s = position_root(x, t)?;
    let t2 = sq(t);
    let lead = S::one() / (t2.clone() * (S::one() + s.clone()));
    Ok(reciprocal_direction(x, &axis.n, lead, s).scale(t2 / nx))
}

/// Shared homogeneous rotation `(c W + i s_h scale D) / (c + i s_h (n·W)/unit)`.
fn rotate_vector<S: Scalar>(
    w: &Vec3<S>,
    direction: Vec3<S>,
    scale: S,
    n_dot_w_over_unit: S,
    rot: &ReciprocityRotation<S>,
    zero_err: KinematicsError,
) -> Result<CVec3<S>> {
    let (hs, hc) = (rot.half_num().clone(), rot.half_den().clone());
    let im = hs.clone() * scale;
    let num = CVec3 {
        x: Complex::new(hc.clone() * w.x.clone(), im.clone() * direction.x),
        y: Complex::new(hc.clone() * w.y.clone(), im.clone() * direction.y),
        z: Complex::new(hc.clone() * w.z.clone(), im * direction.z),
    };
    let den = Complex::new(hc, hs * n_dot_w_over_unit);
    num.div(&den, zero_err)
}

fn pole_error<S: Scalar>(w: &Vec3<S>, zero: KinematicsError) -> KinematicsError {
    if w.is_zero() {
        zero
    } else {
        KinematicsError::PerpendicularAxis
    }
}

/// Rotated velocity `Ṽ`; equals `V` at φ = 0 and `V*` at φ = π.
pub fn rotate_velocity_3d<S: Scalar>(v: &Vec3<S>, axis: &ReciprocityAxis<S>) -> Result<CVec3<S>> {
    let s = velocity_root(v)?;
    let lead = S::one() / (S::one() + s.clone());
    let dir = reciprocal_direction(v, &axis.n, lead, s);
    let err = pole_error(v, KinematicsError::ZeroVelocity);
    rotate_vector(v, dir, S::one(), axis.n.dot(v), &axis.rot, err)
}

/// Rotated position `X̃`; equals `X` at φ = 0 and `X*` at φ = π.
pub fn rotate_position_3d<S: Scalar>(
    x: &Vec3<S>,
    t: &S,
    axis: &ReciprocityAxis<S>,
) -> Result<CVec3<S>> {
    let s = position_root(x, t)?;
    let lead = S::one() / (sq(t) * (S::one() + s.clone()));
    let dir = reciprocal_direction(x, &axis.n, lead, s);
    let err = pole_error(x, KinematicsError::ZeroCoordinate);
    let n_dot = axis.n.dot(x) / t.clone();
    rotate_vector(x, dir, t.clone(), n_dot, &axis.rot, err)
}

/// Complex factor generalizing γ, in homogeneous form
/// `(c + i s (X·n)/t)(c + i s (V·n)) / ((s² + c²) sqrt(1 - V²))`.
pub fn g_factor_3d<S: Scalar>(
    x: &Vec3<S>,
    t: &S,
    v: &Vec3<S>,
    axis: &ReciprocityAxis<S>,
) -> Result<ComplexScalar<S>> {
    if v.norm_sqr() >= S::one() {
        return Err(KinematicsError::SuperluminalBoost);
    }
    if t.is_zero() {
        return Err(KinematicsError::ZeroTime);
    }
    let root = (S::one() - v.norm_sqr()).try_sqrt()?;
    let (hs, hc) = (axis.rot.half_num().clone(), axis.rot.half_den().clone());
    let pos = Complex::new(hc.clone(), hs.clone() * axis.n.dot(x) / t.clone());
    let vel = Complex::new(hc, hs * axis.n.dot(v));
    Ok(pos * vel / (axis.rot.norm_sqr() * root))
}

/// The generalized vector boost
/// `X̃' = G { s X̃ + [(1-s)(X̃·Ṽ)/Ṽ² - t] Ṽ }`, `t̃' = G (t - X̃·Ṽ)`,
/// with `s = sqrt(1 - V²)` taken from the real input velocity.
pub fn generalized_boost_3d<S: Scalar>(
    x: &Vec3<S>,
    t: &S,
    v: &Vec3<S>,
    axis: &ReciprocityAxis<S>,
) -> Result<GeneralizedEvent3D<S>> {
    let g = g_factor_3d(x, t, v, axis)?;
    let x_rot = rotate_position_3d(x, t, axis)?;
    let v_rot = rotate_velocity_3d(v, axis)?;
    let vv = v_rot.dot(&v_rot);
    if vv.re.is_zero() && vv.im.is_zero() {
        return Err(KinematicsError::DegenerateRotatedVelocity);
    }
    let s = velocity_root(v)?;
    let xv = x_rot.dot(&v_rot);
    let t_c = real(t.clone());
    let coeff = real(S::one() - s.clone()) * xv.clone() / vv - t_c.clone();
    let inner = x_rot.scale(&real(s)) + v_rot.scale(&coeff);
    Ok(GeneralizedEvent3D { x_out: inner.scale(&g), t_out: g * (t_c - xv) })
}

/// `(t̃'² - X̃'·X̃') - (t² - X·X)` in bilinear complex arithmetic.
pub fn invariance_residual_3d<S: Scalar>(
    x: &Vec3<S>,
    t: &S,
    v: &Vec3<S>,
    axis: &ReciprocityAxis<S>,
) -> Result<ComplexScalar<S>> {
    let out = generalized_boost_3d(x, t, v, axis)?;
    let lhs = out.t_out.clone() * out.t_out - out.x_out.dot(&out.x_out);
    Ok(lhs - real(sq(t) - x.norm_sqr()))
}

/// Standard pure boost of `(X, t)` by velocity `V`:
/// `X' = X + (γ-1)(X·V̂)V̂ - γVt`, `t' = γ(t - X·V)`.
pub fn boost_event_3d<S: Scalar>(x: &Vec3<S>, t: &S, v: &Vec3<S>) -> Result<(Vec3<S>, S)> {
    let v2 = v.norm_sqr();
    if v2 >= S::one() {
        return Err(KinematicsError::SuperluminalBoost);
    }
    let s = (S::one() - v2).try_sqrt()?;
    let gamma = S::one() / s.clone();
    let xv = x.dot(v);
    // (γ - 1)/V² = γ / (1 + s)
    let along = gamma.clone() / (S::one() + s) * xv.clone() - gamma.clone() * t.clone();
    Ok((x.clone() + v.scale(along), gamma * (t.clone() - xv)))
}
