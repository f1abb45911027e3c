//! Real 1D kinematics with c = 1: slowness, velocity composition, the
//! standard boost and the invariant interval.


use crate::error::{KinematicsError, Result};
use crate::scalar::{check_finite, sq, Scalar};

/// Dimensionless velocity v/c.
///
/// Any finite value is accepted: slownesses of subluminal speeds are
/// superluminal and still have to compose. Only [`boost_event`] insists on
/// `|beta| < 1`.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct Beta<S>(S);

impl<S: Scalar> Beta<S> {
    pub fn new(value: S) -> Result<Self> {
        check_finite(&value)?;
        Ok(Self(value))
    }

    pub fn value(&self) -> &S {
        &self.0
    }

    pub fn into_inner(self) -> S {
        self.0
    }

    pub fn is_subluminal(&self) -> bool {
        sq(&self.0) < S::one()
    }

    pub(crate) fn require_subluminal(&self) -> Result<()> {
        if self.is_subluminal() {
            Ok(())
        } else {
            Err(KinematicsError::SuperluminalBoost)
        }
    }

    /// `sqrt(1 - beta^2)`, the reciprocal of the Lorentz factor.
    pub fn contraction(&self) -> Result<S> {
        self.require_subluminal()?;
        (S::one() - sq(&self.0)).try_sqrt()
    }
}

/// Space-time event (x, t) in light-time units.
#[derive(Debug, Clone, PartialEq)]
pub struct Event1D<S> {
    pub x: S,
    pub t: S,
}

impl<S: Scalar> Event1D<S> {
    pub fn new(x: S, t: S) -> Result<Self> {
        check_finite(&x)?;
        check_finite(&t)?;
        Ok(Self { x, t })
    }

    /// `x / t`, the event's apparent speed; undefined for t = 0.
    pub(crate) fn ratio(&self) -> Result<S> {
        if self.t.is_zero() {
            return Err(KinematicsError::ZeroTime);
        }
        Ok(self.x.clone() / self.t.clone())
    }
}

/// Invariant interval `t^2 - x^2`.
#[derive(Debug, Clone, PartialEq, PartialOrd)]
pub struct Interval<S>(pub S);

impl<S> Interval<S> {
    pub fn value(&self) -> &S {
        &self.0
    }
}

/// Branch of the two-signed composition `u ⊕ (±v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn apply<S: Scalar>(self, v: S) -> S {
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }
}

/// The reciprocal velocity `1/beta`.
pub fn slowness<S: Scalar>(beta: &Beta<S>) -> Result<Beta<S>> {
    if beta.0.is_zero() {
        return Err(KinematicsError::ZeroVelocity);
    }
    Beta::new(S::one() / beta.0.clone())
}

/// Relativistic composition `(u ± v) / (1 ± u v)`.
pub fn compose<S: Scalar>(u: &Beta<S>, v: &Beta<S>, sign: Sign) -> Result<Beta<S>> {
    let v = sign.apply(v.0.clone());
    let den = S::one() + u.0.clone() * v.clone();
    if den.is_zero() {
        return Err(KinematicsError::DegenerateDenominator);
    }
    Beta::new((u.0.clone() + v) / den)
}

/// Event coordinates seen by an observer moving with `beta`.
pub fn boost_event<S: Scalar>(e: &Event1D<S>, beta: &Beta<S>) -> Result<Event1D<S>> {
    let root = beta.contraction()?;
    let v = beta.0.clone();
    let x = (e.x.clone() - v.clone() * e.t.clone()) / root.clone();
    let t = (e.t.clone() - v * e.x.clone()) / root;
    Ok(Event1D { x, t })
}

pub fn interval<S: Scalar>(e: &Event1D<S>) -> Interval<S> {
    Interval(sq(&e.t) - sq(&e.x))
}

/// `|u ⊕ v - u* ⊕ v*|`; zero up to rounding.
pub fn reciprocal_symmetry_residual<S: Scalar>(u: &Beta<S>, v: &Beta<S>) -> Result<S> {
    let direct = compose(u, v, Sign::Plus)?;
    let reciprocal = compose(&slowness(u)?, &slowness(v)?, Sign::Plus)?;
    Ok((direct.0 - reciprocal.0).abs())
}
