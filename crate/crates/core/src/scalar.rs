//! Scalar abstraction shared by the floating-point and exact back ends.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::error::{KinematicsError, Result};

/// A real field element the kinematics can be evaluated over.
///
/// Every formula in this crate is a rational expression in its inputs plus a
/// handful of square roots of the form `sqrt(1 - beta^2)`. Floats always have
/// those roots; rationals only when the radicand is a perfect square, which is
/// what [`Scalar::try_sqrt`] reports.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Square root of a non-negative value, or an error when the result
    /// cannot be represented exactly in this type.
    fn try_sqrt(&self) -> Result<Self>;

    fn is_finite_value(&self) -> bool;

    /// Lossy conversion used for reporting and angle recovery.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type represents small integers")
    }

    /// Whether this type carries rounding error at all.
    fn is_exact() -> bool;
}

macro_rules! impl_float_scalar {
    ($f:ty) => {
        impl Scalar for $f {
            fn try_sqrt(&self) -> Result<Self> {
                if *self < 0.0 {
                    return Err(KinematicsError::IrrationalRoot(format!("{self}")));
                }
                Ok(self.sqrt())
            }

            fn is_finite_value(&self) -> bool {
                self.is_finite()
            }

            fn is_exact() -> bool {
                false
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

impl Scalar for BigRational {
    fn try_sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(KinematicsError::IrrationalRoot(self.to_string()));
        }
        let root = |n: &BigInt| {
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        };
        // Ratio keeps lowest terms, so the root is rational iff both parts are squares.
        match (root(self.numer()), root(self.denom())) {
            (Some(n), Some(d)) => Ok(BigRational::new(n, d)),
            _ => Err(KinematicsError::IrrationalRoot(self.to_string())),
        }
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn is_exact() -> bool {
        true
    }
}

/// Complex number over a [`Scalar`]; houses every rotated quantity.
pub type ComplexScalar<S> = Complex<S>;

pub(crate) fn check_finite<S: Scalar>(v: &S) -> Result<()> {
    if v.is_finite_value() {
        Ok(())
    } else {
        Err(KinematicsError::NonFinite)
    }
}

pub(crate) fn real<S: Scalar>(v: S) -> Complex<S> {
    Complex::new(v, S::zero())
}

/// Complex division with an explicit zero check; BigRational panics otherwise.
pub(crate) fn cdiv<S: Scalar>(
    num: Complex<S>,
    den: Complex<S>,
    err: KinematicsError,
) -> Result<Complex<S>> {
    if den.re.is_zero() && den.im.is_zero() {
        return Err(err);
    }
    Ok(num / den)
}

pub(crate) fn sq<S: Scalar>(v: &S) -> S {
    v.clone() * v.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_sqrt_of_perfect_squares() {
        assert_eq!(q(16, 25).try_sqrt().unwrap(), q(4, 5));
        assert_eq!(q(0, 1).try_sqrt().unwrap(), q(0, 1));
        assert_eq!(q(144, 169).try_sqrt().unwrap(), q(12, 13));
    }

    #[test]
    fn rational_sqrt_rejects_irrational_and_negative() {
        assert!(matches!(q(1, 2).try_sqrt(), Err(KinematicsError::IrrationalRoot(_))));
        assert!(matches!(q(-4, 9).try_sqrt(), Err(KinematicsError::IrrationalRoot(_))));
    }

    #[test]
    fn float_sqrt() {
        assert_eq!(0.64f64.try_sqrt().unwrap(), 0.8);
        assert!(f64::NAN.try_sqrt().unwrap().is_nan());
        assert!((-1.0f32).try_sqrt().is_err());
    }
}
