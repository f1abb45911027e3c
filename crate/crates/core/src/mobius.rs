//! Rotation of velocities and coordinates in reciprocity space.
//!
//! The rotation by φ is the Möbius map `z ↦ (z + i r) / (1 + i z r)` with
//! `r = tan(φ/2)`. It is stored as the homogeneous half-angle pair
//! `(sin φ/2, cos φ/2)` and every map is evaluated in the form
//! `(z c + i s) / (c + i z s)`, so φ = π (where r is infinite) is an ordinary
//! value with `c = 0`.

use num_complex::Complex;
use num_traits::Float;

use crate::error::{KinematicsError, Result};
use crate::scalar::{cdiv, check_finite, real, sq, ComplexScalar, Scalar};
use crate::scalar_kinematics::{Beta, Event1D};

/// A point of the one-parameter reciprocity group.
///
/// The pair is canonicalised so that φ lies in `[0, 2π)`: `half_num > 0`, or
/// `half_num = 0` and `half_den > 0`. For floats the pair has unit length.
/// Exact scalars keep an unnormalised pair when `sqrt(num² + den²)` is
/// irrational; all maps are homogeneous of degree zero in the pair, so only
/// its direction matters.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocityRotation<S> {
    half_num: S,
    half_den: S,
}

impl<S: Scalar> ReciprocityRotation<S> {
    /// Build from any nonzero multiple of `(sin φ/2, cos φ/2)`.
    pub fn from_half_angle_pair(half_num: S, half_den: S) -> Result<Self> {
        check_finite(&half_num)?;
        check_finite(&half_den)?;
        if half_num.is_zero() && half_den.is_zero() {
            return Err(KinematicsError::DegenerateRotation);
        }
        let (mut half_num, mut half_den) = (half_num, half_den);
        if let Ok(norm) = (sq(&half_num) + sq(&half_den)).try_sqrt() {
            half_num = half_num / norm.clone();
            half_den = half_den / norm;
        }
        if half_num.is_negative() || (half_num.is_zero() && half_den.is_negative()) {
            half_num = -half_num;
            half_den = -half_den;
        }
        Ok(Self { half_num, half_den })
    }

    /// Rotation with half-angle tangent `r`.
    pub fn from_tan_half(r: S) -> Result<Self> {
        Self::from_half_angle_pair(r, S::one())
    }

    pub fn identity() -> Self {
        Self { half_num: S::zero(), half_den: S::one() }
    }

    /// φ = π: the reciprocal map.
    pub fn half_turn() -> Self {
        Self { half_num: S::one(), half_den: S::zero() }
    }

    /// φ = π/2, i.e. r = 1.
    pub fn quarter_turn() -> Self {
        Self::from_half_angle_pair(S::one(), S::one()).expect("(1, 1) is a valid pair")
    }

    pub fn half_num(&self) -> &S {
        &self.half_num
    }

    pub fn half_den(&self) -> &S {
        &self.half_den
    }

    pub fn is_pole(&self) -> bool {
        self.half_den.is_zero()
    }

    /// `tan(φ/2)`, or `None` at the pole.
    pub fn tan_half(&self) -> Option<S> {
        (!self.is_pole()).then(|| self.half_num.clone() / self.half_den.clone())
    }

    /// `half_num² + half_den²`; one for normalised pairs.
    pub fn norm_sqr(&self) -> S {
        sq(&self.half_num) + sq(&self.half_den)
    }

    /// The angle in `[0, 2π)`, rounded to f64.
    pub fn phi(&self) -> f64 {
        2.0 * self.half_num.to_f64_lossy().atan2(self.half_den.to_f64_lossy())
    }

    /// Same rotation with the pair multiplied by `factor`.
    pub fn scaled(&self, factor: S) -> Result<Self> {
        Self::from_half_angle_pair(
            self.half_num.clone() * factor.clone(),
            self.half_den.clone() * factor,
        )
    }
}

impl<S: Scalar + Float> ReciprocityRotation<S> {
    /// Rotation by `phi` radians, reduced mod 2π.
    pub fn from_radians(phi: S) -> Result<Self> {
        if !phi.is_finite() {
            return Err(KinematicsError::NonFinite);
        }
        let half = phi / (S::one() + S::one());
        Self::from_half_angle_pair(half.sin(), half.cos())
    }

    /// Rotation by `2π k / n`, exact at multiples of a quarter turn.
    pub fn from_turn_fraction(k: u64, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(KinematicsError::InvalidParameters("turn fraction with n = 0".into()));
        }
        let k = k % n;
        if (4 * k).is_multiple_of(n) {
            return match 4 * k / n {
                0 => Ok(Self::identity()),
                1 => Ok(Self::quarter_turn()),
                2 => Ok(Self::half_turn()),
                _ => Self::from_half_angle_pair(S::one(), -S::one()),
            };
        }
        let turn = S::from_f64(std::f64::consts::TAU).expect("float");
        let phi = turn * S::from_u64(k).expect("float") / S::from_u64(n).expect("float");
        Self::from_radians(phi)
    }
}

/// Rotation by `a.phi + b.phi`, via angle addition on the half-angle pairs.
pub fn compose_rotations<S: Scalar>(
    a: &ReciprocityRotation<S>,
    b: &ReciprocityRotation<S>,
) -> ReciprocityRotation<S> {
    let num = a.half_num.clone() * b.half_den.clone() + a.half_den.clone() * b.half_num.clone();
    let den = a.half_den.clone() * b.half_den.clone() - a.half_num.clone() * b.half_num.clone();
    ReciprocityRotation::from_half_angle_pair(num, den)
        .expect("product of nonzero pairs is nonzero")
}

/// Möbius rotation of a real velocity: `(v + i r) / (1 + i v r)`.
///
/// Identity at φ = 0, the slowness `1/v` at φ = π; `±1` are fixed points.
pub fn rotate_velocity<S: Scalar>(
    beta: &Beta<S>,
    rot: &ReciprocityRotation<S>,
) -> Result<ComplexScalar<S>> {
    let v = beta.value().clone();
    let num = Complex::new(v.clone() * rot.half_den.clone(), rot.half_num.clone());
    let den = Complex::new(rot.half_den.clone(), v * rot.half_num.clone());
    cdiv(num, den, KinematicsError::ZeroVelocity)
}

/// Möbius rotation of a coordinate: `(x + i t r) / (1 + i (x/t) r)`.
pub fn rotate_coordinate<S: Scalar>(
    e: &Event1D<S>,
    rot: &ReciprocityRotation<S>,
) -> Result<ComplexScalar<S>> {
    let ratio = e.ratio()?;
    let num = Complex::new(
        e.x.clone() * rot.half_den.clone(),
        e.t.clone() * rot.half_num.clone(),
    );
    let den = Complex::new(rot.half_den.clone(), ratio * rot.half_num.clone());
    cdiv(num, den, KinematicsError::ZeroCoordinate)
}

/// `x* = t² / x`.
pub fn reciprocal_coordinate<S: Scalar>(e: &Event1D<S>) -> Result<S> {
    if e.x.is_zero() {
        return Err(KinematicsError::ZeroCoordinate);
    }
    Ok(sq(&e.t) / e.x.clone())
}

/// Relativistic composition evaluated over complex scalars; with `v = i tan(φ/2)`
/// this is [`rotate_velocity`].
pub fn compose_complex<S: Scalar>(
    u: ComplexScalar<S>,
    v: ComplexScalar<S>,
) -> Result<ComplexScalar<S>> {
    let den = real(S::one()) + u.clone() * v.clone();
    cdiv(u + v, den, KinematicsError::DegenerateDenominator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn rotate_velocity_examples() {
        let quarter = ReciprocityRotation::<f64>::quarter_turn();
        let z = rotate_velocity(&Beta::new(0.6).unwrap(), &quarter).unwrap();
        assert!(close(z, Complex::new(15.0 / 17.0, 8.0 / 17.0), 1e-15));

        let exact = rotate_velocity(
            &Beta::new(q(3, 5)).unwrap(),
            &ReciprocityRotation::from_tan_half(q(1, 1)).unwrap(),
        )
        .unwrap();
        assert_eq!(exact, Complex::new(q(15, 17), q(8, 17)));

        let pole = rotate_velocity(&Beta::new(0.5).unwrap(), &ReciprocityRotation::half_turn());
        assert_eq!(pole.unwrap(), Complex::new(2.0, 0.0));

        let id = rotate_velocity(&Beta::new(-0.37).unwrap(), &ReciprocityRotation::identity());
        assert_eq!(id.unwrap(), Complex::new(-0.37, 0.0));
    }

    #[test]
    fn rotate_velocity_zero_at_pole() {
        let err = rotate_velocity(&Beta::new(0.0).unwrap(), &ReciprocityRotation::half_turn());
        assert_eq!(err, Err(KinematicsError::ZeroVelocity));
        // Away from the pole zero velocity is fine.
        let z = rotate_velocity(&Beta::new(0.0).unwrap(), &ReciprocityRotation::quarter_turn());
        assert!(close(z.unwrap(), Complex::new(0.0, 1.0), 1e-15));
    }

    #[test]
    fn rotate_coordinate_examples() {
        let e = Event1D::new(4.0, 5.0).unwrap();
        let pole = rotate_coordinate(&e, &ReciprocityRotation::half_turn()).unwrap();
        assert!(close(pole, Complex::new(6.25, 0.0), 1e-14));
        assert_eq!(
            rotate_coordinate(&e, &ReciprocityRotation::identity()).unwrap(),
            Complex::new(4.0, 0.0)
        );
        let exact = rotate_coordinate(
            &Event1D::new(q(3, 1), q(5, 1)).unwrap(),
            &ReciprocityRotation::from_tan_half(q(1, 1)).unwrap(),
        )
        .unwrap();
        assert_eq!(exact, Complex::new(q(75, 17), q(40, 17)));
    }

    #[test]
    fn rotate_coordinate_errors() {
        let quarter = ReciprocityRotation::<f64>::quarter_turn();
        assert_eq!(
            rotate_coordinate(&Event1D::new(1.0, 0.0).unwrap(), &quarter),
            Err(KinematicsError::ZeroTime)
        );
        assert_eq!(
            rotate_coordinate(&Event1D::new(0.0, 2.0).unwrap(), &ReciprocityRotation::half_turn()),
            Err(KinematicsError::ZeroCoordinate)
        );
    }

    #[test]
    fn reciprocal_coordinate_examples() {
        assert_eq!(reciprocal_coordinate(&Event1D::new(4.0, 5.0).unwrap()).unwrap(), 6.25);
        assert_eq!(reciprocal_coordinate(&Event1D::new(3.0, 3.0).unwrap()).unwrap(), 3.0);
        assert_eq!(reciprocal_coordinate(&Event1D::new(1.0, 1.0).unwrap()).unwrap(), 1.0);
        assert_eq!(
            reciprocal_coordinate(&Event1D::new(0.0, 1.0).unwrap()),
            Err(KinematicsError::ZeroCoordinate)
        );
    }

    #[test]
    fn compose_rotations_examples() {
        let quarter = ReciprocityRotation::<f64>::quarter_turn();
        let half = compose_rotations(&quarter, &quarter);
        assert!(half.half_den().abs() < 1e-16);
        assert!((half.phi() - PI).abs() < 1e-15);

        let phi = ReciprocityRotation::from_radians(1.234).unwrap();
        let same = compose_rotations(&phi, &ReciprocityRotation::identity());
        assert_eq!(same, phi);

        let pole = ReciprocityRotation::<f64>::half_turn();
        assert_eq!(compose_rotations(&pole, &pole), ReciprocityRotation::identity());

        let exact = ReciprocityRotation::from_tan_half(q(1, 1)).unwrap();
        assert!(compose_rotations(&exact, &exact).is_pole());
    }

    #[test]
    fn angle_is_reduced_mod_two_pi() {
        let a = ReciprocityRotation::from_radians(0.7).unwrap();
        let b = ReciprocityRotation::from_radians(0.7 + 2.0 * PI).unwrap();
        let c = ReciprocityRotation::from_radians(0.7 - 4.0 * PI).unwrap();
        assert!((a.phi() - b.phi()).abs() < 1e-14);
        assert!((a.phi() - c.phi()).abs() < 1e-14);
        assert!((a.norm_sqr() - 1.0).abs() < 1e-15);
        let neg = ReciprocityRotation::from_radians(-FRAC_PI_2).unwrap();
        assert!((neg.phi() - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn turn_fractions_hit_quarter_points_exactly() {
        let r = ReciprocityRotation::<f64>::from_turn_fraction(32, 64).unwrap();
        assert!(r.is_pole());
        let r = ReciprocityRotation::<f64>::from_turn_fraction(16, 64).unwrap();
        assert_eq!(r, ReciprocityRotation::quarter_turn());
        let r = ReciprocityRotation::<f64>::from_turn_fraction(0, 64).unwrap();
        assert_eq!(r, ReciprocityRotation::identity());
        let r = ReciprocityRotation::<f64>::from_turn_fraction(48, 64).unwrap();
        assert!((r.phi() - 1.5 * PI).abs() < 1e-15);
        assert!(ReciprocityRotation::<f64>::from_turn_fraction(1, 0).is_err());
    }

    #[test]
    fn degenerate_pair_rejected() {
        assert_eq!(
            ReciprocityRotation::from_half_angle_pair(0.0, 0.0),
            Err(KinematicsError::DegenerateRotation)
        );
    }

    #[test]
    fn exact_pairs_normalise_when_rational() {
        // r = 3/4: (3, 4)/5 is rational.
        let r = ReciprocityRotation::from_tan_half(q(3, 4)).unwrap();
        assert_eq!(r.half_num().clone(), q(3, 5));
        assert_eq!(r.half_den().clone(), q(4, 5));
        // r = 1 keeps (1, 1).
        let r = ReciprocityRotation::from_tan_half(q(1, 1)).unwrap();
        assert_eq!(r.norm_sqr(), q(2, 1));
    }

    fn beta_strategy() -> impl Strategy<Value = f64> {
        (-0.99f64..0.99).prop_filter("nonzero", |v| v.abs() > 1e-3)
    }

    proptest! {
        #[test]
        fn group_law(v in beta_strategy(), a in 0.0f64..std::f64::consts::TAU, b in 0.0f64..std::f64::consts::TAU) {
            let ra = ReciprocityRotation::from_radians(a).unwrap();
            let rb = ReciprocityRotation::from_radians(b).unwrap();
            let beta = Beta::new(v).unwrap();
            let step = rotate_velocity(&beta, &ra).unwrap();
            // Apply rb to the complex intermediate through the homogeneous map.
            let num = step * rb.half_den() + Complex::new(0.0, *rb.half_num());
            let den = Complex::new(*rb.half_den(), 0.0) + step * Complex::new(0.0, *rb.half_num());
            let twice = num / den;
            let once = rotate_velocity(&beta, &compose_rotations(&ra, &rb)).unwrap();
            prop_assume!(den.norm() > 1e-3);
            prop_assert!((twice - once).norm() < 1e-10 * (1.0 + once.norm()));
        }

        #[test]
        fn periodicity(v in beta_strategy(), phi in -10.0f64..10.0) {
            let beta = Beta::new(v).unwrap();
            let a = rotate_velocity(&beta, &ReciprocityRotation::from_radians(phi).unwrap()).unwrap();
            let b = rotate_velocity(&beta, &ReciprocityRotation::from_radians(phi + 2.0 * PI).unwrap()).unwrap();
            prop_assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
        }

        #[test]
        fn quarter_turn_has_unit_modulus(v in -50.0f64..50.0) {
            let z = rotate_velocity(&Beta::new(v).unwrap(), &ReciprocityRotation::quarter_turn()).unwrap();
            prop_assert!((z.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn light_speed_is_fixed(phi in 0.0f64..std::f64::consts::TAU, sign in prop::bool::ANY) {
            let c = if sign { 1.0 } else { -1.0 };
            let z = rotate_velocity(&Beta::new(c).unwrap(), &ReciprocityRotation::from_radians(phi).unwrap()).unwrap();
            prop_assert!((z - Complex::new(c, 0.0)).norm() < 1e-12);
        }

        #[test]
        fn matches_composition_with_imaginary_velocity(v in beta_strategy(), phi in 0.0f64..3.1) {
            let rot = ReciprocityRotation::from_radians(phi).unwrap();
            let r = rot.tan_half().unwrap();
            let via_compose = compose_complex(Complex::new(v, 0.0), Complex::new(0.0, r)).unwrap();
            let direct = rotate_velocity(&Beta::new(v).unwrap(), &rot).unwrap();
            prop_assert!((via_compose - direct).norm() < 1e-12 * (1.0 + direct.norm()));
        }

        #[test]
        fn pole_is_slowness_and_reciprocal(v in beta_strategy(), t in 0.5f64..5.0, f in 0.01f64..0.99) {
            let pole = ReciprocityRotation::half_turn();
            let z = rotate_velocity(&Beta::new(v).unwrap(), &pole).unwrap();
            prop_assert!((z.re - 1.0 / v).abs() < 1e-12 * (1.0 / v).abs() && z.im == 0.0);
            let e = Event1D::new(f * t, t).unwrap();
            let w = rotate_coordinate(&e, &pole).unwrap();
            prop_assert!((w.re - reciprocal_coordinate(&e).unwrap()).abs() < 1e-12 * w.re.abs());
        }
    }
}
