//! Relativistic kinematics under reciprocity rotations.
//!
//! A velocity `v` (in units of c) has a slowness `1/v`; the relativistic
//! composition law is unchanged when both velocities are replaced by their
//! slownesses. The one-parameter Möbius family
//! `z ↦ (z + i tan(φ/2)) / (1 + i z tan(φ/2))` interpolates between a quantity
//! (φ = 0) and its reciprocal (φ = π). This crate implements those maps for
//! velocities and coordinates in one and three space dimensions, together with
//! the complex-normalised Lorentz transforms that keep the interval invariant
//! in every reciprocity state.
//!
//! Everything is generic over [`Scalar`], implemented for `f32`, `f64` and
//! [`BigRational`]. The [`oracle`] module is a separate exact implementation
//! over complex rationals that works directly with `r = tan(φ/2)` and is
//! used to check the generic code.
//!
//! ```
//! use relkin_core::{compose, Beta, Sign};
//!
//! let u = Beta::new(0.6_f64).unwrap();
//! let v = Beta::new(0.8).unwrap();
//! let w = compose(&u, &v, Sign::Plus).unwrap();
//! assert!((w.value() - 35.0 / 37.0).abs() < 1e-15);
//! ```

pub mod boost1d;
pub mod error;
pub mod kinematics_3d;
pub mod mobius;
pub mod oracle;
pub mod scalar;
pub mod scalar_kinematics;

pub use boost1d::{g_factor, generalized_boost, invariance_residual_1d, GeneralizedEvent1D};
pub use error::{KinematicsError, Result};
pub use kinematics_3d::{
    boost_event_3d, g_factor_3d, generalized_boost_3d, invariance_residual_3d,
    reciprocal_position_3d, reciprocal_velocity_3d, rotate_position_3d, rotate_velocity_3d, CVec3,
    GeneralizedEvent3D, ReciprocityAxis, Vec3,
};
pub use mobius::{
    compose_rotations, reciprocal_coordinate, rotate_coordinate, rotate_velocity,
    ReciprocityRotation,
};
pub use num_rational::BigRational;
pub use scalar::{ComplexScalar, Scalar};
pub use scalar_kinematics::{
    boost_event, compose, interval, reciprocal_symmetry_residual, slowness, Beta, Event1D,
    Interval, Sign,
};

pub type Beta64 = Beta<f64>;
pub type Event1D64 = Event1D<f64>;
pub type Rotation64 = ReciprocityRotation<f64>;
pub type Vec3f64 = Vec3<f64>;
pub type CVec3f64 = CVec3<f64>;
pub type Axis64 = ReciprocityAxis<f64>;
pub type Complex64 = ComplexScalar<f64>;

pub type Beta32 = Beta<f32>;
pub type Event1D32 = Event1D<f32>;
pub type Rotation32 = ReciprocityRotation<f32>;

pub type ExactBeta = Beta<BigRational>;
pub type ExactEvent1D = Event1D<BigRational>;
pub type ExactRotation = ReciprocityRotation<BigRational>;
pub type ExactVec3 = Vec3<BigRational>;
pub type ExactAxis = ReciprocityAxis<BigRational>;
