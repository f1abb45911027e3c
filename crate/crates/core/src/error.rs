use thiserror::Error;

/// Every precondition failure the kinematics and oracle routines can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KinematicsError {
    #[error("velocity is zero: its slowness is undefined")]
    ZeroVelocity,
    #[error("composition denominator 1 ± u·v vanishes")]
    DegenerateDenominator,
    #[error("boost speed must satisfy |beta| < 1")]
    SuperluminalBoost,
    #[error("time coordinate is zero: x/ct is undefined")]
    ZeroTime,
    #[error("spatial coordinate is zero at the reciprocal pole")]
    ZeroCoordinate,
    #[error("reciprocity axis is perpendicular to the vector (n·V = 0)")]
    PerpendicularAxis,
    #[error("velocity magnitude exceeds 1, sqrt(1 - V^2) is not real")]
    SuperluminalInput,
    #[error("event is spacelike (|X| > t), sqrt(1 - (X/t)^2) is not real")]
    SpacelikeInput,
    #[error("rotated velocity has zero bilinear square")]
    DegenerateRotatedVelocity,
    #[error("square root of {0} is not rational")]
    IrrationalRoot(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unknown rational vector family {0}")]
    UnknownFamily(usize),
    #[error("value is not finite")]
    NonFinite,
    #[error("axis vector has zero length")]
    ZeroAxis,
    #[error("half-angle pair (0, 0) does not define a rotation")]
    DegenerateRotation,
}

pub type Result<T, E = KinematicsError> = std::result::Result<T, E>;
