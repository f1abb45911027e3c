//! Inputs whose square-root data is rational.

use num_bigint::BigInt;
use num_rational::BigRational;
use crate::error::{KinematicsError, Result};

/// `β = (m² - n²)/(m² + n²)` with `sqrt(1 - β²) = 2mn/(m² + n²)` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PythagoreanBeta {
    pub m: u64,
    pub n: u64,
    pub beta: BigRational,
    pub root: BigRational,
}

pub fn gen_pythagorean_beta(m: u64, n: u64) -> Result<PythagoreanBeta> {
    if n < 1 || m <= n {
        return Err(KinematicsError::InvalidParameters(format!(
            "need m > n >= 1, got m = {m}, n = {n}"
        )));
    }
    let (mi, ni) = (BigInt::from(m), BigInt::from(n));
    let hyp = &mi * &mi + &ni * &ni;
    let beta = BigRational::new(&mi * &mi - &ni * &ni, hyp.clone());
    let root = BigRational::new(BigInt::from(2u8) * &mi * &ni, hyp);
    Ok(PythagoreanBeta { m, n, beta, root })
}

/// Integer vectors with integer length.
pub const FAMILIES: [([i64; 3], i64); 5] = [
    ([3, 4, 0], 5),
    ([1, 2, 2], 3),
    ([2, 3, 6], 7),
    ([4, 4, 7], 9),
    ([1, 4, 8], 9),
];

/// A rational vector together with its exact length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVec3 {
    pub v: [BigRational; 3],
    pub norm: BigRational,
}

impl RationalVec3 {
    pub fn unit(&self) -> [BigRational; 3] {
        self.v.clone().map(|c| c / self.norm.clone())
    }
}

pub fn gen_rational_vec3(family_id: usize, scale: &BigRational) -> Result<RationalVec3> {
    let (base, len) = FAMILIES.get(family_id).ok_or(KinematicsError::UnknownFamily(family_id))?;
    let v = base.map(|c| BigRational::from_integer(BigInt::from(c)) * scale);
    let norm = BigRational::from_integer(BigInt::from(*len)) * scale;
    Ok(RationalVec3 { v, norm })
}

/// Family vector rescaled to length exactly `len`.
pub fn family_vector_with_norm(family_id: usize, len: &BigRational) -> Result<RationalVec3> {
    let (_, base_len) = FAMILIES.get(family_id).ok_or(KinematicsError::UnknownFamily(family_id))?;
    let scale = len / BigRational::from_integer(BigInt::from(*base_len));
    gen_rational_vec3(family_id, &scale)
}

/// All Pythagorean betas with `n < m <= max_m`.
pub fn pythagorean_betas(max_m: u64) -> Vec<PythagoreanBeta> {
    (2..=max_m)
        .flat_map(|m| (1..m).map(move |n| (m, n)))
        .map(|(m, n)| gen_pythagorean_beta(m, n).expect("m > n >= 1"))
        .collect()
}
