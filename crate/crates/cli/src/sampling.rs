//! Seeded admissible inputs and the φ grid.
//!
//! Float draws: β uniform in (-0.99, 0.99) with |β| >= 1e-6; events with
//! t uniform in [0.5, 2) and x = u t, u drawn like β (timelike, x != 0); 3D
//! directions uniform on the sphere, speeds in [0.01, 0.99), and for general
//! configurations the axis is kept at least 0.1 (in cosine) away from
//! perpendicular to both X and V so the φ = π reciprocals stay defined.
//!
//! Exact draws: Pythagorean β = (m² - n²)/(m² + n²) with 1 <= n < m <= 10 and
//! a random sign; integer events 0 < |x| < t <= 20; vectors from the
//! rational-norm families with random component signs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relkin_core::oracle::{self, family_vector_with_norm, gen_pythagorean_beta, HalfAngle, QVec3};
use relkin_core::Rotation64;

use crate::config::Family;

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Grid points as reduced fractions `k/n` of a turn: `k/count` for
/// `k < count`, plus 0, 1/4 and 1/2 when `count` does not already hit them.
pub fn turn_fractions(count: usize) -> Vec<(u64, u64)> {
    let n = count as u64;
    let mut pts: Vec<(u64, u64)> = (0..n).map(|k| reduce(k, n)).collect();
    pts.extend([(0, 1), (1, 4), (1, 2)]);
    pts.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    pts.dedup();
    pts
}

fn reduce(k: u64, n: u64) -> (u64, u64) {
    let g = gcd(k, n);
    if k == 0 {
        (0, 1)
    } else {
        (k / g, n / g)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub struct FloatGridPoint {
    pub index: usize,
    pub phi: f64,
    pub rotation: Rotation64,
}

pub fn float_grid(count: usize) -> Vec<FloatGridPoint> {
    turn_fractions(count)
        .into_iter()
        .enumerate()
        .map(|(index, (k, n))| {
            let rotation = Rotation64::from_turn_fraction(k, n).expect("n > 0");
            FloatGridPoint { index, phi: std::f64::consts::TAU * k as f64 / n as f64, rotation }
        })
        .collect()
}

pub struct ExactGridPoint {
    pub index: usize,
    pub phi: f64,
    pub half_angle: HalfAngle,
}

/// Exact grid: quarter turns map to r = 0, 1, inf, -1; other points use
/// `tan(φ/2)` rounded to the nearest multiple of 1/64.
pub fn exact_grid(count: usize) -> Vec<ExactGridPoint> {
    turn_fractions(count)
        .into_iter()
        .enumerate()
        .map(|(index, (k, n))| {
            let half_angle = if (4 * k) % n == 0 {
                match 4 * k / n {
                    0 => HalfAngle::Finite(oracle::q(0, 1)),
                    1 => HalfAngle::Finite(oracle::q(1, 1)),
                    2 => HalfAngle::Infinite,
                    _ => HalfAngle::Finite(oracle::q(-1, 1)),
                }
            } else {
                let tan = (std::f64::consts::PI * k as f64 / n as f64).tan();
                HalfAngle::Finite(oracle::q((tan * 64.0).round() as i64, 64))
            };
            ExactGridPoint { index, phi: half_angle.phi(), half_angle }
        })
        .collect()
}

/// A signed value in (-0.99, 0.99) with magnitude at least 1e-6.
pub fn nonzero_beta(rng: &mut impl Rng) -> f64 {
    loop {
        let b: f64 = rng.gen_range(-0.99..0.99);
        if b.abs() >= 1e-6 {
            return b;
        }
    }
}

pub fn timelike_event(rng: &mut impl Rng) -> (f64, f64) {
    let t: f64 = rng.gen_range(0.5..2.0);
    (nonzero_beta(rng) * t, t)
}

pub fn unit_vector(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|c| c * c).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return v.map(|c| c / n);
        }
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config3 {
    pub x: [f64; 3],
    pub t: f64,
    pub v: [f64; 3],
    pub n: [f64; 3],
}

pub fn config3(rng: &mut impl Rng, family: Family) -> Config3 {
    let t: f64 = rng.gen_range(0.5..2.0);
    match family {
        Family::General => {
            let n = unit_vector(rng);
            let mut off_axis = || loop {
                let d = unit_vector(rng);
                if dot(&d, &n).abs() >= 0.1 {
                    return d;
                }
            };
            let (dv, dx) = (off_axis(), off_axis());
            let speed: f64 = rng.gen_range(0.01..0.99);
            let frac: f64 = rng.gen_range(0.01..0.99);
            Config3 { x: dx.map(|c| c * frac * t), t, v: dv.map(|c| c * speed), n }
        }
        Family::Collinear => {
            let n = unit_vector(rng);
            let beta = nonzero_beta(rng);
            let frac = nonzero_beta(rng);
            Config3 { x: n.map(|c| c * frac * t), t, v: n.map(|c| c * beta), n }
        }
    }
}

pub fn pythagorean(rng: &mut impl Rng) -> BigRational {
    let m = rng.gen_range(2..=10u64);
    let n = rng.gen_range(1..m);
    let beta = gen_pythagorean_beta(m, n).expect("1 <= n < m").beta;
    if rng.gen_bool(0.5) {
        -beta
    } else {
        beta
    }
}

pub fn exact_event(rng: &mut impl Rng) -> (BigRational, BigRational) {
    let t = rng.gen_range(2..=20i64);
    let x = loop {
        let x = rng.gen_range(-(t - 1)..=(t - 1));
        if x != 0 {
            break x;
        }
    };
    (oracle::q(x, 1), oracle::q(t, 1))
}

fn signed_family(rng: &mut impl Rng, len: &BigRational) -> QVec3 {
    let fam = rng.gen_range(0..oracle::FAMILIES.len());
    let v = family_vector_with_norm(fam, len).expect("valid family").v;
    v.map(|c| if rng.gen_bool(0.5) { -c } else { c })
}

fn qdot(a: &QVec3, b: &QVec3) -> BigRational {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactConfig3 {
    pub x: QVec3,
    pub t: BigRational,
    pub v: QVec3,
    pub n: QVec3,
}

pub fn exact_config3(rng: &mut impl Rng, family: Family) -> ExactConfig3 {
    let t = oracle::q(rng.gen_range(1..=20i64), 1);
    let one = oracle::q(1, 1);
    match family {
        Family::General => loop {
            let n = signed_family(rng, &one);
            let speed = pythagorean(rng).abs();
            let v = signed_family(rng, &speed);
            let reach = pythagorean(rng).abs() * &t;
            let x = signed_family(rng, &reach);
            if !qdot(&n, &v).is_zero() && !qdot(&n, &x).is_zero() && !is_parallel(&x, &v) {
                return ExactConfig3 { x, t, v, n };
            }
        },
        Family::Collinear => {
            let n = signed_family(rng, &one);
            let beta = pythagorean(rng);
            let frac = pythagorean(rng);
            let x = n.clone().map(|c| c * &frac * &t);
            let v = n.clone().map(|c| c * &beta);
            ExactConfig3 { x, t, v, n }
        }
    }
}

fn is_parallel(a: &QVec3, b: &QVec3) -> bool {
    let cross = [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ];
    cross.iter().all(Zero::is_zero)
}

pub fn rat_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
