//! Argument parsing: exact decimals, vectors and angles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use relkin_core::oracle::HalfAngle;
use relkin_core::{BigRational as Q, Rotation64};

use crate::error::{CliError, Result};

/// Parse `p/q`, an integer, or a decimal with optional exponent, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || CliError::usage(format!("cannot parse '{s}' as a number"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(CliError::usage(format!("zero denominator in '{s}'")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * Pow::pow(&ten, scale as u32))
    } else {
        BigRational::new(all, Pow::pow(&ten, (-scale) as u32))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

pub fn parse_real(s: &str) -> Result<f64> {
    if s.contains('/') {
        return parse_rational(s)?
            .to_f64()
            .ok_or_else(|| CliError::usage(format!("'{s}' is out of range")));
    }
    let v: f64 = s.trim().parse().map_err(|_| CliError::usage(format!("cannot parse '{s}' as a number")))?;
    if !v.is_finite() {
        return Err(CliError::usage(format!("'{s}' is not finite")));
    }
    Ok(v)
}

/// `X,Y,Z`; a single number `b` is read as `(b, 0, 0)`.
pub fn parse_triple<T>(s: &str, one: impl Fn(&str) -> Result<T>, zero: impl Fn() -> T) -> Result<[T; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [a] => Ok([one(a)?, zero(), zero()]),
        [a, b, c] => Ok([one(a)?, one(b)?, one(c)?]),
        _ => Err(CliError::usage(format!("expected X,Y,Z but got '{s}'"))),
    }
}

pub fn parse_vec_f64(s: &str) -> Result<[f64; 3]> {
    parse_triple(s, parse_real, || 0.0)
}

pub fn parse_vec_exact(s: &str) -> Result<[Q; 3]> {
    parse_triple(s, parse_rational, BigRational::zero)
}

/// A reciprocity angle as given on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum AngleSpec {
    /// `k/n` of a full turn, from `pi`, `pi/2`, `3*pi/4` or whole degrees.
    TurnFraction { k: i64, n: u64 },
    Radians(f64),
    /// Explicit half-angle tangent, `r=P/Q` or `r=inf`.
    TanHalf(HalfAngle),
}

/// Parse `--phi`: radians, `pi`, `pi/N`, `K*pi/N`, `-pi/2`, or `r=P/Q` / `r=inf`.
pub fn parse_phi(s: &str) -> Result<AngleSpec> {
    let t = s.trim().to_ascii_lowercase();
    if let Some(r) = t.strip_prefix("r=") {
        return Ok(AngleSpec::TanHalf(match r {
            "inf" | "infinity" | "∞" => HalfAngle::Infinite,
            _ => HalfAngle::Finite(parse_rational(r)?),
        }));
    }
    if t.contains("pi") || t.contains('π') {
        let t = t.replace('π', "pi");
        let (head, den) = match t.split_once('/') {
            Some((h, d)) => {
                let d: u64 = d.trim().parse().map_err(|_| CliError::usage(format!("bad angle '{s}'")))?;
                if d == 0 {
                    return Err(CliError::usage(format!("bad angle '{s}'")));
                }
                (h.trim().to_string(), d)
            }
            None => (t.trim().to_string(), 1),
        };
        let coeff = head.trim_end_matches("pi").trim_end_matches('*').trim();
        let k: i64 = match coeff {
            "" | "+" => 1,
            "-" => -1,
            c => c.parse().map_err(|_| CliError::usage(format!("bad angle '{s}'")))?,
        };
        // k π / d = 2π k / (2d)
        return Ok(AngleSpec::TurnFraction { k, n: 2 * den });
    }
    Ok(AngleSpec::Radians(parse_real(s)?))
}

pub fn parse_phi_deg(s: &str) -> Result<AngleSpec> {
    if let Ok(k) = s.trim().parse::<i64>() {
        return Ok(AngleSpec::TurnFraction { k, n: 360 });
    }
    Ok(AngleSpec::Radians(parse_real(s)?.to_radians()))
}

impl AngleSpec {
    pub fn to_rotation(&self) -> Result<Rotation64> {
        Ok(match self {
            AngleSpec::TurnFraction { k, n } => {
                let k = k.rem_euclid(*n as i64) as u64;
                Rotation64::from_turn_fraction(k, *n)?
            }
            AngleSpec::Radians(phi) => Rotation64::from_radians(*phi)?,
            AngleSpec::TanHalf(HalfAngle::Finite(r)) => {
                Rotation64::from_tan_half(r.to_f64().unwrap_or(f64::NAN))?
            }
            AngleSpec::TanHalf(HalfAngle::Infinite) => Rotation64::half_turn(),
        })
    }

    /// The exact half-angle tangent, when it is rational.
    pub fn to_half_angle(&self) -> Result<HalfAngle> {
        let irrational = || {
            CliError::usage(
                "exact mode needs a rational tan(phi/2): use 0, pi/2, pi, 3*pi/2 or r=P/Q",
            )
        };
        match self {
            AngleSpec::TurnFraction { k, n } => {
                let k = k.rem_euclid(*n as i64) as u64;
                if !(4 * k).is_multiple_of(*n) {
                    return Err(irrational());
                }
                Ok(match 4 * k / n {
                    0 => HalfAngle::Finite(BigRational::zero()),
                    1 => HalfAngle::Finite(BigRational::one()),
                    2 => HalfAngle::Infinite,
                    _ => HalfAngle::Finite(-BigRational::one()),
                })
            }
            AngleSpec::Radians(phi) if *phi == 0.0 => Ok(HalfAngle::Finite(BigRational::zero())),
            AngleSpec::Radians(_) => Err(irrational()),
            AngleSpec::TanHalf(h) => Ok(h.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use relkin_core::oracle::q;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.6").unwrap(), q(3, 5));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("3/5").unwrap(), q(3, 5));
        assert_eq!(parse_rational("12").unwrap(), q(12, 1));
        assert_eq!(parse_rational("2.5e-1").unwrap(), q(1, 4));
        assert_eq!(parse_rational("4E2").unwrap(), q(400, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn reals() {
        assert_eq!(parse_real("0.6").unwrap(), 0.6);
        assert_eq!(parse_real("1/4").unwrap(), 0.25);
        assert!(parse_real("inf").is_err());
        assert!(parse_real("x").is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vec_f64("1,2,3").unwrap(), [1.0, 2.0, 3.0]);
        assert_eq!(parse_vec_f64("0.6").unwrap(), [0.6, 0.0, 0.0]);
        assert!(parse_vec_f64("1,2").is_err());
        assert_eq!(parse_vec_exact("9/25,0.48,0").unwrap(), [q(9, 25), q(12, 25), q(0, 1)]);
    }

    #[test]
    fn angles() {
        assert_eq!(parse_phi("pi").unwrap(), AngleSpec::TurnFraction { k: 1, n: 2 });
        assert_eq!(parse_phi("pi/2").unwrap(), AngleSpec::TurnFraction { k: 1, n: 4 });
        assert_eq!(parse_phi("3*pi/4").unwrap(), AngleSpec::TurnFraction { k: 3, n: 8 });
        assert_eq!(parse_phi("-pi/2").unwrap(), AngleSpec::TurnFraction { k: -1, n: 4 });
        assert_eq!(parse_phi("0.5").unwrap(), AngleSpec::Radians(0.5));
        assert_eq!(parse_phi("r=1/2").unwrap(), AngleSpec::TanHalf(HalfAngle::Finite(q(1, 2))));
        assert_eq!(parse_phi("r=inf").unwrap(), AngleSpec::TanHalf(HalfAngle::Infinite));
        assert!(parse_phi("pi/0").is_err());
        assert!(parse_phi("xpi").is_err());
        assert_eq!(parse_phi_deg("90").unwrap(), AngleSpec::TurnFraction { k: 90, n: 360 });
    }

    #[test]
    fn pi_is_exact_pole() {
        assert!(parse_phi("pi").unwrap().to_rotation().unwrap().is_pole());
        assert!(parse_phi_deg("180").unwrap().to_rotation().unwrap().is_pole());
        assert!(parse_phi("-pi").unwrap().to_rotation().unwrap().is_pole());
        assert_eq!(parse_phi("pi").unwrap().to_half_angle().unwrap(), HalfAngle::Infinite);
        assert_eq!(
            parse_phi("pi/2").unwrap().to_half_angle().unwrap(),
            HalfAngle::Finite(q(1, 1))
        );
        assert_eq!(
            parse_phi("-pi/2").unwrap().to_half_angle().unwrap(),
            HalfAngle::Finite(q(-1, 1))
        );
        assert!(parse_phi("pi/3").unwrap().to_half_angle().is_err());
        assert!(parse_phi("0.3").unwrap().to_half_angle().is_err());
        assert_eq!(parse_phi("0").unwrap().to_half_angle().unwrap(), HalfAngle::zero());
    }
}
