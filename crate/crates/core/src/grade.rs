//! Exact rational grades and distances.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// A non-negative exact rational.
///
/// Formula grades live in `[0, 1]`; distances may also take the value 2,
/// which disjoint unions use between components.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grade(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradeError {
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("negative value `{0}`")]
    Negative(String),
    #[error("grade {0} lies outside [0,1]")]
    OutOfUnit(Grade),
}

impl Grade {
    pub fn zero() -> Self {
        Grade(BigRational::zero())
    }

    pub fn one() -> Self {
        Grade(BigRational::one())
    }

    /// The inter-component distance of a disjoint union.
    pub fn sentinel() -> Self {
        Grade::from_int(2)
    }

    pub fn from_int(n: u64) -> Self {
        Grade(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, reduced. Panics on a zero denominator.
    pub fn ratio(numer: u64, denom: u64) -> Self {
        assert!(denom != 0, "zero denominator");
        Grade(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// `2^-n`.
    pub fn dyadic(n: u32) -> Self {
        Grade(BigRational::new(BigInt::one(), BigInt::one() << n as usize))
    }

    pub fn from_rational(r: BigRational) -> Result<Self, GradeError> {
        if r.is_negative() {
            return Err(GradeError::Negative(r.to_string()));
        }
        Ok(Grade(r))
    }

    /// Parse a literal and require it to lie in `[0, 1]`.
    pub fn parse_unit(s: &str) -> Result<Self, GradeError> {
        let g: Grade = s.parse()?;
        if g.is_unit() {
            Ok(g)
        } else {
            Err(GradeError::OutOfUnit(g))
        }
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.0 <= BigRational::one()
    }

    pub fn mul(&self, other: &Grade) -> Grade {
        Grade(&self.0 * &other.0)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Grade {
        Grade(self.0.recip())
    }

    /// Division by a positive grade.
    pub fn div(&self, other: &Grade) -> Grade {
        Grade(&self.0 / &other.0)
    }

    /// `1 - self`, possibly negative, so returned as a raw rational.
    pub fn complement(&self) -> BigRational {
        BigRational::one() - &self.0
    }
}

impl FromStr for Grade {
    type Err = GradeError;

    /// Accepts `int`, `int/int` and finite decimals such as `0.125`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let malformed = || GradeError::Malformed(s.to_string());
        let digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
        if t.starts_with('-') {
            return Err(GradeError::Negative(s.to_string()));
        }
        if let Some((n, d)) = t.split_once('/') {
            if !digits(n) || !digits(d) {
                return Err(malformed());
            }
            let n: BigInt = n.parse().map_err(|_| malformed())?;
            let d: BigInt = d.parse().map_err(|_| malformed())?;
            if d.is_zero() {
                return Err(GradeError::ZeroDenominator(s.to_string()));
            }
            return Ok(Grade(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            if !digits(int) || !digits(frac) {
                return Err(malformed());
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let n: BigInt = format!("{int}{frac}").parse().map_err(|_| malformed())?;
            return Ok(Grade(BigRational::new(n, scale)));
        }
        if !digits(t) {
            return Err(malformed());
        }
        let n: BigInt = t.parse().map_err(|_| malformed())?;
        Ok(Grade(BigRational::from_integer(n)))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl serde::Serialize for Grade {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Grade {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
