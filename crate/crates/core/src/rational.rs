//! Positive rationals with exact arithmetic, the value type of the
//! multiplicative Euler characteristic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A positive rational number in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveRational(BigRational);

impl PositiveRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (n, d) = (num.into(), den.into());
        if !n.is_positive() || !d.is_positive() {
            return Err(Error::InvalidParameter(format!("{n}/{d} is not a positive rational")));
        }
        Ok(PositiveRational(BigRational::new(n, d)))
    }

    pub fn one() -> Self {
        PositiveRational(BigRational::one())
    }

    pub fn integer(n: impl Into<BigInt>) -> Result<Self> {
        Self::new(n, 1)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        PositiveRational(&self.0 * &other.0)
    }

    pub fn inv(&self) -> Self {
        PositiveRational(self.0.recip())
    }

    pub fn div(&self, other: &Self) -> Self {
        PositiveRational(&self.0 / &other.0)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.0.recip() } else { self.0.clone() };
        let mut acc = BigRational::one();
        for _ in 0..e.unsigned_abs() {
            acc *= &base;
        }
        PositiveRational(acc)
    }

    /// `p^e` for a prime power with `e` possibly negative.
    pub fn prime_power(p: u64, e: i64) -> Self {
        PositiveRational(BigRational::from_integer(BigInt::from(p))).pow(e)
    }
}

impl fmt::Display for PositiveRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for PositiveRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a positive rational a/b, got {s:?}"));
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        PositiveRational::new(n, d).map_err(|_| bad())
    }
}
