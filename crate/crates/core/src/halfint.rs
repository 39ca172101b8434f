//! Exact half-integers for spin quantum numbers and projections.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported spin, in doubled units (s = 50).
pub const MAX_TWICE_SPIN: i64 = 100;

/// A half-integer stored as twice its value, so `HalfInt::from_twice(3)` is 3/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice_value: i64) -> Self {
        HalfInt(twice_value)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    /// Converts a float that is (to within 1e-9) a multiple of 1/2.
    pub fn from_f64(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        if !twice.is_finite() || (twice - twice.round()).abs() > 1e-9 || twice.abs() > 1e15 {
            return Err(Error::Parse(value.to_string()));
        }
        Ok(HalfInt(twice.round() as i64))
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Accepts integers ("2"), decimals ("1.5", "-0.5") and fractions ("3/2", "-1/2").
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let bad = || Error::Parse(s.to_string());
        if let Some((num, den)) = text.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(HalfInt(2 * num)),
                2 => Ok(HalfInt(num)),
                _ => Err(bad()),
            };
        }
        let value: f64 = text.parse().map_err(|_| bad())?;
        HalfInt::from_f64(value).map_err(|_| bad())
    }
}

/// A validated spin quantum number `s`: non-negative, at most 50.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Spin(HalfInt);

impl Spin {
    pub fn new(s: HalfInt) -> Result<Self> {
        if s.twice() < 0 {
            return Err(Error::InvalidSpin(s.to_string()));
        }
        if s.twice() > MAX_TWICE_SPIN {
            return Err(Error::SpinTooLarge(s.to_string()));
        }
        Ok(Spin(s))
    }

    pub fn half_int(self) -> HalfInt {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0.value()
    }

    /// Hilbert-space dimension 2s+1.
    pub fn dim(self) -> usize {
        self.0.twice() as usize + 1
    }

    /// Projections s, s-1, ..., -s in basis order.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInt> {
        let two_s = self.0.twice();
        (0..=two_s).map(move |k| HalfInt(two_s - 2 * k))
    }

    /// Basis slot of projection `m` (descending-m ordering).
    pub fn index_of(self, m: HalfInt) -> Result<usize> {
        let two_s = self.0.twice();
        let two_m = m.twice();
        if two_m.abs() > two_s || (two_s - two_m) % 2 != 0 {
            return Err(Error::InvalidProjection {
                s: self.0.to_string(),
                m: m.to_string(),
            });
        }
        Ok(((two_s - two_m) / 2) as usize)
    }

    /// s(s+1).
    pub fn casimir(self) -> f64 {
        let s = self.value();
        s * (s + 1.0)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
