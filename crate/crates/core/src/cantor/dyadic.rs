use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A metric value `2^-j`, or zero. Values are written `2^-j` (with `1` for
/// `j = 0`) and `0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DyadicValue {
    Pow(u32),
    Zero,
}

impl DyadicValue {
    pub const ONE: DyadicValue = DyadicValue::Pow(0);

    pub fn pow(j: u32) -> Self {
        DyadicValue::Pow(j)
    }

    /// The exponent `j` of `2^-j`; `None` for zero.
    pub fn exponent(self) -> Option<u32> {
        match self {
            DyadicValue::Pow(j) => Some(j),
            DyadicValue::Zero => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == DyadicValue::Zero
    }

    pub fn half(self) -> Self {
        match self {
            DyadicValue::Pow(j) => DyadicValue::Pow(j + 1),
            DyadicValue::Zero => DyadicValue::Zero,
        }
    }

    /// `2·self`, or `None` when that exceeds one.
    pub fn double(self) -> Option<Self> {
        match self {
            DyadicValue::Pow(0) => None,
            DyadicValue::Pow(j) => Some(DyadicValue::Pow(j - 1)),
            DyadicValue::Zero => Some(DyadicValue::Zero),
        }
    }

    pub fn to_rational(self) -> DyadicRational {
        match self {
            DyadicValue::Pow(j) => DyadicRational::new(1, j),
            DyadicValue::Zero => DyadicRational::ZERO,
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            DyadicValue::Pow(j) => (-(j as f64)).exp2(),
            DyadicValue::Zero => 0.0,
        }
    }
}

impl Ord for DyadicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (DyadicValue::Zero, DyadicValue::Zero) => Ordering::Equal,
            (DyadicValue::Zero, _) => Ordering::Less,
            (_, DyadicValue::Zero) => Ordering::Greater,
            (DyadicValue::Pow(a), DyadicValue::Pow(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for DyadicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DyadicValue::Pow(0) => f.write_str("1"),
            DyadicValue::Pow(j) => write!(f, "2^-{j}"),
            DyadicValue::Zero => f.write_str("0"),
        }
    }
}

impl FromStr for DyadicValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        match t {
            "0" => return Ok(DyadicValue::Zero),
            "1" => return Ok(DyadicValue::ONE),
            _ => {}
        }
        t.strip_prefix("2^-")
            .and_then(|e| e.parse::<u32>().ok())
            .map(DyadicValue::Pow)
            .ok_or_else(|| Error::InvalidDyadic(s.to_owned()))
    }
}

impl Serialize for DyadicValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DyadicValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact nonnegative dyadic rational `num / 2^exp`, kept in lowest terms.
/// Used where certificate bounds are summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: u128,
    exp: u32,
}

impl DyadicRational {
    pub const ZERO: DyadicRational = DyadicRational { num: 0, exp: 0 };

    pub fn new(num: u128, exp: u32) -> Self {
        let mut r = DyadicRational { num, exp };
        if num == 0 {
            return Self::ZERO;
        }
        while r.exp > 0 && r.num % 2 == 0 {
            r.num /= 2;
            r.exp -= 1;
        }
        r
    }

    fn scaled(self, exp: u32) -> u128 {
        self.num << (exp - self.exp)
    }

    pub fn add(self, other: Self) -> Self {
        let e = self.exp.max(other.exp);
        DyadicRational::new(self.scaled(e) + other.scaled(e), e)
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// The least `2^-j` (or zero) that is at least this value, when it is
    /// at most one.
    pub fn ceil_dyadic(self) -> Option<DyadicValue> {
        if self.num == 0 {
            return Some(DyadicValue::Zero);
        }
        let bits = 128 - self.num.leading_zeros();
        // self lies in [2^(bits-1-exp), 2^(bits-exp))
        let power_of_two = self.num.is_power_of_two();
        let top = if power_of_two { bits - 1 } else { bits } as i64 - self.exp as i64;
        (top <= 0).then(|| DyadicValue::Pow((-top) as u32))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled(e).cmp(&other.scaled(e))
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<DyadicValue> for DyadicRational {
    fn from(v: DyadicValue) -> Self {
        v.to_rational()
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for DyadicRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidDyadic(s.to_owned());
        match s.split_once("/2^") {
            Some((n, e)) => Ok(DyadicRational::new(
                n.parse().map_err(|_| bad())?,
                e.parse().map_err(|_| bad())?,
            )),
            None => Ok(DyadicRational::new(s.parse().map_err(|_| bad())?, 0)),
        }
    }
}

impl<'de> Deserialize<'de> for DyadicRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
