use serde::{Deserialize, Serialize};

use super::bits::Bits;
use super::dyadic::DyadicValue;
use super::transducer::Transducer;
use crate::error::{Error, Result};

/// A point of Cantor space given by a rule producing any finite prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum CantorPoint {
    /// `prefix` followed by `cycle` repeated forever.
    Periodic { prefix: Bits, cycle: Bits },
    /// The image of another point.
    Image {
        map: Box<Transducer>,
        point: Box<CantorPoint>,
    },
}

impl CantorPoint {
    pub fn eventually_periodic(prefix: Bits, cycle: Bits) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidBits("empty cycle".into()));
        }
        Ok(CantorPoint::Periodic { prefix, cycle })
    }

    /// Parses `p(c)` notation: `"01(10)"` is `0110101010...`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::InvalidBits(s.to_owned());
        let (prefix, rest) = s.split_once('(').ok_or_else(bad)?;
        let cycle = rest.strip_suffix(')').ok_or_else(bad)?;
        Self::eventually_periodic(prefix.parse()?, cycle.parse()?)
    }

    pub fn image(map: Transducer, point: CantorPoint) -> Self {
        CantorPoint::Image {
            map: Box::new(map),
            point: Box::new(point),
        }
    }

    pub fn prefix(&self, n: usize) -> Result<Bits> {
        match self {
            CantorPoint::Periodic { prefix, cycle } => Ok(Bits::new(
                (0..n)
                    .map(|i| {
                        if i < prefix.len() {
                            prefix[i]
                        } else {
                            cycle[(i - prefix.len()) % cycle.len()]
                        }
                    })
                    .collect(),
            )),
            CantorPoint::Image { map, point } => apply(map, point, n),
        }
    }

    pub fn bit(&self, i: usize) -> Result<u8> {
        Ok(self.prefix(i + 1)?[i])
    }
}

/// The first `p` bits of `f(x)`, exact.
pub fn apply(f: &Transducer, x: &CantorPoint, p: usize) -> Result<Bits> {
    for n in 0..=f.max_depth {
        let input = match x.prefix(n) {
            Ok(b) => b,
            Err(_) => break,
        };
        let out = f.image(&input);
        if out.len() >= p {
            return Ok(out.prefix(p));
        }
    }
    Err(Error::PrecisionUnavailable(p))
}

/// `d(x, y)` when the points differ within `depth` bits; otherwise the bound
/// `2^-depth`, flagged by `exact = false`.
pub fn point_distance(x: &CantorPoint, y: &CantorPoint, depth: usize) -> Result<(DyadicValue, bool)> {
    let a = x.prefix(depth)?;
    let b = y.prefix(depth)?;
    Ok(match a.first_disagreement(&b) {
        Some(i) => (DyadicValue::Pow(i as u32), true),
        None => (DyadicValue::Pow(depth as u32), false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_examples() {
        let x = CantorPoint::parse("0(1)").unwrap();
        assert_eq!(apply(&Transducer::shift(8), &x, 2).unwrap().to_string(), "11");
        let y = CantorPoint::parse("111(0)").unwrap();
        assert_eq!(apply(&Transducer::odometer(8), &y, 4).unwrap().to_string(), "0001");
        let z = CantorPoint::parse("1(10)").unwrap();
        assert_eq!(apply(&Transducer::identity(8), &z, 5).unwrap().to_string(), "11010");
        assert!(matches!(
            apply(&Transducer::shift(8), &x, 8),
            Err(Error::PrecisionUnavailable(8))
        ));
    }

    #[test]
    fn image_points_and_distance() {
        let x = CantorPoint::parse("(01)").unwrap();
        let fx = CantorPoint::image(Transducer::shift(12), x.clone());
        assert_eq!(fx.prefix(4).unwrap().to_string(), "1010");
        assert_eq!(fx.bit(0).unwrap(), 1);
        assert_eq!(point_distance(&x, &fx, 6).unwrap(), (DyadicValue::ONE, true));
        assert_eq!(point_distance(&x, &x, 6).unwrap(), (DyadicValue::Pow(6), false));
    }
}
