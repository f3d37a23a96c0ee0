use serde::{Deserialize, Serialize};

use super::bits::Bits;
use super::dyadic::DyadicValue;
use super::transducer::Transducer;
use crate::error::{Error, Result};

/// Bounds `lower <= d(f,g) <= upper` on the uniform distance, decided on the
/// depth-`depth_used` input cylinders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCertificate {
    pub upper: DyadicValue,
    pub lower: DyadicValue,
    pub depth_used: usize,
    /// Input cylinder on which the images provably differ at `lower`.
    pub witness: Option<Bits>,
}

impl DistanceCertificate {
    pub fn is_tight(&self) -> bool {
        self.upper == self.lower
    }
}

/// On each depth-`depth` cylinder the two output words either disagree at
/// some index `i` (so every point there is at distance exactly `2^-i`) or
/// agree on their common length `m` (distance at most `2^-m`).
pub fn sup_distance(f: &Transducer, g: &Transducer, depth: usize) -> Result<DistanceCertificate> {
    if depth > f.max_depth || depth > g.max_depth {
        return Err(Error::PrecisionUnavailable(depth));
    }
    if f.rule == g.rule {
        return Ok(DistanceCertificate {
            upper: DyadicValue::Zero,
            lower: DyadicValue::Zero,
            depth_used: depth,
            witness: None,
        });
    }
    let mut upper = DyadicValue::Zero;
    let mut lower = DyadicValue::Zero;
    let mut witness = None;
    for w in Bits::all(depth) {
        let a = f.image(&w);
        let b = g.image(&w);
        match a.first_disagreement(&b) {
            Some(i) => {
                let v = DyadicValue::Pow(i as u32);
                upper = upper.max(v);
                if v > lower {
                    lower = v;
                    witness = Some(w);
                }
            }
            None => upper = upper.max(DyadicValue::Pow(a.len().min(b.len()) as u32)),
        }
    }
    Ok(DistanceCertificate {
        upper,
        lower,
        depth_used: depth,
        witness,
    })
}

/// The largest `δ = 2^-m` with `δ < ε/2` such that inputs agreeing on `m`
/// bits have images agreeing on more than the bits `ε/2` allows; this is the
/// least `m >= e+2` with `ρ(m) >= e+2` for `ε = 2^-e`.
pub fn modulus_delta(f: &Transducer, epsilon: DyadicValue) -> Result<DyadicValue> {
    let e = epsilon
        .exponent()
        .ok_or_else(|| Error::InvalidConfig("epsilon must be positive".into()))? as usize;
    let need = e + 2;
    let m = f.resolution_depth(need)?.max(need);
    Ok(DyadicValue::Pow(m as u32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_distance_examples() {
        let full2 = Transducer::shift(8);
        let c = sup_distance(&full2, &full2, 4).unwrap();
        assert_eq!((c.upper, c.lower), (DyadicValue::Zero, DyadicValue::Zero));

        let c = sup_distance(&Transducer::identity(8), &full2, 3).unwrap();
        assert_eq!(c.lower, DyadicValue::ONE);
        assert_eq!(c.upper, DyadicValue::ONE);
        // first lexicographic cylinder where the images differ at index 0
        assert_eq!(c.witness.unwrap().to_string(), "010");

        let flipped = Transducer::compose("flip-shift", vec![full2.clone(), Transducer::bitflip(8)]);
        let c = sup_distance(&full2, &flipped, 3).unwrap();
        assert_eq!((c.upper, c.lower), (DyadicValue::ONE, DyadicValue::ONE));
    }

    #[test]
    fn moduli() {
        let e = |j| DyadicValue::Pow(j);
        assert_eq!(modulus_delta(&Transducer::shift(16), e(3)).unwrap(), e(6));
        assert_eq!(modulus_delta(&Transducer::identity(16), e(1)).unwrap(), e(3));
        assert_eq!(modulus_delta(&Transducer::constant(0, 16), e(5)).unwrap(), e(7));
        assert!(modulus_delta(&Transducer::shift(4), e(3)).is_err());
    }
}
