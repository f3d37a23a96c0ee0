use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A finite binary word naming the cylinder of all sequences extending it.
/// Serialized as a string of `0`/`1` characters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits(Vec<u8>);

impl Bits {
    pub fn new(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Bits(bits)
    }

    pub fn empty() -> Self {
        Bits(Vec::new())
    }

    pub fn zeros(n: usize) -> Self {
        Bits(vec![0; n])
    }

    /// The `n`-bit word spelling `value` most-significant-bit first.
    pub fn from_index(value: u64, n: usize) -> Self {
        Bits((0..n).map(|i| ((value >> (n - 1 - i)) & 1) as u8).collect())
    }

    /// All words of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Bits> {
        assert!(n < 64, "depth {n} is too large to enumerate");
        (0..1u64 << n).map(move |v| Bits::from_index(v, n))
    }

    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.0
    }

    pub fn push(&mut self, b: u8) {
        self.0.push(b);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }

    pub fn child(&self, b: u8) -> Bits {
        let mut v = self.0.clone();
        v.push(b);
        Bits(v)
    }

    pub fn concat(&self, tail: &[u8]) -> Bits {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        Bits(v)
    }

    pub fn prefix(&self, n: usize) -> Bits {
        Bits(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &[u8]) -> bool {
        other.starts_with(&self.0)
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &[u8]) -> usize {
        self.0.iter().zip(other).take_while(|(a, b)| a == b).count()
    }

    /// Least index where the two words differ, if they differ within the
    /// shorter length.
    pub fn first_disagreement(&self, other: &[u8]) -> Option<usize> {
        self.0.iter().zip(other).position(|(a, b)| a != b)
    }
}

impl Deref for Bits {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Bits {
    fn from(v: Vec<u8>) -> Self {
        Bits::new(v)
    }
}

impl From<&[u8]> for Bits {
    fn from(v: &[u8]) -> Self {
        Bits::new(v.to_vec())
    }
}

impl FromStr for Bits {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidBits(s.to_owned())),
            })
            .collect::<Result<Vec<u8>, Error>>()
            .map(Bits)
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl Serialize for Bits {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bits {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a bit string; panics on bad input. Meant for literals.
pub fn bits(s: &str) -> Bits {
    s.parse().expect("bit literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let b = bits("0110");
        assert_eq!(b.to_string(), "0110");
        assert_eq!(b.to_index(), 6);
        assert_eq!(Bits::from_index(6, 4), b);
        assert!("012".parse::<Bits>().is_err());
        assert_eq!(serde_json::to_string(&b).unwrap(), "\"0110\"");
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let all: Vec<String> = Bits::all(2).map(|b| b.to_string()).collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
        assert_eq!(Bits::all(0).count(), 1);
    }

    #[test]
    fn prefixes() {
        let a = bits("0101");
        assert!(bits("01").is_prefix_of(&a));
        assert_eq!(a.common_prefix_len(&bits("0111")), 2);
        assert_eq!(a.first_disagreement(&bits("0111")), Some(2));
        assert_eq!(a.first_disagreement(&bits("01")), None);
    }
}
