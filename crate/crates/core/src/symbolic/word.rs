use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

/// Index of a symbol in its alphabet. The index order is the declared symbol
/// order used for every lexicographic tie-break.
pub type Symbol = u16;

/// A finite word over an indexed alphabet.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &[Symbol]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn render(&self, labels: &[String]) -> String {
        render_symbols(&self.0, labels)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Joins labels; single-character alphabets render without separators.
pub fn render_symbols(symbols: &[Symbol], labels: &[String]) -> String {
    let compact = labels.iter().all(|l| l.chars().count() == 1);
    let parts: Vec<&str> = symbols
        .iter()
        .map(|&s| labels.get(s as usize).map(String::as_str).unwrap_or("?"))
        .collect();
    if compact {
        parts.concat()
    } else {
        parts.join(" ")
    }
}

/// `w` is `j`-periodic when `w[i] == w[i + j]` wherever both sides exist.
pub fn is_periodic(w: &[Symbol], j: usize) -> bool {
    j > 0 && w.iter().zip(w.iter().skip(j)).all(|(a, b)| a == b)
}

/// Least `j` with `w` being `j`-periodic (at most `w.len()`).
pub fn least_period(w: &[Symbol]) -> usize {
    (1..=w.len().max(1))
        .find(|&j| is_periodic(w, j))
        .unwrap_or(w.len().max(1))
}

/// Least `j < bound` with `w` being `j`-periodic, if any.
pub fn small_period(w: &[Symbol], bound: usize) -> Option<usize> {
    (1..bound).find(|&j| is_periodic(w, j))
}

/// Lexicographically least rotation of a cyclic word.
pub fn least_rotation(w: &[Symbol]) -> Vec<Symbol> {
    let n = w.len();
    (0..n)
        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Position of `needle` inside `hay`, if it occurs.
pub fn find_factor(hay: &[Symbol], needle: &[Symbol]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    if needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodicity() {
        assert!(is_periodic(&[0, 1, 0, 1, 0], 2));
        assert!(!is_periodic(&[0, 1, 1, 0], 2));
        assert_eq!(least_period(&[0, 0, 0]), 1);
        assert_eq!(least_period(&[0, 1, 2, 0, 1]), 3);
        assert_eq!(small_period(&[0, 1, 2, 0, 1], 3), None);
        // a word no longer than j is vacuously j-periodic
        assert!(is_periodic(&[0, 1], 2));
    }

    #[test]
    fn rotations() {
        assert_eq!(least_rotation(&[1, 0, 0]), vec![0, 0, 1]);
        assert_eq!(least_rotation(&[1, 0, 1, 0]), vec![0, 1, 0, 1]);
    }

    #[test]
    fn factors() {
        assert_eq!(find_factor(&[0, 1, 0, 0], &[0, 0]), Some(2));
        assert_eq!(find_factor(&[0, 1], &[1, 1]), None);
    }
}
