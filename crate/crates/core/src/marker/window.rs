use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbolic::{least_rotation, DirectedGraph, Symbol, Word};

/// How the allowed words of a window are known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WindowLanguage {
    /// Paths of a vertex shift.
    Graph { graph: DirectedGraph },
    /// Every allowed word of one fixed length; shorter words are their factors.
    Words { len: usize, words: BTreeSet<Word> },
}

/// A two-sided subshift known through its allowed words up to `max_len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubshiftWindow {
    pub labels: Vec<String>,
    /// Longest word length the window vouches for; `None` means unbounded.
    pub max_len: Option<usize>,
    pub language: WindowLanguage,
}

impl SubshiftWindow {
    pub fn from_graph(graph: DirectedGraph, max_len: Option<usize>) -> Self {
        SubshiftWindow {
            labels: graph.labels().to_vec(),
            max_len,
            language: WindowLanguage::Graph { graph },
        }
    }

    /// Window spanned by a fixed-length word set, which must be nonempty and
    /// uniform in length.
    pub fn from_words(labels: Vec<String>, words: BTreeSet<Word>) -> Result<Self> {
        let len = words
            .iter()
            .next()
            .map(|w| w.len())
            .ok_or_else(|| Error::InvalidConfig("empty window language".into()))?;
        if len == 0 || words.iter().any(|w| w.len() != len) {
            return Err(Error::InvalidConfig("window words must share a positive length".into()));
        }
        if words.iter().flat_map(|w| w.iter()).any(|&s| s as usize >= labels.len()) {
            return Err(Error::InvalidConfig("window word uses an unknown symbol".into()));
        }
        Ok(SubshiftWindow {
            labels,
            max_len: Some(len),
            language: WindowLanguage::Words { len, words },
        })
    }

    /// The window of a single periodic orbit.
    pub fn periodic_orbit(labels: Vec<String>, cycle: &[Symbol], len: usize) -> Result<Self> {
        let words = (0..cycle.len())
            .map(|r| (0..len).map(|i| cycle[(r + i) % cycle.len()]).collect::<Word>())
            .collect();
        Self::from_words(labels, words)
    }

    pub fn alphabet_size(&self) -> usize {
        self.labels.len()
    }

    pub fn graph(&self) -> Option<&DirectedGraph> {
        match &self.language {
            WindowLanguage::Graph { graph } => Some(graph),
            WindowLanguage::Words { .. } => None,
        }
    }

    pub fn ensure_len(&self, len: usize) -> Result<()> {
        match self.max_len {
            Some(m) if len > m => Err(Error::WindowTooShort {
                needed: len,
                available: m,
            }),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        if self.max_len.is_some_and(|m| w.len() > m) {
            return false;
        }
        match &self.language {
            WindowLanguage::Graph { graph } => {
                w.iter().all(|&s| (s as usize) < graph.vertex_count()) && graph.is_path(w)
            }
            WindowLanguage::Words { words, .. } => {
                w.is_empty()
                    || words
                        .iter()
                        .any(|x| x.windows(w.len()).any(|f| f == w))
            }
        }
    }

    /// Allowed words of length `len` in lexicographic order.
    pub fn words(&self, len: usize) -> Result<Vec<Word>> {
        self.ensure_len(len)?;
        Ok(match &self.language {
            WindowLanguage::Graph { graph } => graph_words(graph, len),
            WindowLanguage::Words { words, .. } => {
                let set: BTreeSet<Word> = words
                    .iter()
                    .flat_map(|w| w.windows(len.max(1)).map(Word::from))
                    .filter(|w| w.len() == len)
                    .collect();
                if len == 0 {
                    vec![Word::empty()]
                } else {
                    set.into_iter().collect()
                }
            }
        })
    }

    /// Whether the periodic point `…ppp…` lies in the subshift.
    pub fn has_periodic_point(&self, p: &[Symbol]) -> bool {
        if p.is_empty() {
            return false;
        }
        match &self.language {
            WindowLanguage::Graph { graph } => {
                let mut closed = p.to_vec();
                closed.push(p[0]);
                graph.is_path(&closed)
            }
            WindowLanguage::Words { len, words } => (0..p.len()).all(|r| {
                let w: Word = (0..*len).map(|i| p[(r + i) % p.len()]).collect();
                words.contains(&w)
            }),
        }
    }

    /// Orbits of least period `j`, each as its least rotation.
    pub fn periodic_orbits(&self, j: usize) -> Result<Vec<Word>> {
        if j == 0 {
            return Ok(Vec::new());
        }
        let mut out = BTreeSet::new();
        for w in self.words(j)? {
            if least_period_cyclic(&w) == j && self.has_periodic_point(&w) {
                out.insert(Word::new(least_rotation(&w)));
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// Least `d` dividing `|w|` with `w` invariant under rotation by `d`.
pub(crate) fn least_period_cyclic(w: &[Symbol]) -> usize {
    let n = w.len();
    (1..=n)
        .find(|&d| n % d == 0 && (0..n).all(|i| w[i] == w[(i + d) % n]))
        .unwrap_or(n)
}

fn graph_words(graph: &DirectedGraph, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if len == 0 {
        out.push(Word::empty());
        return out;
    }
    let mut stack: Vec<Symbol> = Vec::with_capacity(len);
    fn go(graph: &DirectedGraph, len: usize, stack: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        if stack.len() == len {
            out.push(Word::from(stack.as_slice()));
            return;
        }
        let next: Vec<Symbol> = match stack.last() {
            None => (0..graph.vertex_count() as Symbol).collect(),
            Some(&u) => graph.successors(u).to_vec(),
        };
        for s in next {
            stack.push(s);
            go(graph, len, stack, out);
            stack.pop();
        }
    }
    go(graph, len, &mut stack, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::build_graph;

    fn golden_mean() -> DirectedGraph {
        build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]).unwrap()
    }

    #[test]
    fn golden_mean_counts_are_fibonacci() {
        let w = SubshiftWindow::from_graph(golden_mean(), Some(31));
        let counts: Vec<usize> = (1..=8).map(|n| w.words(n).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 3, 5, 8, 13, 21, 34, 55]);
        assert!(matches!(w.words(32), Err(Error::WindowTooShort { .. })));
    }

    #[test]
    fn orbit_window_has_one_orbit() {
        let labels = ["0", "1", "2", "3"].map(String::from).to_vec();
        let w = SubshiftWindow::periodic_orbit(labels, &[0, 2, 1, 3], 8).unwrap();
        assert_eq!(w.words(5).unwrap().len(), 4);
        assert_eq!(w.periodic_orbits(4).unwrap(), vec![Word::new(vec![0, 2, 1, 3])]);
        assert!(w.periodic_orbits(2).unwrap().is_empty());
        assert!(w.contains(&[1, 3, 0]));
        assert!(!w.contains(&[1, 0]));
    }

    #[test]
    fn golden_mean_orbits() {
        let w = SubshiftWindow::from_graph(golden_mean(), None);
        assert_eq!(w.periodic_orbits(1).unwrap(), vec![Word::new(vec![0])]);
        assert_eq!(w.periodic_orbits(2).unwrap(), vec![Word::new(vec![0, 1])]);
        assert_eq!(w.periodic_orbits(3).unwrap(), vec![Word::new(vec![0, 0, 1])]);
    }
}
