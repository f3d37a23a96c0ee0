use serde::{Deserialize, Serialize};

use super::graph::DirectedGraph;
use super::mixing::{mixing_certificate, MixingCertificate};
use super::word::{Symbol, Word};

/// The two-sided vertex shift of a graph: bi-infinite walks along its edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sft {
    graph: DirectedGraph,
}

/// The cylinder `C_m(u)`: points reading `u` from coordinate `m` onward.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoSidedCylinder {
    pub start: i64,
    pub base: Word,
}

impl TwoSidedCylinder {
    pub fn is_nonempty_in(&self, sft: &Sft) -> bool {
        !self.base.is_empty() && sft.graph().is_path(&self.base)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorVerdict {
    pub cantor: bool,
    pub reason: String,
}

impl Sft {
    pub fn new(graph: DirectedGraph) -> Self {
        Sft { graph }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn into_graph(self) -> DirectedGraph {
        self.graph
    }

    pub fn mixing(&self) -> MixingCertificate {
        mixing_certificate(&self.graph)
    }

    pub fn language(&self, len: usize) -> Vec<Word> {
        sft_language(self, len)
    }

    pub fn contains_word(&self, w: &[Symbol]) -> bool {
        self.graph.is_path(w)
    }
}

/// All words of length `len` (walks on `len` vertices), in lexicographic order.
pub fn sft_language(s: &Sft, len: usize) -> Vec<Word> {
    let g = s.graph();
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    let mut stack: Vec<Symbol> = Vec::with_capacity(len);
    fn rec(g: &DirectedGraph, len: usize, stack: &mut Vec<Symbol>, out: &mut Vec<Word>) {
        if stack.len() == len {
            out.push(Word::from(stack.as_slice()));
            return;
        }
        let next: Vec<Symbol> = match stack.last() {
            None => (0..g.vertex_count() as Symbol).collect(),
            Some(&u) => g.successors(u).to_vec(),
        };
        for v in next {
            stack.push(v);
            rec(g, len, stack, out);
            stack.pop();
        }
    }
    rec(g, len, &mut stack, &mut out);
    out
}

/// Whether the shift is mixing and not a single point, which makes it a
/// Cantor space.
pub fn cantor_check(s: &Sft) -> CantorVerdict {
    let cert = s.mixing();
    if !cert.primitive {
        return CantorVerdict {
            cantor: false,
            reason: match cert.reason {
                Some(super::NonMixingReason::Periodic { period }) => {
                    format!("not mixing: every cycle length is a multiple of {period}")
                }
                _ => "not mixing: graph is not strongly connected".into(),
            },
        };
    }
    // primitive on one vertex means a single loop, i.e. one fixed point
    if s.graph().vertex_count() < 2 {
        return CantorVerdict {
            cantor: false,
            reason: "single point".into(),
        };
    }
    CantorVerdict {
        cantor: true,
        reason: format!(
            "mixing with exponent {} and {} words of length 2",
            cert.exponent.unwrap_or(0),
            s.graph().edge_count()
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::build_graph;

    fn gm() -> Sft {
        Sft::new(build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]).unwrap())
    }

    fn words(s: &Sft, len: usize) -> Vec<String> {
        s.language(len)
            .iter()
            .map(|w| s.graph().render(w))
            .collect()
    }

    #[test]
    fn golden_mean_language() {
        assert_eq!(words(&gm(), 2), ["aa", "ab", "ba"]);
        assert_eq!(words(&gm(), 3), ["aaa", "aab", "aba", "baa", "bab"]);
    }

    #[test]
    fn single_loop_language() {
        let s = Sft::new(build_graph(["a"], [("a", "a")]).unwrap());
        assert_eq!(words(&s, 5), ["aaaaa"]);
        let v = cantor_check(&s);
        assert!(!v.cantor);
        assert_eq!(v.reason, "single point");
    }

    #[test]
    fn cantor_verdicts() {
        assert!(cantor_check(&gm()).cantor);
        let c2 = Sft::new(build_graph(["a", "b"], [("a", "b"), ("b", "a")]).unwrap());
        let v = cantor_check(&c2);
        assert!(!v.cantor);
        assert!(v.reason.contains("multiple of 2"));
    }

    #[test]
    fn cylinders() {
        let s = gm();
        let c = TwoSidedCylinder {
            start: -3,
            base: Word::new(vec![0, 1, 0]),
        };
        assert!(c.is_nonempty_in(&s));
        let bad = TwoSidedCylinder {
            start: 0,
            base: Word::new(vec![1, 1]),
        };
        assert!(!bad.is_nonempty_in(&s));
    }
}
