use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::graph::DirectedGraph;
use super::matrix::BoolMatrix;
use super::mixing::mixing_certificate;

/// Periods `n <= bound` of the vertex shift, i.e. lengths of closed paths.
/// These are periods in the sense `σⁿt = t`, not least periods.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSpectrum {
    pub bound: usize,
    pub present: BTreeSet<usize>,
    /// Every `n` at or beyond this value is a period.
    pub full_tail_from: Option<usize>,
}

impl PeriodSpectrum {
    pub fn contains(&self, n: usize) -> bool {
        if n <= self.bound {
            self.present.contains(&n)
        } else {
            self.full_tail_from.is_some_and(|m| n >= m)
        }
    }

    pub fn has_fixed_point(&self) -> bool {
        self.present.contains(&1)
    }
}

pub fn period_spectrum(g: &DirectedGraph, bound: usize) -> PeriodSpectrum {
    let present = if g.successor_lists().iter().all(|s| s.len() == 1) {
        functional_periods(g, bound)
    } else {
        matrix_periods(g, bound)
    };
    let cert = mixing_certificate(g);
    PeriodSpectrum {
        bound,
        present,
        full_tail_from: cert.exponent.map(|e| e + g.vertex_count()),
    }
}

/// Every vertex has one successor, so the graph is a permutation and its
/// closed paths run around its cycles.
fn functional_periods(g: &DirectedGraph, bound: usize) -> BTreeSet<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut lengths = BTreeSet::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = g.successors(v as u16)[0] as usize;
            len += 1;
        }
        if v == start {
            lengths.insert(len);
        }
    }
    (1..=bound)
        .filter(|p| lengths.iter().any(|c| p % c == 0))
        .collect()
}

fn matrix_periods(g: &DirectedGraph, bound: usize) -> BTreeSet<usize> {
    let a = BoolMatrix::from_successors(g.successor_lists());
    let mut present = BTreeSet::new();
    let mut p = a.clone();
    for n in 1..=bound {
        if p.trace_nonzero() {
            present.insert(n);
        }
        if n < bound {
            p = p.mul(&a);
        }
    }
    present
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::build_graph;

    #[test]
    fn golden_mean_has_every_period() {
        let g = build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]).unwrap();
        let s = period_spectrum(&g, 6);
        assert_eq!(s.present, (1..=6).collect());
        assert_eq!(s.full_tail_from, Some(4));
        assert!(s.contains(100));
    }

    #[test]
    fn two_cycle_even_periods() {
        let g = build_graph(["a", "b"], [("a", "b"), ("b", "a")]).unwrap();
        let s = period_spectrum(&g, 6);
        assert_eq!(s.present, [2, 4, 6].into());
        assert_eq!(s.full_tail_from, None);
        assert!(!s.contains(101));
    }

    #[test]
    fn permutation_graphs_use_cycles() {
        let g = build_graph(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "a"), ("c", "d"), ("d", "e"), ("e", "c")],
        )
        .unwrap();
        assert_eq!(period_spectrum(&g, 7).present, [2, 3, 4, 6].into());
        assert_eq!(matrix_periods(&g, 7), [2, 3, 4, 6].into());
    }
}
