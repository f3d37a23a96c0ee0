use serde::{Deserialize, Serialize};

use super::graph::DirectedGraph;
use super::matrix::BoolMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NonMixingReason {
    NotStronglyConnected,
    Periodic { period: usize },
}

/// Primitivity verdict for a vertex graph, equivalently topological mixing
/// of its vertex shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixingCertificate {
    pub primitive: bool,
    /// Least `N` with paths of every length `n >= N` joining every ordered pair.
    pub exponent: Option<usize>,
    /// gcd of the cycle lengths, reported when not primitive.
    pub witness_period: Option<usize>,
    pub reason: Option<NonMixingReason>,
    /// `(|V|-1)^2 + 1`, the classical upper bound on primitive exponents.
    pub wielandt_bound: usize,
}

impl MixingCertificate {
    pub fn within_wielandt_bound(&self) -> bool {
        self.exponent.is_none_or(|n| n <= self.wielandt_bound)
    }
}

pub fn wielandt_bound(n: usize) -> usize {
    (n - 1) * (n - 1) + 1
}

pub fn mixing_certificate(g: &DirectedGraph) -> MixingCertificate {
    let n = g.vertex_count();
    let bound = wielandt_bound(n);
    if !g.is_strongly_connected() {
        return MixingCertificate {
            primitive: false,
            exponent: None,
            witness_period: Some(cycle_gcd(g)),
            reason: Some(NonMixingReason::NotStronglyConnected),
            wielandt_bound: bound,
        };
    }
    let all: Vec<bool> = vec![true; n];
    let p = component_period(g, &all, 0);
    if p >= 2 {
        return MixingCertificate {
            primitive: false,
            exponent: None,
            witness_period: Some(p),
            reason: Some(NonMixingReason::Periodic { period: p }),
            wielandt_bound: bound,
        };
    }
    MixingCertificate {
        primitive: true,
        exponent: Some(primitive_exponent(g)),
        witness_period: None,
        reason: None,
        wielandt_bound: bound,
    }
}

/// Least `N` with `A^N` all-positive, for a primitive graph. Positivity is
/// monotone in the exponent once reached (no zero columns), so the first
/// positive power of two brackets the answer and a bisection pins it.
fn primitive_exponent(g: &DirectedGraph) -> usize {
    let a = BoolMatrix::from_successors(g.successor_lists());
    let mut hi = 1usize;
    let mut p = a.clone();
    while !p.is_positive() {
        p = p.mul(&p);
        hi *= 2;
    }
    let mut lo = hi / 2; // A^lo is not positive (or lo = 0)
    if hi == 1 {
        return 1;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if a.pow(mid).is_positive() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Period (gcd of cycle lengths) of the strongly connected component
/// containing `root`, restricted to vertices flagged in `member`.
fn component_period(g: &DirectedGraph, member: &[bool], root: u16) -> usize {
    let n = g.vertex_count();
    let mut level: Vec<Option<usize>> = vec![None; n];
    level[root as usize] = Some(0);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut p = 0usize;
    while let Some(u) = queue.pop_front() {
        let lu = level[u as usize].unwrap();
        for &v in g.successors(u) {
            if !member[v as usize] {
                continue;
            }
            match level[v as usize] {
                None => {
                    level[v as usize] = Some(lu + 1);
                    queue.push_back(v);
                }
                Some(lv) => p = gcd(p, (lu + 1).abs_diff(lv)),
            }
        }
    }
    p
}

/// gcd of all cycle lengths of the graph (over every nontrivial component).
fn cycle_gcd(g: &DirectedGraph) -> usize {
    let n = g.vertex_count();
    let mut assigned = vec![false; n];
    let mut p = 0;
    for v in 0..n {
        if assigned[v] {
            continue;
        }
        let fwd = g.reachable(v as u16, false);
        let bwd = g.reachable(v as u16, true);
        let member: Vec<bool> = fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect();
        for (i, m) in member.iter().enumerate() {
            if *m {
                assigned[i] = true;
            }
        }
        let has_cycle = member
            .iter()
            .enumerate()
            .any(|(i, m)| *m && g.successors(i as u16).iter().any(|&s| member[s as usize]));
        if has_cycle {
            p = gcd(p, component_period(g, &member, v as u16));
        }
    }
    p
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
