use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::dyn_graph::dynamics_graph_auto;
use crate::cantor::{depth_partition, Bits, Transducer};
use crate::error::{Error, Result};
use crate::symbolic::{gcd, period_spectrum, DirectedGraph};

/// Deepest partition whose dynamics graph bounds the periods from above.
const POSSIBLE_DEPTH_LIMIT: usize = 10;
/// Deepest input depth for return-time witnesses.
const WITNESS_DEPTH_LIMIT: usize = 16;
/// Cylinders up to this depth are tried as identity witnesses.
const WITNESS_CYLINDER_DEPTH: usize = 3;

/// `g^period` fixes every depth-`depth` subcylinder of `[cylinder]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityWitness {
    pub cylinder: Bits,
    pub period: usize,
    pub depth: usize,
}

/// Periods up to `bound`: `certain` ones are witnessed, anything outside
/// `possible` is excluded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumBounds {
    pub bound: usize,
    pub certain: BTreeSet<usize>,
    pub possible: BTreeSet<usize>,
    pub fixed_point: bool,
    /// How the bounds were obtained.
    pub evidence: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<IdentityWitness>,
}

impl SpectrumBounds {
    /// The exact spectrum of a vertex shift.
    pub fn from_graph(g: &DirectedGraph, bound: usize) -> Self {
        let s = period_spectrum(g, bound);
        SpectrumBounds {
            bound,
            fixed_point: g.has_self_loop(),
            certain: s.present.clone(),
            possible: s.present,
            evidence: vec![format!("closed paths of a {}-vertex graph", g.vertex_count())],
            witnesses: Vec::new(),
        }
    }

    /// Bounds for a transducer: periods are possible only if they survive in
    /// every `Σ(g, V_d)`, and certain when some shallow cylinder returns to
    /// itself identically under `g^n` at the deepest checked depth.
    pub fn from_transducer(g: &Transducer, bound: usize, max_depth: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidConfig("period bound must be positive".into()));
        }
        let mut evidence = Vec::new();
        let depth = max_depth.min(g.max_depth).min(WITNESS_DEPTH_LIMIT);
        let witnesses = identity_witnesses(g, bound, depth);
        let mut certain = BTreeSet::new();
        for w in &witnesses {
            certain.extend((w.period..=bound).step_by(w.period));
            evidence.push(format!(
                "g^{} = identity on [{}] at depth {}",
                w.period, w.cylinder, w.depth
            ));
        }
        let mut possible: BTreeSet<usize> = (1..=bound).collect();
        for d in 1..=max_depth.min(POSSIBLE_DEPTH_LIMIT) {
            let p = depth_partition(d)?;
            let graph = match dynamics_graph_auto(g, &p) {
                Ok(dg) => dg.graph,
                Err(Error::PrecisionUnavailable(_)) => break,
                Err(e) => return Err(e),
            };
            let s = period_spectrum(&graph, bound);
            possible.retain(|n| s.present.contains(n));
            evidence.push(format!("periods of G(g, depth {d}) intersected"));
            if possible.is_subset(&certain) {
                break;
            }
        }
        possible.extend(certain.iter().copied());
        Ok(SpectrumBounds {
            bound,
            fixed_point: certain.contains(&1),
            certain,
            possible,
            evidence,
            witnesses,
        })
    }
}

/// Per word of depth `depth`, the least `n <= bound` with `g^n(w)` agreeing
/// with `w` on all `depth` bits; combined per shallow cylinder by lcm.
fn identity_witnesses(g: &Transducer, bound: usize, depth: usize) -> Vec<IdentityWitness> {
    let returns: Vec<Option<usize>> = Bits::all(depth)
        .map(|w| {
            let mut cur = w.clone();
            for n in 1..=bound {
                cur = g.image(&cur);
                if cur.len() < depth {
                    return None;
                }
                if cur[..depth] == w[..] {
                    return Some(n);
                }
            }
            None
        })
        .collect();
    let mut out: Vec<IdentityWitness> = Vec::new();
    for cd in 0..=WITNESS_CYLINDER_DEPTH.min(depth) {
        for u in Bits::all(cd) {
            let lo = (u.to_index() as usize) << (depth - cd);
            let hi = lo + (1 << (depth - cd));
            let mut period = 1usize;
            let mut ok = true;
            for r in &returns[lo..hi] {
                match r {
                    Some(n) => {
                        period = period / gcd(period, *n) * n;
                        if period > bound {
                            ok = false;
                            break;
                        }
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            // keep only witnesses not implied by a coarser one
            if ok && !out.iter().any(|w| u.starts_with(&w.cylinder) && period % w.period == 0) {
                out.push(IdentityWitness {
                    cylinder: u,
                    period,
                    depth,
                });
            }
        }
    }
    out
}

/// Outcome of comparing periods of a source against a target up to `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerconVerdict {
    pub bound: usize,
    pub holds_up_to_bound: bool,
    /// Certain source periods the target cannot have, minimal under
    /// divisibility.
    pub violations: Vec<usize>,
    /// Possible but unwitnessed source periods the target cannot have.
    pub unresolved: Vec<usize>,
    /// The target has a fixed point, hence every period.
    pub shortcut: bool,
    pub source: SpectrumBounds,
    pub target: SpectrumBounds,
}

pub fn per_containment(source: SpectrumBounds, target: SpectrumBounds) -> PerconVerdict {
    let bound = source.bound.min(target.bound);
    if target.fixed_point {
        return PerconVerdict {
            bound,
            holds_up_to_bound: true,
            violations: Vec::new(),
            unresolved: Vec::new(),
            shortcut: true,
            source,
            target,
        };
    }
    let mut violations: Vec<usize> = Vec::new();
    let mut unresolved = Vec::new();
    for n in 1..=bound {
        if target.certain.contains(&n) || !source.possible.contains(&n) {
            continue;
        }
        if target.possible.contains(&n) {
            unresolved.push(n);
        } else if source.certain.contains(&n) {
            if !violations.iter().any(|v| n % v == 0) {
                violations.push(n);
            }
        } else {
            unresolved.push(n);
        }
    }
    PerconVerdict {
        bound,
        holds_up_to_bound: violations.is_empty() && unresolved.is_empty(),
        violations,
        unresolved,
        shortcut: false,
        source,
        target,
    }
}
