use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cantor::{Bits, CPartition, Transducer};
use crate::error::{Error, Result};
use crate::symbolic::{DirectedGraph, Symbol};

/// An input cylinder inside `from` whose image cylinder lies in `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWitness {
    pub from: usize,
    pub to: usize,
    pub input: Bits,
}

/// `G(f, U)`: vertices are the parts of `U`, with an edge `U -> U'` iff
/// `f(U)` meets `U'`, decided exactly on depth-`depth_used` cylinders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynGraph {
    pub graph: DirectedGraph,
    pub partition: CPartition,
    pub depth_used: usize,
    /// The lexicographically first input cylinder for every edge.
    pub witnesses: Vec<EdgeWitness>,
}

impl DynGraph {
    pub fn to_dot(&self, name: &str) -> String {
        self.graph.to_dot(name)
    }

    /// Re-checks every stored witness against `f` and the edge set.
    pub fn check_witnesses(&self, f: &Transducer) -> bool {
        let lookup = self.partition.lookup();
        self.witnesses.len() == self.graph.edge_count()
            && self.witnesses.iter().all(|w| {
                lookup.part_of(&w.input) == Some(w.from)
                    && lookup.part_of(&f.image(&w.input)) == Some(w.to)
                    && self.graph.has_edge(w.from as Symbol, w.to as Symbol)
            })
    }
}

/// Least input depth at which every image of a cylinder lands in one part.
pub fn exact_depth(f: &Transducer, p: &CPartition) -> Result<usize> {
    let m = p.max_depth();
    Ok(f.resolution_depth(m)?.max(m))
}

/// Builds `G(f, P)` at the given input depth. Every depth-`depth` image must
/// fall inside a single part, otherwise the precision is reported as
/// unavailable rather than padding edges.
pub fn dynamics_graph(f: &Transducer, p: &CPartition, depth: usize) -> Result<DynGraph> {
    if depth > f.max_depth || depth < p.max_depth() {
        return Err(Error::PrecisionUnavailable(depth));
    }
    let lookup = p.lookup();
    let mut edges: BTreeMap<(Symbol, Symbol), Bits> = BTreeMap::new();
    for w in Bits::all(depth) {
        let from = lookup.part_of(&w).expect("depth covers the partition");
        let to = lookup
            .part_of(&f.image(&w))
            .ok_or(Error::PrecisionUnavailable(p.max_depth()))?;
        edges.entry((from as Symbol, to as Symbol)).or_insert(w);
    }
    let graph = DirectedGraph::from_indexed(p.labels(), edges.keys().copied())?;
    let witnesses = edges
        .into_iter()
        .map(|((from, to), input)| EdgeWitness {
            from: from as usize,
            to: to as usize,
            input,
        })
        .collect();
    Ok(DynGraph {
        graph,
        partition: p.clone(),
        depth_used: depth,
        witnesses,
    })
}

/// `G(f, P)` at the least exact depth.
pub fn dynamics_graph_auto(f: &Transducer, p: &CPartition) -> Result<DynGraph> {
    dynamics_graph(f, p, exact_depth(f, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::depth_partition;

    fn edges(g: &DynGraph) -> Vec<(String, String)> {
        g.graph
            .edges()
            .map(|(u, v)| (g.graph.label(u).to_owned(), g.graph.label(v).to_owned()))
            .collect()
    }

    fn pairs(list: &[(&str, &str)]) -> Vec<(String, String)> {
        list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn shift_on_halves_is_complete() {
        let g = dynamics_graph(&Transducer::shift(8), &depth_partition(1).unwrap(), 2).unwrap();
        assert_eq!(edges(&g), pairs(&[("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")]));
        assert!(g.check_witnesses(&Transducer::shift(8)));
    }

    #[test]
    fn odometer_on_halves_is_two_cycle() {
        let g = dynamics_graph(&Transducer::odometer(8), &depth_partition(1).unwrap(), 2).unwrap();
        assert_eq!(edges(&g), pairs(&[("0", "1"), ("1", "0")]));
    }

    #[test]
    fn identity_has_only_loops() {
        let g = dynamics_graph(&Transducer::identity(8), &depth_partition(2).unwrap(), 2).unwrap();
        assert_eq!(g.graph.edge_count(), 4);
        assert!(g.graph.edges().all(|(u, v)| u == v));
    }

    #[test]
    fn unresolved_images_are_refused() {
        let err = dynamics_graph(&Transducer::shift(8), &depth_partition(2).unwrap(), 2);
        assert!(matches!(err, Err(Error::PrecisionUnavailable(2))));
        assert_eq!(exact_depth(&Transducer::shift(8), &depth_partition(2).unwrap()).unwrap(), 3);
    }

    #[test]
    fn constant_map_fails_degree_check() {
        let err = dynamics_graph_auto(&Transducer::constant(0, 8), &depth_partition(1).unwrap());
        assert!(matches!(err, Err(Error::DegreeViolation { .. })));
    }
}
