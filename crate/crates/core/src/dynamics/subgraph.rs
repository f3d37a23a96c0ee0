use serde::{Deserialize, Serialize};

use super::dyn_graph::{dynamics_graph, exact_depth, DynGraph};
use crate::cantor::{modulus_delta, CPartition, DyadicRational, DyadicValue, Transducer};
use crate::error::{Error, Result};

/// `G(g, P) ⊆ G(f, P)` over a partition fine enough for `ε`, which bounds
/// `d(f, g) < ε`: for `x` in `U` with `g(x)` in `U'`, some `x'` in `U` has
/// `f(x')` in `U'`, so `d(f(x), g(x)) <= d(f(x), f(x')) + diam(U') < ε/2 + mesh`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphCertificate {
    pub f_graph: DynGraph,
    pub g_graph: DynGraph,
    pub epsilon: DyadicValue,
    /// `δ(f, ε)`, which the mesh does not exceed.
    pub delta: DyadicValue,
    pub mesh: DyadicValue,
    /// `ε/2 + mesh`, the pointwise bound when the inclusion holds.
    pub bound: DyadicRational,
    pub holds: bool,
    pub missing_edges: Vec<(String, String)>,
}

pub fn subgraph_certificate(
    f: &Transducer,
    g: &Transducer,
    p: &CPartition,
    epsilon: DyadicValue,
) -> Result<SubgraphCertificate> {
    let delta = modulus_delta(f, epsilon)?;
    if p.mesh() > delta {
        return Err(Error::MeshTooCoarse {
            mesh: p.mesh(),
            required: delta,
        });
    }
    let depth = exact_depth(f, p)?.max(exact_depth(g, p)?);
    let f_graph = dynamics_graph(f, p, depth)?;
    let g_graph = dynamics_graph(g, p, depth)?;
    Ok(compare(f_graph, g_graph, epsilon, delta))
}

pub(crate) fn compare(
    f_graph: DynGraph,
    g_graph: DynGraph,
    epsilon: DyadicValue,
    delta: DyadicValue,
) -> SubgraphCertificate {
    let missing_edges: Vec<(String, String)> = g_graph
        .graph
        .edges()
        .filter(|&(u, v)| !f_graph.graph.has_edge(u, v))
        .map(|(u, v)| {
            (
                g_graph.graph.label(u).to_owned(),
                g_graph.graph.label(v).to_owned(),
            )
        })
        .collect();
    let mesh = f_graph.partition.mesh();
    SubgraphCertificate {
        bound: epsilon.half().to_rational().add(mesh.to_rational()),
        holds: missing_edges.is_empty() && f_graph.partition == g_graph.partition,
        f_graph,
        g_graph,
        epsilon,
        delta,
        mesh,
        missing_edges,
    }
}

impl SubgraphCertificate {
    /// The recorded inequality chain, in words.
    pub fn chain(&self) -> String {
        format!(
            "d(f(x),g(x)) <= {} + {} = {} < {}",
            self.epsilon.half(),
            self.mesh,
            self.bound,
            self.epsilon
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::depth_partition;

    #[test]
    fn equal_maps_hold() {
        let f = Transducer::shift(16);
        let c = subgraph_certificate(&f, &f, &depth_partition(6).unwrap(), DyadicValue::Pow(3))
            .unwrap();
        assert!(c.holds);
        assert!(c.bound < DyadicValue::Pow(3).to_rational());
        assert_eq!(c.chain(), "d(f(x),g(x)) <= 2^-4 + 2^-6 = 5/2^6 < 2^-3");
    }

    #[test]
    fn odometer_is_not_inside_the_de_bruijn_graph() {
        let c = subgraph_certificate(
            &Transducer::shift(16),
            &Transducer::odometer(16),
            &depth_partition(6).unwrap(),
            DyadicValue::Pow(3),
        )
        .unwrap();
        assert!(!c.holds);
        assert!(c
            .missing_edges
            .contains(&("000000".to_owned(), "100000".to_owned())));
    }

    #[test]
    fn coarse_mesh_is_refused() {
        let err = subgraph_certificate(
            &Transducer::shift(16),
            &Transducer::shift(16),
            &depth_partition(3).unwrap(),
            DyadicValue::Pow(3),
        );
        match err {
            Err(Error::MeshTooCoarse { mesh, required }) => {
                assert_eq!((mesh, required), (DyadicValue::Pow(3), DyadicValue::Pow(6)))
            }
            other => panic!("{other:?}"),
        }
    }
}
