use serde::{Deserialize, Serialize};

use super::dyn_graph::{dynamics_graph_auto, DynGraph};
use super::subgraph::{compare, SubgraphCertificate};
use super::zigzag::SftModel;
use crate::cantor::{
    clopen_matching, modulus_delta, CPartition, ClopenSet, CylinderRecoding, DyadicValue,
    Transducer,
};
use crate::error::{Error, Result};
use crate::symbolic::{cantor_check, CantorVerdict, MixingCertificate, Sft, Symbol};

/// One resolution of the symbolic approximation of `f`: the vertex shift of
/// `G(f, W)` and a homeomorphism `ψ` from its zigzag coordinates onto Cantor
/// space sending each time-0 cylinder `C_0(u)` onto the part `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SftStage {
    pub index: usize,
    pub dyn_graph: DynGraph,
    pub mixing: MixingCertificate,
    pub cantor: CantorVerdict,
    pub psi: Transducer,
    /// `G(ψ∘σ∘ψ⁻¹, W) = G(f, W)`.
    pub conjugate_graph_equal: bool,
    /// Present when `W` is fine enough for some `ε`; the finest such `ε`.
    pub certificate: Option<SubgraphCertificate>,
}

impl SftStage {
    pub fn sft(&self) -> Sft {
        Sft::new(self.dyn_graph.graph.clone())
    }

    pub fn model(&self) -> SftModel {
        SftModel::new(self.dyn_graph.graph.clone())
    }

    /// `ψ∘σ∘ψ⁻¹` on Cantor space.
    pub fn conjugate(&self) -> Result<Transducer> {
        let sigma = Transducer::sft_shift("sigma", self.model(), self.psi.max_depth);
        Ok(Transducer::compose(
            format!("psi{}∘sigma∘psi{}^-1", self.index, self.index),
            vec![self.psi.inverse()?, sigma, self.psi.clone()],
        ))
    }
}

/// `ψ` matching each cylinder code `[code(u)]` with the part `u`.
pub fn vertex_conjugator(
    model: &SftModel,
    p: &CPartition,
    name: &str,
    max_depth: usize,
) -> Result<Transducer> {
    let pieces = p
        .parts()
        .iter()
        .enumerate()
        .map(|(u, part)| {
            clopen_matching(&ClopenSet::cylinder(model.cylinder_code(u as Symbol)), part)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Transducer::recoding(
        name,
        CylinderRecoding::merge(pieces)?,
        max_depth,
    ))
}

/// Finest `ε = 2^-e` with `δ(f, ε) >= mesh(p)`.
fn finest_epsilon(f: &Transducer, p: &CPartition) -> Option<DyadicValue> {
    let mut best = None;
    for e in 0..=f.max_depth as u32 {
        match modulus_delta(f, DyadicValue::Pow(e)) {
            Ok(delta) if delta >= p.mesh() => best = Some(DyadicValue::Pow(e)),
            _ => break,
        }
    }
    best
}

pub fn sft_approximation(f: &Transducer, partitions: &[CPartition]) -> Result<Vec<SftStage>> {
    for w in partitions.windows(2) {
        if w[1].mesh() >= w[0].mesh() {
            return Err(Error::InvalidPartition("meshes must strictly decrease".into()));
        }
    }
    partitions
        .iter()
        .enumerate()
        .map(|(i, p)| sft_stage(f, p, i + 1))
        .collect()
}

pub fn sft_stage(f: &Transducer, p: &CPartition, index: usize) -> Result<SftStage> {
    let dyn_graph = dynamics_graph_auto(f, p)?;
    let sft = Sft::new(dyn_graph.graph.clone());
    let mixing = sft.mixing();
    if !mixing.primitive {
        return Err(Error::ChainMixingUnverified(index));
    }
    let cantor = cantor_check(&sft);
    if !cantor.cantor {
        return Err(Error::NotCantor(index));
    }
    let model = SftModel::new(dyn_graph.graph.clone());
    let psi = vertex_conjugator(&model, p, &format!("psi{index}"), f.max_depth)?;
    let mut stage = SftStage {
        index,
        dyn_graph,
        mixing,
        cantor,
        psi,
        conjugate_graph_equal: false,
        certificate: None,
    };
    let conj = stage.conjugate()?;
    let conj_graph = dynamics_graph_auto(&conj, p)?;
    stage.conjugate_graph_equal = conj_graph.graph == stage.dyn_graph.graph;
    stage.certificate = finest_epsilon(f, p).map(|eps| {
        let delta = modulus_delta(f, eps).expect("checked above");
        compare(stage.dyn_graph.clone(), conj_graph, eps, delta)
    });
    Ok(stage)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{depth_partition, Bits};

    #[test]
    fn full_shift_gives_de_bruijn_stages() {
        let f = Transducer::shift(16);
        let parts: Vec<_> = (1..=3).map(|k| depth_partition(k).unwrap()).collect();
        let stages = sft_approximation(&f, &parts).unwrap();
        for (k, s) in (1..=3).zip(&stages) {
            assert_eq!(s.dyn_graph.graph.vertex_count(), 1 << k);
            assert_eq!(s.dyn_graph.graph.edge_count(), 1 << (k + 1));
            assert!(s.mixing.primitive);
            assert_eq!(s.mixing.exponent, Some(k));
            assert!(s.conjugate_graph_equal);
            // code(u) = u on a full de Bruijn graph, so psi is the identity
            for w in Bits::all(6) {
                assert_eq!(s.psi.image(&w), w);
            }
        }
        assert!(stages[0].certificate.is_none());
        assert_eq!(stages[2].certificate.as_ref().unwrap().epsilon, DyadicValue::Pow(0));
    }

    #[test]
    fn odometer_and_identity_are_not_chain_mixing() {
        let parts = [depth_partition(1).unwrap()];
        assert!(matches!(
            sft_approximation(&Transducer::odometer(16), &parts),
            Err(Error::ChainMixingUnverified(1))
        ));
        assert!(matches!(
            sft_approximation(&Transducer::identity(16), &parts),
            Err(Error::ChainMixingUnverified(1))
        ));
    }

    #[test]
    fn meshes_must_decrease() {
        let p = depth_partition(2).unwrap();
        assert!(sft_approximation(&Transducer::shift(16), &[p.clone(), p]).is_err());
    }
}
