use serde::{Deserialize, Serialize};

use super::aperiodicity::{aperiodicity_evidence, AperiodicityEvidence};
use super::compose::{compose_certificates, CompositionBound};
use super::config::{PipelineConfig, Strictness};
use crate::cantor::{
    depth_partition, modulus_delta, sup_distance, Bits, ClopenSet, DistanceCertificate,
    DyadicRational, DyadicValue, Transducer,
};
use crate::dynamics::{
    conjugator_from_factor, factor_preimages, itinerary_map, per_containment, sft_stage,
    subgraph_certificate, FactorPreimages, ItineraryMap, PerconVerdict, SftStage,
    SpectrumBounds, SubgraphCertificate,
};
use crate::error::{Error, Result, ResultExt, Stage};
use crate::marker::{
    check_markers, coding_tables, search_markers, small_period_orbits, synthesize_code,
    target_spacing, BlockCode, CodeCheck, MarkerCheck,
};
use crate::symbolic::{period_spectrum, Symbol, Word};

/// Version tag of every JSON document the tool writes.
pub const SCHEMA: &str = "cantor-approx/1";

/// `h = ψ∘g∘ψ⁻¹` and `h⁻¹∘h = id`, checked word by word at every depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyCheck {
    pub max_depth: usize,
    pub words_checked: u64,
    pub identity: bool,
    pub bijective: bool,
    pub counterexample: Option<Bits>,
}

impl ConjugacyCheck {
    pub fn holds(&self) -> bool {
        self.identity && self.bijective
    }
}

/// Every artifact of one run, enough to replay each certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyResult {
    pub schema: String,
    pub config: PipelineConfig,
    pub f: Transducer,
    pub g: Transducer,
    /// `δ(f, ε)`.
    pub delta: DyadicValue,
    /// `W` is the depth partition of this depth.
    pub partition_depth: usize,
    pub stage: SftStage,
    pub mbar: usize,
    pub percon: PerconVerdict,
    pub word_targets: Vec<Word>,
    pub aperiodicity: AperiodicityEvidence,
    pub itinerary: ItineraryMap,
    pub marker_check: MarkerCheck,
    pub code: BlockCode,
    pub code_check: CodeCheck,
    pub preimages: FactorPreimages,
    pub psi_k: Transducer,
    pub psi_total: Transducer,
    pub h: Transducer,
    pub conjugacy: ConjugacyCheck,
    pub certificate: SubgraphCertificate,
    pub distance: DistanceCertificate,
    pub composition: CompositionBound,
    /// Certified upper bound on `d(h, f)`.
    pub upper: DyadicRational,
}

pub fn check_conjugacy(h: &Transducer, g: &Transducer, psi: &Transducer, max_depth: usize) -> Result<ConjugacyCheck> {
    let psi_inv = psi.inverse()?;
    let h_inv = h.inverse()?;
    let mut check = ConjugacyCheck {
        max_depth,
        words_checked: 0,
        identity: true,
        bijective: true,
        counterexample: None,
    };
    for n in 0..=max_depth {
        for w in Bits::all(n) {
            check.words_checked += 1;
            let a = h.image(&w);
            let b = psi.image(&g.image(&psi_inv.image(&w)));
            let back = h_inv.image(&a);
            let same = a == b;
            let undone = back.common_prefix_len(&w) == back.len().min(w.len());
            check.identity &= same;
            check.bijective &= undone;
            if !(same && undone) && check.counterexample.is_none() {
                check.counterexample = Some(w);
            }
        }
    }
    Ok(check)
}

/// Longest marker radius tried, as a multiple of the spacing.
const MARKER_RADIUS_FACTOR: usize = 1;

pub fn approximate(f: &Transducer, g: &Transducer, cfg: &PipelineConfig) -> Result<ConjugacyResult> {
    cfg.validate()?;
    if !g.is_homeomorphism() {
        return Err(Error::NotHomeomorphism.at(Stage::Aperiodicity));
    }
    let eps = cfg.epsilon;

    // resolution fine enough for ε
    let delta = modulus_delta(f, eps).at(Stage::Modulus)?;
    let partition_depth = delta.exponent().expect("δ is positive") as usize;
    let w_part = depth_partition(partition_depth).at(Stage::Partition)?;
    let stage = sft_stage(f, &w_part, 1).at(Stage::Mixing)?;
    let sigma = stage.sft();

    // one target word per vertex: every part of W must be visited
    let word_targets: Vec<Word> = (0..sigma.graph().vertex_count())
        .map(|u| Word::new(vec![u as Symbol]))
        .collect();
    let big_n = target_spacing(&sigma, &word_targets).at(Stage::WordTargets)?;
    let tail = period_spectrum(sigma.graph(), 1).full_tail_from.unwrap_or(0);
    let required = tail.max(big_n).max(8);
    let mbar = match cfg.mbar {
        Some(m) if m <= required => {
            return Err(Error::MbarTooSmall { given: m, required }.at(Stage::Percon))
        }
        Some(m) => m,
        None => required + 1,
    };

    // periodic points of g must be periods of Σ(f, W)
    let target = SpectrumBounds::from_graph(sigma.graph(), mbar);
    let source = if target.fixed_point {
        SpectrumBounds {
            bound: mbar,
            certain: Default::default(),
            possible: (1..=mbar).collect(),
            fixed_point: false,
            evidence: vec!["not examined: the target has a fixed point".into()],
            witnesses: Vec::new(),
        }
    } else {
        SpectrumBounds::from_transducer(g, mbar, cfg.max_depth).at(Stage::Percon)?
    };
    let percon = per_containment(source, target);
    if !percon.violations.is_empty() {
        return Err(Error::PerconViolation(percon.violations.clone()).at(Stage::Percon));
    }
    if !percon.unresolved.is_empty() && cfg.strict == Strictness::Abort {
        return Err(Error::PerconUnresolved(percon.unresolved.clone()).at(Stage::Percon));
    }

    // the itinerary subshift of g, long enough for markers and the code check
    let aperiodicity = aperiodicity_evidence(g, mbar, cfg.max_depth).at(Stage::Aperiodicity)?;
    let max_radius = MARKER_RADIUS_FACTOR * big_n;
    let window_len = 2 * (2 * big_n - 1 + max_radius) + 2;
    let v_part = depth_partition(aperiodicity.depth).at(Stage::Aperiodicity)?;
    let itinerary = itinerary_map(g, &v_part, window_len).at(Stage::Markers)?;
    let lambda = &itinerary.window;

    let orbits = small_period_orbits(lambda, big_n, big_n + 1).at(Stage::CodingTables)?;
    let tables = coding_tables(&sigma, &word_targets, &orbits).at(Stage::CodingTables)?;
    let markers = search_markers(lambda, tables.big_n, max_radius).at(Stage::Markers)?;
    let marker_check = check_markers(lambda, &markers).at(Stage::Markers)?;
    if !marker_check.holds() {
        return Err(Error::ReplayMismatch {
            stage: Stage::Markers,
            detail: format!("marker check failed on {:?}", marker_check.counterexample),
        });
    }
    let (code, code_check) = synthesize_code(lambda, &sigma, &markers, &tables).at(Stage::Code)?;

    // ψ_k sends π⁻¹(C_0(u)) onto C_0(u), then ψ_1 sends C_0(u) onto the part u
    let preimages = factor_preimages(g, &v_part, code.window_radius, sigma.graph().vertex_count(), |t| {
        code.apply(t).into_iter().next().flatten()
    })
    .at(Stage::Conjugator)?;
    let model = stage.model();
    let cylinders: Vec<ClopenSet> = (0..sigma.graph().vertex_count())
        .map(|u| ClopenSet::cylinder(model.cylinder_code(u as Symbol)))
        .collect();
    let psi_k = conjugator_from_factor(
        &preimages.parts,
        &cylinders,
        sigma.graph().labels(),
        "psi_k",
        cfg.max_depth,
    )
    .at(Stage::Conjugator)?;
    let psi_total = Transducer::compose("psi", vec![psi_k.clone(), stage.psi.clone()]);
    let h = Transducer::compose(
        "h",
        vec![psi_total.inverse().at(Stage::Conjugacy)?, g.clone(), psi_total.clone()],
    );
    let conjugacy = check_conjugacy(&h, g, &psi_total, cfg.max_depth).at(Stage::Conjugacy)?;
    if !conjugacy.holds() {
        return Err(Error::ReplayMismatch {
            stage: Stage::Conjugacy,
            detail: format!("conjugacy identity fails on {:?}", conjugacy.counterexample),
        });
    }

    // certificates
    let certificate = subgraph_certificate(f, &h, &w_part, eps).at(Stage::Subgraph)?;
    if !certificate.holds {
        return Err(Error::ReplayMismatch {
            stage: Stage::Subgraph,
            detail: format!("edges missing from G(f, W): {:?}", certificate.missing_edges),
        });
    }
    let distance_depth = (certificate.f_graph.depth_used + 1).min(f.max_depth).min(h.max_depth);
    let distance = sup_distance(f, &h, distance_depth).at(Stage::Distance)?;
    if distance.upper >= eps {
        return Err(Error::ReplayMismatch {
            stage: Stage::Distance,
            detail: format!("sup distance bound {} is not below {eps}", distance.upper),
        });
    }
    let composition =
        compose_certificates(&Transducer::identity(cfg.max_depth), w_part.mesh(), eps.half())
            .at(Stage::Composition)?;
    if composition.useless || composition.bound >= eps.to_rational() {
        return Err(Error::ReplayMismatch {
            stage: Stage::Composition,
            detail: format!("composed bound {} is not below {eps}", composition.bound),
        });
    }
    Ok(ConjugacyResult {
        schema: SCHEMA.into(),
        config: cfg.clone(),
        f: f.clone(),
        g: g.clone(),
        delta,
        partition_depth,
        upper: composition.bound,
        stage,
        mbar,
        percon,
        word_targets,
        aperiodicity,
        itinerary,
        marker_check,
        code,
        code_check,
        preimages,
        psi_k,
        psi_total,
        h,
        conjugacy,
        certificate,
        distance,
        composition,
    })
}
