use serde::{Deserialize, Serialize};

use super::approximate::{check_conjugacy, ConjugacyResult, SCHEMA};
use super::compose::compose_certificates;
use super::config::Strictness;
use crate::cantor::{depth_partition, modulus_delta, sup_distance, ClopenSet, Rule, Transducer};
use crate::dynamics::{dynamics_graph, factor_preimages, per_containment, SpectrumBounds};
use crate::error::{Error, Result, Stage};
use crate::marker::check_markers;
use crate::symbolic::mixing_certificate;

/// One replayed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub stage: Stage,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&CheckLine> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn into_result(self) -> Result<VerifyReport> {
        match self.first_failure() {
            Some(c) => Err(Error::ReplayMismatch {
                stage: c.stage,
                detail: format!("{}: {}", c.name, c.detail),
            }),
            None => Ok(self),
        }
    }
}

struct Checks(Vec<CheckLine>);

impl Checks {
    fn push(&mut self, name: &str, stage: Stage, pass: bool, detail: impl Into<String>) {
        self.0.push(CheckLine {
            name: name.into(),
            stage,
            pass,
            detail: detail.into(),
        });
    }

    /// Records a failed recomputation as a failed check.
    fn run(&mut self, name: &str, stage: Stage, f: impl FnOnce() -> Result<(bool, String)>) {
        let (pass, detail) = f().unwrap_or_else(|e| (false, e.to_string()));
        self.push(name, stage, pass, detail);
    }
}

fn verdict(same: bool, what: &str) -> String {
    if same {
        format!("{what} reproduced")
    } else {
        format!("{what} differs from the recomputation")
    }
}

/// Replays every certificate of a stored result without any search: each
/// object is recomputed from its stored inputs and compared.
pub fn verify(r: &ConjugacyResult) -> VerifyReport {
    let mut c = Checks(Vec::new());
    let eps = r.config.epsilon;
    let max_depth = r.config.max_depth;
    c.push("schema", Stage::Modulus, r.schema == SCHEMA, format!("schema {:?}", r.schema));

    c.run("modulus", Stage::Modulus, || {
        let delta = modulus_delta(&r.f, eps)?;
        let w = depth_partition(r.partition_depth)?;
        let ok = delta == r.delta && w.mesh() <= delta && w == r.stage.dyn_graph.partition;
        Ok((ok, format!("delta {delta}, mesh {}", w.mesh())))
    });
    c.run("f-graph", Stage::Subgraph, || {
        let g = &r.stage.dyn_graph;
        let again = dynamics_graph(&r.f, &g.partition, g.depth_used)?;
        let ok = again == *g && g.check_witnesses(&r.f);
        Ok((ok, verdict(ok, "G(f, W)")))
    });
    c.run("mixing", Stage::Mixing, || {
        let m = mixing_certificate(&r.stage.dyn_graph.graph);
        let ok = m == r.stage.mixing && m.primitive && r.stage.cantor.cantor;
        Ok((ok, format!("primitive {}, exponent {:?}", m.primitive, m.exponent)))
    });
    c.run("percon", Stage::Percon, || {
        let p = &r.percon;
        let target = SpectrumBounds::from_graph(&r.stage.dyn_graph.graph, p.target.bound);
        let again = per_containment(p.source.clone(), target);
        let acceptable = p.violations.is_empty()
            && (p.unresolved.is_empty() || r.config.strict == Strictness::Warn);
        let ok = again == *p && acceptable;
        Ok((ok, format!("bound {}, unresolved {:?}", p.bound, p.unresolved)))
    });
    c.run("markers", Stage::Markers, || {
        let again = check_markers(&r.itinerary.window, &r.code.markers)?;
        let ok = again == r.marker_check && again.holds();
        Ok((ok, verdict(ok, "marker check")))
    });
    c.run("code", Stage::Code, || {
        let again = r.code.verify(&r.itinerary.window)?;
        let ok = again == r.code_check && again.holds();
        Ok((ok, format!("{} words of length {}", again.words_checked, again.word_len)))
    });
    c.run("conjugator", Stage::Conjugator, || {
        let targets = r.stage.dyn_graph.graph.vertex_count();
        let again = factor_preimages(&r.g, &r.itinerary.partition, r.code.window_radius, targets, |t| {
            r.code.apply(t).into_iter().next().flatten()
        })?;
        let model = r.stage.model();
        let cylinders: Vec<ClopenSet> = (0..targets)
            .map(|u| ClopenSet::cylinder(model.cylinder_code(u as _)))
            .collect();
        let Rule::Recoding { recoding } = &r.psi_k.rule else {
            return Ok((false, "psi_k is not a cylinder recoding".into()));
        };
        let maps_parts = recoding.pairs().iter().all(|(a, b)| {
            (0..targets).any(|u| again.parts[u].contains_cylinder(a) && cylinders[u].contains_cylinder(b))
        });
        let ok = again == r.preimages && maps_parts;
        Ok((ok, verdict(ok, "preimage partition and psi_k")))
    });
    c.run("conjugacy", Stage::Conjugacy, || {
        let steps_ok = match &r.psi_total.rule {
            Rule::Compose { steps } => steps.len() == 2 && steps[0] == r.psi_k && steps[1] == r.stage.psi,
            _ => false,
        };
        let h_ok = match &r.h.rule {
            Rule::Compose { steps } => {
                steps.len() == 3
                    && steps[0] == r.psi_total.inverse()?
                    && steps[1] == r.g
                    && steps[2] == r.psi_total
            }
            _ => false,
        };
        let again = check_conjugacy(&r.h, &r.g, &r.psi_total, max_depth)?;
        let ok = steps_ok && h_ok && again == r.conjugacy && again.holds();
        Ok((ok, format!("{} words up to depth {max_depth}", again.words_checked)))
    });
    c.run("subgraph", Stage::Subgraph, || {
        let cert = &r.certificate;
        let f_again = dynamics_graph(&r.f, &cert.f_graph.partition, cert.f_graph.depth_used)?;
        let h_again = dynamics_graph(&r.h, &cert.g_graph.partition, cert.g_graph.depth_used)?;
        let inclusion = h_again.graph.edges().all(|(u, v)| f_again.graph.has_edge(u, v));
        let ok = f_again == cert.f_graph && h_again == cert.g_graph && inclusion && cert.holds;
        Ok((ok, format!("G(h, W) within G(f, W): {inclusion}")))
    });
    c.run("distance", Stage::Distance, || {
        let again = sup_distance(&r.f, &r.h, r.distance.depth_used)?;
        let ok = again == r.distance && again.upper < eps;
        Ok((ok, format!("d(h, f) <= {} < {eps}", again.upper)))
    });
    c.run("composition", Stage::Composition, || {
        let again = compose_certificates(&Transducer::identity(max_depth), r.certificate.mesh, eps.half())?;
        let ok = again == r.composition && !again.useless && again.bound < eps.to_rational() && r.upper == again.bound;
        Ok((ok, format!("bound {}", again.bound)))
    });
    let passed = c.0.iter().all(|l| l.pass);
    VerifyReport {
        schema: SCHEMA.into(),
        passed,
        checks: c.0,
    }
}
