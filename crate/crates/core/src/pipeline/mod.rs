//! The end-to-end construction: from a chain-mixing map `f`, an aperiodic
//! homeomorphism `g` and `ε`, a conjugate `h` of `g` with a certified bound
//! `d(h, f) < ε`, plus the systems catalog and replay verification.

mod aperiodicity;
mod approximate;
mod catalog;
mod compose;
mod config;
mod verify;

pub use aperiodicity::{aperiodicity_evidence, identity_period, AperiodicityEvidence};
pub use approximate::{approximate, check_conjugacy, ConjugacyCheck, ConjugacyResult, SCHEMA};
pub use catalog::{load_graph, load_system, named_graph, GRAPHS, SYSTEMS};
pub use compose::{compose_certificates, CompositionBound};
pub use config::{PipelineConfig, Strictness, PROFILE};
pub use verify::{verify, CheckLine, VerifyReport};
