//! Finite-precision topological dynamics on the Cantor set.
//!
//! Endomorphisms and homeomorphisms of Cantor space are modelled as prefix
//! transducers on binary words. The crate builds the graphs `G(f, U)` of a
//! map over a clopen partition, symbolic approximations by vertex shifts,
//! marker-based sliding block codes, and conjugates `h = ψ∘g∘ψ⁻¹` of an
//! aperiodic homeomorphism `g` that approximate a chain-mixing map `f` to a
//! requested `ε`, together with certificates that can be replayed.

pub mod cantor;
pub mod dynamics;
pub mod error;
pub mod marker;
pub mod pipeline;
pub mod symbolic;

pub use error::{Error, Result, Stage};
