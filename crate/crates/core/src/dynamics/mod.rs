//! Dynamics graphs of continuous maps over clopen partitions, the subgraph
//! certificate bounding uniform distance, symbolic approximation by vertex
//! shifts realised on Cantor space, itinerary factors, periodic point
//! containment and conjugators built from factor maps.

mod conjugator;
mod dyn_graph;
mod itinerary;
mod percon;
mod sft_approx;
mod subgraph;
mod zigzag;

pub use conjugator::{centered_itinerary, conjugator_from_factor, factor_preimages, FactorPreimages};
pub use dyn_graph::{dynamics_graph, dynamics_graph_auto, exact_depth, DynGraph, EdgeWitness};
pub use itinerary::{forward_itinerary, itinerary_map, ItineraryMap};
pub use percon::{per_containment, IdentityWitness, PerconVerdict, SpectrumBounds};
pub use sft_approx::{sft_approximation, sft_stage, vertex_conjugator, SftStage};
pub use subgraph::{subgraph_certificate, SubgraphCertificate};
pub use zigzag::{PartialPoint, SftModel};
