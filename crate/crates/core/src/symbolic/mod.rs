//! Vertex shifts of finite type: alphabets, words, graphs, languages,
//! periodic point spectra and the primitivity (mixing) criterion.

mod graph;
mod matrix;
mod mixing;
mod sft;
mod spectrum;
mod word;

pub use graph::{build_graph, DirectedGraph, GraphJson};
pub use matrix::BoolMatrix;
pub use mixing::{mixing_certificate, wielandt_bound, MixingCertificate, NonMixingReason};
pub(crate) use mixing::gcd;
pub use sft::{cantor_check, sft_language, CantorVerdict, Sft, TwoSidedCylinder};
pub use spectrum::{period_spectrum, PeriodSpectrum};
pub use word::{
    find_factor, is_periodic, least_period, least_rotation, render_symbols, small_period, Symbol,
    Word,
};
