//! Markers and sliding block codes from a subshift window into a mixing
//! vertex shift: marker search, interval decomposition, coding tables and
//! an exhaustively checked local rule.

mod automaton;
mod code;
mod intervals;
mod markers;
mod tables;
mod window;

pub use automaton::MarkerAutomaton;
pub use code::{code_radius, small_period_orbits, synthesize_code, BlockCode, CodeCheck, TraceStep};
pub use intervals::{interval_decomposition, Decomposition, Interval, IntervalClass};
pub use markers::{
    check_markers, find_markers, find_markers_with_radius, search_markers, MarkerCheck, MarkerSet,
};
pub use tables::{
    coding_tables, cover_word, least_closed_path, Bridge, BridgeSearch, CodingTables,
    PeriodicImage, target_spacing,
};
pub use window::{SubshiftWindow, WindowLanguage};
