use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cantor::DyadicValue;

/// Which side of a vertex failed the degree requirement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeSide {
    In,
    Out,
}

impl fmt::Display for DegreeSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeSide::In => f.write_str("in"),
            DegreeSide::Out => f.write_str("out"),
        }
    }
}

/// Pipeline stage tags attached to propagated errors and replay mismatches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Modulus,
    Partition,
    Mixing,
    Percon,
    WordTargets,
    Aperiodicity,
    Markers,
    CodingTables,
    Code,
    Conjugator,
    Conjugacy,
    Subgraph,
    Distance,
    Composition,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok();
        match s.as_ref().and_then(|v| v.as_str()) {
            Some(name) => f.write_str(name),
            None => write!(f, "{self:?}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyVertexSet,
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("edge mentions unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {vertex:?} has {side}-degree 0")]
    DegreeViolation { vertex: String, side: DegreeSide },

    #[error("precision {0} is not available on the transducer ladder")]
    PrecisionUnavailable(usize),
    #[error("clopen set is empty")]
    EmptyClopen,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid binary word {0:?}")]
    InvalidBits(String),
    #[error("invalid dyadic value {0:?} (expected 0 or 2^-k)")]
    InvalidDyadic(String),
    #[error("transducer table is malformed: {0}")]
    MalformedTable(String),

    #[error("partition mesh {mesh} exceeds the required modulus {required}")]
    MeshTooCoarse {
        mesh: DyadicValue,
        required: DyadicValue,
    },
    #[error("chain mixing not verified at resolution {0}: dynamics graph is not primitive")]
    ChainMixingUnverified(usize),
    #[error("shift at resolution {0} is not homeomorphic to the Cantor set")]
    NotCantor(usize),
    #[error("factor map misses part {0:?}: its preimage is empty")]
    EmptyPreimage(String),

    #[error("window language too short: need words of length {needed}, have {available}")]
    WindowTooShort { needed: usize, available: usize },
    #[error("no marker set of window radius {radius} is disjoint and covering on this window language")]
    MarkerSearchFailed { radius: usize },
    #[error("word {0:?} is not in the language of the target shift")]
    WordNotInLanguage(String),
    #[error("target shift has no point of period {0}")]
    PeriodUnavailable(usize),
    #[error("periodicity window k={k} is too short: a {period}-periodic window does not extend to a periodic orbit")]
    PeriodicWindowNotOrbit { k: usize, period: usize },
    #[error("block code check failed: {0}")]
    CommutationCheckFailed(String),
    #[error("bridge word search failed for ({from}, {to}, {len})")]
    BridgeUnavailable { from: String, to: String, len: usize },

    #[error("periodic point containment fails: source periods {0:?} are absent from the target")]
    PerconViolation(Vec<usize>),
    #[error("periodic point containment undecided for periods {0:?}")]
    PerconUnresolved(Vec<usize>),
    #[error("insufficient aperiodicity up to depth {max_depth}: {detail}")]
    InsufficientAperiodicity { max_depth: usize, detail: String },
    #[error("M-bar {given} is too small; the construction needs M-bar > {required}")]
    MbarTooSmall { given: usize, required: usize },
    #[error("transducer is not a homeomorphism")]
    NotHomeomorphism,
    #[error("unknown system {0:?}")]
    UnknownSystem(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("replay mismatch at stage {stage}: {detail}")]
    ReplayMismatch { stage: Stage, detail: String },
    #[error("[{stage}] {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn at(self, stage: Stage) -> Error {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage {
                stage,
                source: Box::new(e),
            },
        }
    }

    /// The innermost error, stripped of stage tags.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Stage { stage, .. } => Some(*stage),
            Error::ReplayMismatch { stage, .. } => Some(*stage),
            _ => None,
        }
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::PerconViolation(_)
            | Error::PerconUnresolved(_)
            | Error::InsufficientAperiodicity { .. }
            | Error::ChainMixingUnverified(_)
            | Error::NotCantor(_) => 2,
            Error::PrecisionUnavailable(_) | Error::WindowTooShort { .. } => 3,
            Error::ReplayMismatch { .. } | Error::CommutationCheckFailed(_) => 4,
            _ => 1,
        }
    }
}

pub(crate) trait ResultExt<T> {
    fn at(self, stage: Stage) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn at(self, stage: Stage) -> Result<T> {
        self.map_err(|e| e.at(stage))
    }
}
