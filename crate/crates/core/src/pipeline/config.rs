use serde::{Deserialize, Serialize};

use crate::cantor::{DyadicValue, DEFAULT_MAX_DEPTH};
use crate::error::{Error, Result};

/// What to do with periods whose containment stays undecided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    #[default]
    Abort,
    Warn,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub epsilon: DyadicValue,
    pub max_depth: usize,
    /// Period bound `M̄`; derived from the target shift when absent.
    pub mbar: Option<usize>,
    pub strict: Strictness,
    /// Names the tie-break conventions every search follows.
    pub profile: String,
}

/// The only tie-break profile: least vertex, lexicographically first words.
pub const PROFILE: &str = "lex-v1";

impl PipelineConfig {
    pub fn new(epsilon: DyadicValue) -> Self {
        PipelineConfig {
            epsilon,
            max_depth: DEFAULT_MAX_DEPTH,
            mbar: None,
            strict: Strictness::Abort,
            profile: PROFILE.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.epsilon.is_zero() {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        if self.mbar.is_some_and(|m| m < 2) {
            return Err(Error::InvalidConfig("M-bar must be at least 2".into()));
        }
        if self.max_depth == 0 || self.max_depth > 24 {
            return Err(Error::InvalidConfig("max depth must lie in 1..=24".into()));
        }
        if self.profile != PROFILE {
            return Err(Error::InvalidConfig(format!("unknown tie-break profile {:?}", self.profile)));
        }
        Ok(())
    }
}
