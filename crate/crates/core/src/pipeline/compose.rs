use serde::{Deserialize, Serialize};

use crate::cantor::{DyadicRational, DyadicValue, Transducer};
use crate::error::{Error, Result};

/// Triangle-inequality bound `stage + η`, where `η` is what the outer
/// conjugator makes of an inner bound: inputs within `2^-j` agree on `j`
/// bits, so their images agree on `ρ(j)` bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionBound {
    pub outer: String,
    pub inner: DyadicValue,
    pub stage: DyadicValue,
    /// `η = 2^-ρ(j)` for `inner = 2^-j`.
    pub transferred: DyadicValue,
    pub bound: DyadicRational,
    /// The bound is at least 1 and says nothing.
    pub useless: bool,
}

pub fn compose_certificates(
    outer: &Transducer,
    inner: DyadicValue,
    stage: DyadicValue,
) -> Result<CompositionBound> {
    let transferred = match inner.exponent() {
        None => DyadicValue::Zero,
        Some(j) => {
            let j = j as usize;
            if j > outer.max_depth {
                return Err(Error::PrecisionUnavailable(j));
            }
            DyadicValue::Pow(outer.min_output_len(j) as u32)
        }
    };
    let bound = stage.to_rational().add(transferred.to_rational());
    Ok(CompositionBound {
        outer: outer.name.clone(),
        inner,
        stage,
        transferred,
        useless: bound >= DyadicValue::Pow(0).to_rational(),
        bound,
    })
}
