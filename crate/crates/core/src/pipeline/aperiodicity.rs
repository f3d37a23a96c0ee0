use serde::{Deserialize, Serialize};

use crate::cantor::{depth_partition, Bits, Transducer};
use crate::dynamics::itinerary_map;
use crate::error::{Error, Result};
use crate::symbolic::{is_periodic, Word};

/// Deepest input depth for the identity check on a periodic map.
const IDENTITY_DEPTH_LIMIT: usize = 16;

/// The coarsest depth partition whose itineraries include a word that is
/// not `j`-periodic for any `j < M̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperiodicityEvidence {
    pub depth: usize,
    pub mbar: usize,
    pub window_len: usize,
    pub witness: Word,
    pub witness_rendered: String,
}

pub fn aperiodicity_evidence(g: &Transducer, mbar: usize, max_depth: usize) -> Result<AperiodicityEvidence> {
    if !g.is_homeomorphism() {
        return Err(Error::NotHomeomorphism);
    }
    if mbar < 2 {
        return Err(Error::InvalidConfig("M-bar must be at least 2".into()));
    }
    let len = 2 * mbar;
    let limit = max_depth.min(g.max_depth);
    let depth = limit.min(IDENTITY_DEPTH_LIMIT);
    // g^j = id on depth-D words makes every itinerary at depth <= D j-periodic
    let period = identity_period(g, mbar, depth);
    if let (Some(j), true) = (period, depth == limit) {
        return Err(Error::InsufficientAperiodicity {
            max_depth: limit,
            detail: format!("g^{j} = identity verified at depth {depth}"),
        });
    }
    for d in 1..=limit {
        let v = depth_partition(d)?;
        let map = match itinerary_map(g, &v, len) {
            Ok(m) => m,
            Err(Error::PrecisionUnavailable(_)) => break,
            Err(e) => return Err(e),
        };
        let words = map.window.words(len)?;
        if let Some(w) = words.into_iter().find(|w| (1..mbar).all(|j| !is_periodic(w, j))) {
            return Ok(AperiodicityEvidence {
                depth: d,
                mbar,
                window_len: len,
                witness_rendered: w.render(&map.window.labels),
                witness: w,
            });
        }
    }
    let detail = match period {
        Some(j) => format!("g^{j} = identity verified at depth {depth}"),
        None => format!("undecided: no depth up to {limit} shows a non-periodic itinerary"),
    };
    Err(Error::InsufficientAperiodicity {
        max_depth: limit,
        detail,
    })
}

/// Least `j < bound` with `g^j(w)` agreeing with `w` on all `depth` bits for
/// every depth-`depth` word.
pub fn identity_period(g: &Transducer, bound: usize, depth: usize) -> Option<usize> {
    (1..bound).find(|&j| {
        Bits::all(depth).all(|w| {
            let img = g.iterate(&w, j);
            img.len() >= depth && img[..depth] == w[..]
        })
    })
}
