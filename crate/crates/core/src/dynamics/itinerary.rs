use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cantor::{Bits, CPartition, PartLookup, Transducer};
use crate::error::{Error, Result};
use crate::marker::SubshiftWindow;
use crate::symbolic::{Symbol, Word};

/// Largest input depth tried when resolving itineraries.
const ITINERARY_DEPTH_LIMIT: usize = 20;

/// The itinerary factor `y ↦ t_y` with `g^l(y) ∈ t_y(l)`, known through the
/// exact language of its image up to length `len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItineraryMap {
    pub source: String,
    pub partition: CPartition,
    /// Input depth at which every itinerary of length `len` is constant on
    /// cylinders.
    pub depth: usize,
    pub len: usize,
    pub window: SubshiftWindow,
}

/// Parts visited by `w, g(w), …` for `steps` steps, or `None` once an image
/// no longer determines its part.
pub fn forward_itinerary(g: &Transducer, lookup: &PartLookup, w: &[u8], steps: usize) -> Option<Vec<Symbol>> {
    let mut cur = Bits::from(w);
    let mut out = Vec::with_capacity(steps);
    for l in 0..steps {
        out.push(lookup.part_of(&cur)? as Symbol);
        if l + 1 < steps {
            cur = g.image(&cur);
        }
    }
    Some(out)
}

/// Least input depth, from the partition depth up, on which `resolves`
/// holds for every word.
pub(crate) fn least_resolving_depth(
    start: usize,
    max_depth: usize,
    resolves: impl Fn(&[u8]) -> bool,
) -> Result<usize> {
    let limit = max_depth.min(ITINERARY_DEPTH_LIMIT);
    (start..=limit)
        .find(|&d| Bits::all(d).all(|w| resolves(&w)))
        .ok_or(Error::PrecisionUnavailable(limit.max(start)))
}

pub fn itinerary_map(g: &Transducer, v: &CPartition, len: usize) -> Result<ItineraryMap> {
    if !g.is_homeomorphism() {
        return Err(Error::NotHomeomorphism);
    }
    if v.len() < 2 {
        return Err(Error::InvalidPartition("itineraries need at least two parts".into()));
    }
    if len == 0 {
        return Err(Error::InvalidConfig("itinerary length must be positive".into()));
    }
    let lookup = v.lookup();
    let depth = least_resolving_depth(v.max_depth(), g.max_depth, |w| {
        forward_itinerary(g, &lookup, w, len).is_some()
    })?;
    let words: BTreeSet<Word> = Bits::all(depth)
        .map(|w| Word::new(forward_itinerary(g, &lookup, &w, len).expect("resolved")))
        .collect();
    Ok(ItineraryMap {
        source: g.name.clone(),
        partition: v.clone(),
        depth,
        len,
        window: SubshiftWindow::from_words(v.labels(), words)?,
    })
}

impl ItineraryMap {
    /// Itinerary of the cylinder `[w]` for `steps <= len` steps.
    pub fn itinerary(&self, g: &Transducer, w: &[u8], steps: usize) -> Option<Vec<Symbol>> {
        forward_itinerary(g, &self.partition.lookup(), w, steps)
    }

    /// The language is closed under the shift: words of length `len - 1`
    /// occurring at time 0 are exactly those occurring at time 1.
    pub fn shift_invariant(&self) -> bool {
        let Ok(words) = self.window.words(self.len) else {
            return false;
        };
        let heads: BTreeSet<&[Symbol]> = words.iter().map(|w| &w[..self.len - 1]).collect();
        let tails: BTreeSet<&[Symbol]> = words.iter().map(|w| &w[1..]).collect();
        heads == tails
    }
}
