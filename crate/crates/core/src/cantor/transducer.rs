use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bits::Bits;
use crate::dynamics::SftModel;
use crate::error::{Error, Result};

/// Ladder depth used when none is configured.
pub const DEFAULT_MAX_DEPTH: usize = 16;

/// Largest depth at which per-depth quantities are found by enumeration.
const ENUMERATION_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// A continuous map, onto-ness certified per depth.
    Endo,
    /// A homeomorphism whose inverse is derivable.
    Homeo,
}

/// Finite level maps from depth-`n` words to output words, one per ladder
/// depth. Inputs longer than a ladder depth use the deepest level that fits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TableMap {
    levels: BTreeMap<usize, BTreeMap<Bits, Bits>>,
}

impl TableMap {
    pub fn new(levels: BTreeMap<usize, BTreeMap<Bits, Bits>>) -> Result<Self> {
        let t = TableMap { levels };
        t.validate()?;
        Ok(t)
    }

    pub fn ladder(&self) -> Vec<usize> {
        self.levels.keys().copied().collect()
    }

    fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::MalformedTable("empty ladder".into()));
        }
        let mut previous: Option<(usize, &BTreeMap<Bits, Bits>)> = None;
        for (&d, map) in &self.levels {
            if d > ENUMERATION_LIMIT {
                return Err(Error::MalformedTable(format!("depth {d} exceeds the limit")));
            }
            if map.len() != 1 << d || map.keys().any(|w| w.len() != d) {
                return Err(Error::MalformedTable(format!(
                    "level {d} must list every word of length {d} exactly once"
                )));
            }
            if let Some((pd, pmap)) = previous {
                for (w, out) in map {
                    let coarse = &pmap[&w.prefix(pd)];
                    if !coarse.is_prefix_of(out) {
                        return Err(Error::MalformedTable(format!(
                            "output for {w} does not extend the output for {}",
                            w.prefix(pd)
                        )));
                    }
                }
            }
            previous = Some((d, map));
        }
        Ok(())
    }

    fn image(&self, w: &[u8]) -> Bits {
        match self.levels.range(..=w.len()).next_back() {
            Some((&d, map)) => map[&Bits::from(&w[..d])].clone(),
            None => Bits::empty(),
        }
    }

    fn max_depth(&self) -> usize {
        *self.levels.keys().next_back().unwrap_or(&0)
    }

    /// The level maps of a transducer sampled at the given depths.
    pub fn sample(t: &Transducer, ladder: &[usize]) -> Result<Self> {
        let mut levels = BTreeMap::new();
        for &d in ladder {
            if d > ENUMERATION_LIMIT {
                return Err(Error::PrecisionUnavailable(d));
            }
            levels.insert(
                d,
                Bits::all(d)
                    .map(|w| {
                        let out = t.image(&w);
                        (w, out)
                    })
                    .collect(),
            );
        }
        TableMap::new(levels)
    }
}

/// External JSON form of a table transducer.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableJson {
    pub ladder: Vec<usize>,
    pub maps: BTreeMap<usize, BTreeMap<Bits, Bits>>,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Box<TableJson>>,
}

/// A prefix recoding: each source cylinder word is replaced by its target
/// word and the tail is copied. Sources form a sorted antichain. A word that
/// is a proper prefix of sources outputs the longest common prefix of their
/// targets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderRecoding {
    pairs: Vec<(Bits, Bits)>,
}

impl CylinderRecoding {
    pub fn new(mut pairs: Vec<(Bits, Bits)>) -> Result<Self> {
        pairs.sort();
        for p in pairs.windows(2) {
            if p[0].0.is_prefix_of(&p[1].0) {
                return Err(Error::MalformedTable(format!(
                    "recoding sources {} and {} overlap",
                    p[0].0, p[1].0
                )));
            }
        }
        Ok(CylinderRecoding { pairs })
    }

    pub fn pairs(&self) -> &[(Bits, Bits)] {
        &self.pairs
    }

    pub fn merge(parts: impl IntoIterator<Item = CylinderRecoding>) -> Result<Self> {
        CylinderRecoding::new(parts.into_iter().flat_map(|r| r.pairs).collect())
    }

    pub fn inverse(&self) -> Result<Self> {
        CylinderRecoding::new(self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect())
    }

    fn image(&self, w: &[u8]) -> Bits {
        // the only possible source prefixing w is the greatest source <= w
        let i = self.pairs.partition_point(|(s, _)| s.as_slice() <= w);
        if i > 0 {
            let (s, d) = &self.pairs[i - 1];
            if s.is_prefix_of(w) {
                return d.concat(&w[s.len()..]);
            }
        }
        let start = self.pairs.partition_point(|(s, _)| s.as_slice() < w);
        let mut extending = self.pairs[start..]
            .iter()
            .take_while(|(s, _)| s.starts_with(w))
            .map(|(_, d)| d);
        let Some(first) = extending.next() else {
            return Bits::empty();
        };
        let lcp = extending.fold(first.len(), |n, d| n.min(first.common_prefix_len(d)));
        first.prefix(lcp)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Rule {
    /// One-sided shift: drop the first bit.
    Shift,
    /// Add one with carry, least significant bit first.
    Odometer,
    OdometerInverse,
    Identity,
    Bitflip,
    /// Constant map to `bbb...`.
    Constant { bit: u8 },
    /// `0y ↦ 0·odo(y)`, `10y ↦ 11y`, `11y ↦ 10y`.
    OdometerSwap,
    OdometerSwapInverse,
    Table {
        table: TableMap,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        inverse: Option<TableMap>,
    },
    Recoding { recoding: CylinderRecoding },
    /// The shift of a vertex shift in zigzag coordinates.
    SftShift { model: SftModel, inverse: bool },
    /// Steps applied first to last.
    Compose { steps: Vec<Transducer> },
}

/// A continuous self-map of Cantor space given by a prefix-monotone rule on
/// finite words: the output for `wb` extends the output for `w`. Inputs are
/// read up to `max_depth` bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transducer {
    pub name: String,
    pub kind: Kind,
    pub max_depth: usize,
    pub rule: Rule,
}

fn odometer(w: &[u8], carry_bit: u8) -> Bits {
    let mut v = w.to_vec();
    for b in v.iter_mut() {
        if *b == carry_bit {
            *b = 1 - carry_bit;
        } else {
            *b = carry_bit;
            break;
        }
    }
    Bits::new(v)
}

fn odometer_swap(w: &[u8], inverse: bool) -> Bits {
    match w {
        [] => Bits::empty(),
        [0, rest @ ..] => Bits::new(vec![0]).concat(&odometer(rest, if inverse { 0 } else { 1 })),
        [_] => Bits::new(vec![1]),
        [_, b, rest @ ..] => Bits::new(vec![1, 1 - b]).concat(rest),
    }
}

impl Transducer {
    pub fn new(name: impl Into<String>, kind: Kind, max_depth: usize, rule: Rule) -> Self {
        Transducer {
            name: name.into(),
            kind,
            max_depth,
            rule,
        }
    }

    pub fn shift(max_depth: usize) -> Self {
        Self::new("full2", Kind::Endo, max_depth, Rule::Shift)
    }

    pub fn odometer(max_depth: usize) -> Self {
        Self::new("odometer", Kind::Homeo, max_depth, Rule::Odometer)
    }

    pub fn identity(max_depth: usize) -> Self {
        Self::new("identity", Kind::Homeo, max_depth, Rule::Identity)
    }

    pub fn bitflip(max_depth: usize) -> Self {
        Self::new("bitflip", Kind::Homeo, max_depth, Rule::Bitflip)
    }

    pub fn constant(bit: u8, max_depth: usize) -> Self {
        Self::new(format!("constant{bit}"), Kind::Endo, max_depth, Rule::Constant { bit })
    }

    pub fn odometer_swap(max_depth: usize) -> Self {
        Self::new("odometer-swap", Kind::Homeo, max_depth, Rule::OdometerSwap)
    }

    pub fn sft_shift(name: impl Into<String>, model: SftModel, max_depth: usize) -> Self {
        Self::new(
            name,
            Kind::Homeo,
            max_depth,
            Rule::SftShift {
                model,
                inverse: false,
            },
        )
    }

    pub fn recoding(name: impl Into<String>, recoding: CylinderRecoding, max_depth: usize) -> Self {
        Self::new(name, Kind::Homeo, max_depth, Rule::Recoding { recoding })
    }

    /// Applies `steps` first to last.
    pub fn compose(name: impl Into<String>, steps: Vec<Transducer>) -> Self {
        assert!(!steps.is_empty(), "empty composition");
        let kind = if steps.iter().all(|s| s.kind == Kind::Homeo) {
            Kind::Homeo
        } else {
            Kind::Endo
        };
        let max_depth = steps[0].max_depth;
        Self::new(name, kind, max_depth, Rule::Compose { steps })
    }

    pub fn from_table_json(name: impl Into<String>, json: TableJson) -> Result<Self> {
        let table = table_from_json(&json)?;
        let inverse = match (&json.kind, json.inverse) {
            (Kind::Homeo, Some(inv)) => Some(table_from_json(&inv)?),
            (Kind::Homeo, None) => {
                return Err(Error::MalformedTable("homeo table needs an inverse".into()))
            }
            (Kind::Endo, _) => None,
        };
        let t = Self::new(
            name,
            json.kind,
            table.max_depth(),
            Rule::Table { table, inverse },
        );
        if t.kind == Kind::Homeo {
            let inv = t.inverse()?;
            for d in t.ladder() {
                for w in Bits::all(d) {
                    let back = inv.image(&t.image(&w));
                    if w.common_prefix_len(&back) < w.len().min(back.len()) {
                        return Err(Error::MalformedTable(format!(
                            "inverse does not undo the map on {w}"
                        )));
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn to_table_json(&self, ladder: &[usize]) -> Result<TableJson> {
        let table = TableMap::sample(self, ladder)?;
        let inverse = match self.kind {
            Kind::Homeo => {
                let inv = self.inverse()?;
                let t = TableMap::sample(&inv, ladder)?;
                Some(Box::new(TableJson {
                    ladder: ladder.to_vec(),
                    maps: t.levels,
                    kind: Kind::Homeo,
                    inverse: None,
                }))
            }
            Kind::Endo => None,
        };
        Ok(TableJson {
            ladder: ladder.to_vec(),
            maps: table.levels,
            kind: self.kind,
            inverse,
        })
    }

    /// Supported input depths.
    pub fn ladder(&self) -> Vec<usize> {
        match &self.rule {
            Rule::Table { table, .. } => table.ladder(),
            _ => (0..=self.max_depth).collect(),
        }
    }

    /// Output prefix determined by the input prefix `w`.
    pub fn image(&self, w: &[u8]) -> Bits {
        let w = &w[..w.len().min(self.max_depth)];
        match &self.rule {
            Rule::Shift => Bits::from(w.get(1..).unwrap_or(&[])),
            Rule::Odometer => odometer(w, 1),
            Rule::OdometerInverse => odometer(w, 0),
            Rule::Identity => Bits::from(w),
            Rule::Bitflip => Bits::new(w.iter().map(|b| 1 - b).collect()),
            Rule::Constant { bit } => Bits::new(vec![*bit; self.max_depth]),
            Rule::OdometerSwap => odometer_swap(w, false),
            Rule::OdometerSwapInverse => odometer_swap(w, true),
            Rule::Table { table, .. } => table.image(w),
            Rule::Recoding { recoding } => recoding.image(w),
            Rule::SftShift { model, inverse } => model.shift_image(w, *inverse),
            Rule::Compose { steps } => {
                let mut cur = Bits::from(w);
                for s in steps {
                    cur = s.image(&cur);
                }
                cur
            }
        }
    }

    /// `n`-fold iterate on a word.
    pub fn iterate(&self, w: &[u8], n: usize) -> Bits {
        let mut cur = Bits::from(w);
        for _ in 0..n {
            cur = self.image(&cur);
        }
        cur
    }

    /// Least output length over all depth-`n` inputs: the modulus `ρ(n)`.
    pub fn min_output_len(&self, n: usize) -> usize {
        let n = n.min(self.max_depth);
        match &self.rule {
            Rule::Shift => n.saturating_sub(1),
            Rule::Odometer
            | Rule::OdometerInverse
            | Rule::Identity
            | Rule::Bitflip
            | Rule::OdometerSwap
            | Rule::OdometerSwapInverse => n,
            Rule::Constant { .. } => self.max_depth,
            _ => {
                assert!(n <= ENUMERATION_LIMIT, "depth {n} too large to enumerate");
                Bits::all(n).map(|w| self.image(&w).len()).min().unwrap_or(0)
            }
        }
    }

    /// Least ladder depth whose every image has at least `m` bits.
    pub fn resolution_depth(&self, m: usize) -> Result<usize> {
        let limit = self.max_depth.min(ENUMERATION_LIMIT);
        (0..=limit)
            .find(|&n| self.min_output_len(n) >= m)
            .ok_or(Error::PrecisionUnavailable(m))
    }

    /// Whether every depth-`m` word is a prefix of some image.
    pub fn onto_at(&self, m: usize) -> Result<bool> {
        let n = self.resolution_depth(m)?;
        let mut hit = vec![false; 1 << m];
        for w in Bits::all(n) {
            hit[self.image(&w).prefix(m).to_index() as usize] = true;
        }
        Ok(hit.into_iter().all(|b| b))
    }

    pub fn is_homeomorphism(&self) -> bool {
        self.kind == Kind::Homeo
    }

    pub fn inverse(&self) -> Result<Transducer> {
        if self.kind != Kind::Homeo {
            return Err(Error::NotHomeomorphism);
        }
        let inv_name = format!("{}^-1", self.name);
        let rule = match &self.rule {
            Rule::Shift | Rule::Constant { .. } => return Err(Error::NotHomeomorphism),
            Rule::Odometer => Rule::OdometerInverse,
            Rule::OdometerInverse => Rule::Odometer,
            Rule::Identity => return Ok(self.clone()),
            Rule::Bitflip => return Ok(self.clone()),
            Rule::OdometerSwap => Rule::OdometerSwapInverse,
            Rule::OdometerSwapInverse => Rule::OdometerSwap,
            Rule::Table { table, inverse } => match inverse {
                Some(inv) => Rule::Table {
                    table: inv.clone(),
                    inverse: Some(table.clone()),
                },
                None => return Err(Error::NotHomeomorphism),
            },
            Rule::Recoding { recoding } => Rule::Recoding {
                recoding: recoding.inverse()?,
            },
            Rule::SftShift { model, inverse } => Rule::SftShift {
                model: model.clone(),
                inverse: !inverse,
            },
            Rule::Compose { steps } => {
                let inv = steps
                    .iter()
                    .rev()
                    .map(Transducer::inverse)
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Transducer::compose(inv_name, inv));
            }
        };
        let max_depth = match &rule {
            Rule::Table { table, .. } => table.max_depth(),
            _ => self.max_depth,
        };
        Ok(Transducer::new(inv_name, Kind::Homeo, max_depth, rule))
    }
}

fn table_from_json(json: &TableJson) -> Result<TableMap> {
    let ladder: Vec<usize> = json.maps.keys().copied().collect();
    if ladder != json.ladder {
        return Err(Error::MalformedTable(format!(
            "ladder {:?} does not match the map depths {:?}",
            json.ladder, ladder
        )));
    }
    TableMap::new(json.maps.clone())
}
