use serde::{Deserialize, Serialize};

use super::itinerary::least_resolving_depth;
use crate::cantor::{clopen_matching, Bits, CPartition, ClopenSet, CylinderRecoding, Transducer};
use crate::error::{Error, Result};
use crate::symbolic::Symbol;

/// Preimages `π⁻¹(U)` of a factor map read through centered itinerary
/// windows of radius `radius`, as clopen sets of input cylinders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorPreimages {
    pub depth: usize,
    pub radius: usize,
    pub parts: Vec<ClopenSet>,
}

/// Parts of `g^l(w)` for `l = -radius..=radius`, or `None` when some image
/// is too short to decide.
pub fn centered_itinerary(
    g: &Transducer,
    g_inv: &Transducer,
    v: &CPartition,
    w: &[u8],
    radius: usize,
) -> Option<Vec<Symbol>> {
    let lookup = v.lookup();
    let mut back = Vec::with_capacity(radius);
    let mut cur = Bits::from(w);
    for _ in 0..radius {
        cur = g_inv.image(&cur);
        back.push(lookup.part_of(&cur)? as Symbol);
    }
    back.reverse();
    let mut cur = Bits::from(w);
    back.push(lookup.part_of(&cur)? as Symbol);
    for _ in 0..radius {
        cur = g.image(&cur);
        back.push(lookup.part_of(&cur)? as Symbol);
    }
    Some(back)
}

/// Classifies every input cylinder at the least depth resolving the window
/// by `rule`, which maps a centered window to a target part.
pub fn factor_preimages(
    g: &Transducer,
    v: &CPartition,
    radius: usize,
    targets: usize,
    rule: impl Fn(&[Symbol]) -> Option<Symbol>,
) -> Result<FactorPreimages> {
    let g_inv = g.inverse()?;
    let depth = least_resolving_depth(v.max_depth(), g.max_depth.min(g_inv.max_depth), |w| {
        centered_itinerary(g, &g_inv, v, w, radius).is_some_and(|t| rule(&t).is_some())
    })?;
    let mut words: Vec<Vec<Bits>> = vec![Vec::new(); targets];
    for w in Bits::all(depth) {
        let t = centered_itinerary(g, &g_inv, v, &w, radius).expect("resolved");
        let u = rule(&t).expect("resolved") as usize;
        if u >= targets {
            return Err(Error::InvalidConfig(format!("factor rule produced unknown part {u}")));
        }
        words[u].push(w);
    }
    Ok(FactorPreimages {
        depth,
        radius,
        parts: words.into_iter().map(ClopenSet::normalize).collect(),
    })
}

/// A homeomorphism sending each preimage `π⁻¹(U)` onto `U`.
pub fn conjugator_from_factor(
    preimages: &[ClopenSet],
    targets: &[ClopenSet],
    labels: &[String],
    name: &str,
    max_depth: usize,
) -> Result<Transducer> {
    if preimages.len() != targets.len() {
        return Err(Error::InvalidConfig(format!(
            "{} preimages for {} parts",
            preimages.len(),
            targets.len()
        )));
    }
    let mut pieces = Vec::with_capacity(targets.len());
    for (i, (p, u)) in preimages.iter().zip(targets).enumerate() {
        if p.is_empty() {
            let label = labels.get(i).cloned().unwrap_or_else(|| i.to_string());
            return Err(Error::EmptyPreimage(label));
        }
        pieces.push(clopen_matching(p, u)?);
    }
    Ok(Transducer::recoding(name, CylinderRecoding::merge(pieces)?, max_depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{depth_partition, Bits};

    #[test]
    fn identity_factor_gives_identity_like_recoding() {
        let v = depth_partition(2).unwrap();
        let pre = factor_preimages(&Transducer::odometer(12), &v, 0, 4, |t| Some(t[0])).unwrap();
        assert_eq!(pre.parts, v.parts().to_vec());
        let psi = conjugator_from_factor(&pre.parts, v.parts(), &v.labels(), "psi", 12).unwrap();
        for w in Bits::all(6) {
            assert_eq!(psi.image(&w), w);
        }
    }

    #[test]
    fn collapsing_factor_has_empty_preimage() {
        let v = depth_partition(1).unwrap();
        let pre = factor_preimages(&Transducer::odometer(12), &v, 1, 2, |_| Some(0)).unwrap();
        assert!(matches!(
            conjugator_from_factor(&pre.parts, v.parts(), &v.labels(), "psi", 12),
            Err(Error::EmptyPreimage(l)) if l == "1"
        ));
    }

    #[test]
    fn centered_windows_follow_the_orbit() {
        let g = Transducer::odometer(12);
        let v = depth_partition(2).unwrap();
        let t = centered_itinerary(&g, &g.inverse().unwrap(), &v, &crate::cantor::bits("00"), 2).unwrap();
        let labels: Vec<String> = t.iter().map(|&s| v.labels()[s as usize].clone()).collect();
        assert_eq!(labels, ["01", "11", "00", "10", "01"]);
    }
}
