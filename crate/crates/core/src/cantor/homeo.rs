use super::bits::Bits;
use super::clopen::ClopenSet;
use super::transducer::{CylinderRecoding, Transducer};
use crate::error::{Error, Result};

/// Splits the largest cylinder (shortest word, lexicographically first on
/// ties) until `words` has `target` members.
fn refine(words: &[Bits], target: usize) -> Vec<Bits> {
    let mut v = words.to_vec();
    while v.len() < target {
        let i = (0..v.len())
            .min_by(|&a, &b| v[a].len().cmp(&v[b].len()).then(v[a].cmp(&v[b])))
            .expect("nonempty");
        let w = v.remove(i);
        v.push(w.child(0));
        v.push(w.child(1));
        v.sort();
    }
    v
}

/// Cylinder-to-cylinder matching of `a` onto `b`: the side with fewer
/// cylinders is refined to equal size and the two lists are paired in
/// lexicographic order.
pub fn clopen_matching(a: &ClopenSet, b: &ClopenSet) -> Result<CylinderRecoding> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyClopen);
    }
    let n = a.words().len().max(b.words().len());
    let src = refine(a.words(), n);
    let dst = refine(b.words(), n);
    CylinderRecoding::new(src.into_iter().zip(dst).collect())
}

/// A homeomorphism from `a` onto `b` copying bit tails inside matched
/// cylinders.
pub fn clopen_homeo(a: &ClopenSet, b: &ClopenSet, max_depth: usize) -> Result<Transducer> {
    let r = clopen_matching(a, b)?;
    Ok(Transducer::recoding(
        format!("homeo[{} -> {}]", a.render(), b.render()),
        r,
        max_depth,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::bits;

    fn set(ws: &[&str]) -> ClopenSet {
        ClopenSet::normalize(ws.iter().map(|w| bits(w)))
    }

    fn pairs(r: &CylinderRecoding) -> Vec<(String, String)> {
        r.pairs()
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn single_cylinders() {
        let r = clopen_matching(&set(&["0"]), &set(&["11"])).unwrap();
        assert_eq!(pairs(&r), [("0".into(), "11".into())]);
        let id = clopen_matching(&ClopenSet::whole(), &ClopenSet::whole()).unwrap();
        assert_eq!(pairs(&id), [(String::new(), String::new())]);
    }

    #[test]
    fn refinement_equalizes_counts() {
        let r = clopen_matching(&set(&["0", "10"]), &set(&["1"])).unwrap();
        assert_eq!(
            pairs(&r),
            [("0".into(), "10".into()), ("10".into(), "11".into())]
        );
        let t = clopen_homeo(&set(&["0", "10"]), &set(&["1"]), 8).unwrap();
        let inv = t.inverse().unwrap();
        for w in Bits::all(4).filter(|w| !w.starts_with(&[1, 1])) {
            let out = t.image(&w);
            assert!(out.starts_with(&[1]));
            assert_eq!(inv.image(&out), w);
        }
    }

    #[test]
    fn largest_cylinder_is_split_first() {
        let r = clopen_matching(&set(&["00", "011", "100", "111"]), &set(&["0", "11"])).unwrap();
        // "0" splits first, then "00" as the first of the length-2 words
        let dst: Vec<String> = r.pairs().iter().map(|p| p.1.to_string()).collect();
        assert_eq!(dst, ["000", "001", "01", "11"]);
    }

    #[test]
    fn empty_sets_are_rejected() {
        assert!(matches!(
            clopen_matching(&ClopenSet::empty(), &set(&["0"])),
            Err(Error::EmptyClopen)
        ));
    }
}
