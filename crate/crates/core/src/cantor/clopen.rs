use serde::{Deserialize, Serialize};

use super::bits::Bits;
use super::dyadic::DyadicValue;
use crate::error::{Error, Result};

/// A finite union of cylinders in canonical form: a sorted antichain in which
/// no two sibling words are both present. Two sets are equal iff their
/// canonical forms are.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClopenSet {
    words: Vec<Bits>,
}

/// Binary trie over cylinder words.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Empty,
    Full,
    Split(Box<Node>, Box<Node>),
}

impl Node {
    fn split(a: Node, b: Node) -> Node {
        match (a, b) {
            (Node::Empty, Node::Empty) => Node::Empty,
            (Node::Full, Node::Full) => Node::Full,
            (a, b) => Node::Split(Box::new(a), Box::new(b)),
        }
    }

    fn from_words(words: &[&[u8]], depth: usize) -> Node {
        if words.is_empty() {
            return Node::Empty;
        }
        if words.iter().any(|w| w.len() == depth) {
            return Node::Full;
        }
        let (zero, one): (Vec<&[u8]>, Vec<&[u8]>) = words.iter().partition(|w| w[depth] == 0);
        Node::split(
            Node::from_words(&zero, depth + 1),
            Node::from_words(&one, depth + 1),
        )
    }

    fn collect(&self, prefix: &mut Vec<u8>, out: &mut Vec<Bits>) {
        match self {
            Node::Empty => {}
            Node::Full => out.push(Bits::from(prefix.as_slice())),
            Node::Split(a, b) => {
                prefix.push(0);
                a.collect(prefix, out);
                prefix.pop();
                prefix.push(1);
                b.collect(prefix, out);
                prefix.pop();
            }
        }
    }

    fn children(&self) -> (Node, Node) {
        match self {
            Node::Empty => (Node::Empty, Node::Empty),
            Node::Full => (Node::Full, Node::Full),
            Node::Split(a, b) => ((**a).clone(), (**b).clone()),
        }
    }

    fn combine(a: &Node, b: &Node, op: fn(bool, bool) -> bool) -> Node {
        match (a, b) {
            (Node::Split(..), _) | (_, Node::Split(..)) => {
                let (a0, a1) = a.children();
                let (b0, b1) = b.children();
                Node::split(Node::combine(&a0, &b0, op), Node::combine(&a1, &b1, op))
            }
            _ => {
                if op(*a == Node::Full, *b == Node::Full) {
                    Node::Full
                } else {
                    Node::Empty
                }
            }
        }
    }
}

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet { words: Vec::new() }
    }

    pub fn whole() -> Self {
        ClopenSet {
            words: vec![Bits::empty()],
        }
    }

    pub fn cylinder(w: Bits) -> Self {
        ClopenSet { words: vec![w] }
    }

    /// Canonical antichain denoting the union of the given cylinders.
    pub fn normalize<I: IntoIterator<Item = Bits>>(words: I) -> Self {
        let owned: Vec<Bits> = words.into_iter().collect();
        let refs: Vec<&[u8]> = owned.iter().map(|w| w.as_slice()).collect();
        Self::from_node(&Node::from_words(&refs, 0))
    }

    fn from_node(node: &Node) -> Self {
        let mut words = Vec::new();
        node.collect(&mut Vec::new(), &mut words);
        ClopenSet { words }
    }

    fn node(&self) -> Node {
        let refs: Vec<&[u8]> = self.words.iter().map(|w| w.as_slice()).collect();
        Node::from_words(&refs, 0)
    }

    pub fn words(&self) -> &[Bits] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.words.len() == 1 && self.words[0].is_empty()
    }

    pub fn union(&self, other: &ClopenSet) -> ClopenSet {
        Self::from_node(&Node::combine(&self.node(), &other.node(), |a, b| a || b))
    }

    pub fn intersection(&self, other: &ClopenSet) -> ClopenSet {
        Self::from_node(&Node::combine(&self.node(), &other.node(), |a, b| a && b))
    }

    pub fn difference(&self, other: &ClopenSet) -> ClopenSet {
        Self::from_node(&Node::combine(&self.node(), &other.node(), |a, b| a && !b))
    }

    pub fn complement(&self) -> ClopenSet {
        ClopenSet::whole().difference(self)
    }

    pub fn is_disjoint(&self, other: &ClopenSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_subset(&self, other: &ClopenSet) -> bool {
        self.difference(other).is_empty()
    }

    /// Whether the cylinder `[w]` lies inside the set.
    pub fn contains_cylinder(&self, w: &[u8]) -> bool {
        self.words.iter().any(|c| c.is_prefix_of(w))
    }

    /// Whether the cylinder `[w]` meets the set.
    pub fn meets_cylinder(&self, w: &[u8]) -> bool {
        self.words
            .iter()
            .any(|c| c.is_prefix_of(w) || w.starts_with(c.as_slice()) || c.starts_with(w))
    }

    /// Length of the longest word in the canonical antichain.
    pub fn max_depth(&self) -> usize {
        self.words.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// `2^-|p|` where `p` is the longest common prefix of the set.
    pub fn diameter(&self) -> DyadicValue {
        match self.words.split_first() {
            None => DyadicValue::Zero,
            Some((first, rest)) => {
                let lcp = rest
                    .iter()
                    .map(|w| first.common_prefix_len(w))
                    .min()
                    .unwrap_or(first.len());
                DyadicValue::Pow(lcp as u32)
            }
        }
    }

    /// The depth-`d` cylinders making up the set; `d` must be at least
    /// `max_depth`.
    pub fn refine_to(&self, d: usize) -> Vec<Bits> {
        let mut out = Vec::new();
        for w in &self.words {
            assert!(w.len() <= d, "refinement depth below set depth");
            for tail in Bits::all(d - w.len()) {
                out.push(w.concat(&tail));
            }
        }
        out
    }

    pub fn render(&self) -> String {
        if self.is_whole() {
            return "*".into();
        }
        self.words
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Canonical form of a word list, as [`ClopenSet::normalize`].
pub fn clopen_normalize<I: IntoIterator<Item = Bits>>(words: I) -> ClopenSet {
    ClopenSet::normalize(words)
}

/// A finite partition of Cantor space into at least two nonempty clopen parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CPartition {
    parts: Vec<ClopenSet>,
    mesh: DyadicValue,
}

#[derive(Deserialize)]
struct PartitionJson {
    parts: Vec<ClopenSet>,
}

impl<'de> Deserialize<'de> for CPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PartitionJson::deserialize(d)?;
        // stored sets are re-normalized so a hand-edited file cannot smuggle
        // in a non-canonical part
        let parts = raw
            .parts
            .into_iter()
            .map(|p| ClopenSet::normalize(p.words))
            .collect();
        CPartition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl CPartition {
    pub fn new(parts: Vec<ClopenSet>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::InvalidPartition("fewer than two parts".into()));
        }
        let mut seen = ClopenSet::empty();
        for (i, p) in parts.iter().enumerate() {
            if p.is_empty() {
                return Err(Error::InvalidPartition(format!("part {i} is empty")));
            }
            if !seen.is_disjoint(p) {
                return Err(Error::InvalidPartition(format!(
                    "part {i} overlaps an earlier part"
                )));
            }
            seen = seen.union(p);
        }
        if !seen.is_whole() {
            return Err(Error::InvalidPartition(format!(
                "parts miss {}",
                seen.complement().render()
            )));
        }
        let mesh = parts.iter().map(ClopenSet::diameter).max().unwrap();
        Ok(CPartition { parts, mesh })
    }

    pub fn parts(&self) -> &[ClopenSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn mesh(&self) -> DyadicValue {
        self.mesh
    }

    pub fn max_depth(&self) -> usize {
        self.parts.iter().map(ClopenSet::max_depth).max().unwrap_or(0)
    }

    /// Index of the part containing the cylinder `[w]`, if `w` is long
    /// enough to decide it.
    pub fn part_of(&self, w: &[u8]) -> Option<usize> {
        self.parts.iter().position(|p| p.contains_cylinder(w))
    }

    pub fn labels(&self) -> Vec<String> {
        self.parts.iter().map(ClopenSet::render).collect()
    }

    pub fn lookup(&self) -> PartLookup {
        let mut words: Vec<(Bits, usize)> = self
            .parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.words.iter().map(move |w| (w.clone(), i)))
            .collect();
        words.sort();
        PartLookup { words }
    }

    /// Whether this partition refines `coarser`.
    pub fn refines(&self, coarser: &CPartition) -> bool {
        self.parts
            .iter()
            .all(|p| coarser.parts.iter().any(|q| p.is_subset(q)))
    }
}

/// Part membership by binary search over the sorted antichain of all part
/// words.
#[derive(Clone, Debug)]
pub struct PartLookup {
    words: Vec<(Bits, usize)>,
}

impl PartLookup {
    /// Index of the part containing `[w]`, if `w` decides it.
    pub fn part_of(&self, w: &[u8]) -> Option<usize> {
        // the only word that can prefix w is the greatest word <= w
        let i = self.words.partition_point(|(p, _)| p.as_slice() <= w);
        let (p, part) = self.words.get(i.checked_sub(1)?)?;
        p.is_prefix_of(w).then_some(*part)
    }
}

/// The `2^k` depth-`k` cylinders, in lexicographic order.
pub fn depth_partition(k: usize) -> Result<CPartition> {
    if k == 0 {
        return Err(Error::InvalidPartition("depth must be at least 1".into()));
    }
    CPartition::new(Bits::all(k).map(ClopenSet::cylinder).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::bits::bits;

    fn set(ws: &[&str]) -> ClopenSet {
        ClopenSet::normalize(ws.iter().map(|w| bits(w)))
    }

    fn render(s: &ClopenSet) -> Vec<String> {
        s.words().iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(render(&set(&["00", "01"])), ["0"]);
        assert_eq!(render(&set(&["0", "01"])), ["0"]);
        assert!(set(&["1", "00", "010", "011"]).is_whole());
        assert!(set(&[]).is_empty());
        assert_eq!(render(&set(&["11", "010"])), ["010", "11"]);
    }

    #[test]
    fn boolean_operations() {
        let a = set(&["0"]);
        let b = set(&["01", "1"]);
        assert_eq!(render(&a.intersection(&b)), ["01"]);
        assert!(a.union(&b).is_whole());
        assert_eq!(render(&a.difference(&b)), ["00"]);
        assert_eq!(render(&b.complement()), ["00"]);
        assert!(set(&["01"]).is_subset(&a));
    }

    #[test]
    fn diameters() {
        assert_eq!(set(&["0110"]).diameter(), DyadicValue::Pow(4));
        assert_eq!(set(&["010", "011"]).diameter(), DyadicValue::Pow(2));
        assert_eq!(set(&["00", "11"]).diameter(), DyadicValue::ONE);
    }

    #[test]
    fn depth_partitions() {
        for k in 1..=3 {
            let p = depth_partition(k).unwrap();
            assert_eq!(p.len(), 1 << k);
            assert_eq!(p.mesh(), DyadicValue::Pow(k as u32));
        }
        let p = depth_partition(2).unwrap();
        assert_eq!(p.labels(), ["00", "01", "10", "11"]);
        assert_eq!(p.part_of(&bits("101")), Some(2));
        assert_eq!(p.part_of(&bits("1")), None);
        assert!(depth_partition(3).unwrap().refines(&p));
        let lookup = p.lookup();
        assert_eq!(lookup.part_of(&bits("101")), Some(2));
        assert_eq!(lookup.part_of(&bits("1")), None);
        let q = CPartition::new(vec![set(&["0", "11"]), set(&["10"])]).unwrap();
        assert_eq!(q.lookup().part_of(&bits("110")), Some(0));
        assert_eq!(q.lookup().part_of(&bits("10")), Some(1));
    }

    #[test]
    fn invalid_partitions() {
        assert!(CPartition::new(vec![ClopenSet::whole()]).is_err());
        assert!(CPartition::new(vec![set(&["0"]), set(&["01", "1"])]).is_err());
        assert!(CPartition::new(vec![set(&["0"]), set(&["10"])]).is_err());
    }

    #[test]
    fn partition_json_round_trip() {
        let p = CPartition::new(vec![set(&["0"]), set(&["10", "11"])]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"parts":[["0"],["1"]],"mesh":"2^-1"}"#);
        let back: CPartition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
