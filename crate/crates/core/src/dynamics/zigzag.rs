use serde::{Deserialize, Serialize};

use crate::cantor::Bits;
use crate::symbolic::{DirectedGraph, Symbol};

/// Binary coordinates on a vertex shift `Σ(G)`.
///
/// A point `t` is read at indices `0, -1, 1, -2, 2, ...`. The vertex at
/// index 0 is chosen among all vertices, at `i > 0` among the successors of
/// `t(i-1)` and at `i < 0` among the predecessors of `t(i+1)`. Each choice
/// among `c` sorted options is written with a balanced prefix code: the first
/// `ceil(c/2)` options get bit 0, the rest bit 1, recursively, so a single
/// option costs no bits and `2^k` options cost `k` bits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SftModel {
    graph: DirectedGraph,
}

/// The known window `t(-left.len()) .. t(right.len()-1)` of a point.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialPoint {
    /// `t(-1), t(-2), ...`
    pub left: Vec<Symbol>,
    /// `t(0), t(1), ...`
    pub right: Vec<Symbol>,
}

fn zigzag_index(step: usize) -> i64 {
    if step == 0 {
        0
    } else if step % 2 == 1 {
        -(step as i64 + 1) / 2
    } else {
        step as i64 / 2
    }
}

/// Balanced code of option `idx` among `c`.
fn encode_choice(idx: usize, c: usize, out: &mut Vec<u8>) {
    let (mut lo, mut hi) = (0, c);
    while hi - lo > 1 {
        let mid = lo + (hi - lo).div_ceil(2);
        if idx < mid {
            out.push(0);
            hi = mid;
        } else {
            out.push(1);
            lo = mid;
        }
    }
}

/// Reads one codeword; `None` when the bits run out first.
fn decode_choice(bits: &[u8], pos: &mut usize, c: usize) -> Option<usize> {
    let (mut lo, mut hi) = (0, c);
    let mut p = *pos;
    while hi - lo > 1 {
        let b = *bits.get(p)?;
        p += 1;
        let mid = lo + (hi - lo).div_ceil(2);
        if b == 0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    *pos = p;
    Some(lo)
}

impl SftModel {
    pub fn new(graph: DirectedGraph) -> Self {
        SftModel { graph }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    fn options(&self, pt: &PartialPoint, index: i64) -> Vec<Symbol> {
        if index == 0 {
            (0..self.graph.vertex_count() as Symbol).collect()
        } else if index > 0 {
            self.graph.successors(pt.right[index as usize - 1]).to_vec()
        } else {
            let next = if index == -1 {
                pt.right[0]
            } else {
                pt.left[(-index) as usize - 2]
            };
            self.graph.predecessors(next).to_vec()
        }
    }

    /// Decodes as many whole choices as the bits determine.
    pub fn decode(&self, bits: &[u8]) -> PartialPoint {
        let mut pt = PartialPoint::default();
        let mut pos = 0;
        // forced choices cost no bits; the cap keeps a forced cycle finite
        // and grows with the input, so longer inputs decode further
        let cap = 2 * (bits.len() + self.graph.vertex_count()) + 2;
        for step in 0..cap {
            let index = zigzag_index(step);
            let opts = self.options(&pt, index);
            match decode_choice(bits, &mut pos, opts.len()) {
                Some(i) => {
                    if index >= 0 {
                        pt.right.push(opts[i]);
                    } else {
                        pt.left.push(opts[i]);
                    }
                }
                None => break,
            }
        }
        pt
    }

    /// Encodes the known window, stopping at the first unknown index in
    /// zigzag order.
    pub fn encode(&self, pt: &PartialPoint) -> Bits {
        let mut out = Vec::new();
        let mut prefix = PartialPoint::default();
        for step in 0.. {
            let index = zigzag_index(step);
            let value = if index >= 0 {
                pt.right.get(index as usize)
            } else {
                pt.left.get((-index) as usize - 1)
            };
            let Some(&v) = value else { break };
            let opts = self.options(&prefix, index);
            let i = opts
                .iter()
                .position(|&o| o == v)
                .expect("window is a path of the graph");
            encode_choice(i, opts.len(), &mut out);
            if index >= 0 {
                prefix.right.push(v);
            } else {
                prefix.left.push(v);
            }
        }
        Bits::new(out)
    }

    /// Code of the time-0 cylinder `C_0(u)`.
    pub fn cylinder_code(&self, u: Symbol) -> Bits {
        let mut out = Vec::new();
        encode_choice(u as usize, self.graph.vertex_count(), &mut out);
        Bits::new(out)
    }

    /// Image of a bit word under the shift (or its inverse) in these
    /// coordinates.
    pub fn shift_image(&self, bits: &[u8], inverse: bool) -> Bits {
        let mut pt = self.decode(bits);
        if inverse {
            if pt.left.is_empty() {
                return Bits::empty();
            }
            let v = pt.left.remove(0);
            pt.right.insert(0, v);
        } else {
            if pt.right.is_empty() {
                return Bits::empty();
            }
            let v = pt.right.remove(0);
            pt.left.insert(0, v);
        }
        self.encode(&pt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::bits;
    use crate::symbolic::build_graph;

    fn gm() -> SftModel {
        SftModel::new(build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]).unwrap())
    }

    #[test]
    fn balanced_codes() {
        let code = |i, c| {
            let mut v = Vec::new();
            encode_choice(i, c, &mut v);
            Bits::new(v).to_string()
        };
        assert_eq!(code(0, 1), "");
        assert_eq!((code(0, 3), code(1, 3), code(2, 3)), ("00".into(), "01".into(), "1".into()));
        assert_eq!(code(5, 8), "101");
    }

    #[test]
    fn decode_stops_at_incomplete_codeword() {
        let m = gm();
        // t(0)=a, t(-1)=b; t(1) needs another bit
        let pt = m.decode(&bits("01"));
        assert_eq!(pt.right, [0]);
        assert_eq!(pt.left, [1]);
        // t(0)=b forces t(-1)=a and t(1)=a without further bits
        let pt = m.decode(&bits("1"));
        assert_eq!(pt.right, [1, 0]);
        assert_eq!(pt.left, [0]);
    }

    #[test]
    fn encode_inverts_decode() {
        let m = gm();
        for n in 0..10 {
            for w in Bits::all(n) {
                let pt = m.decode(&w);
                let e = m.encode(&pt);
                assert!(e.is_prefix_of(&w), "{w} -> {e}");
                assert!(w.len() - e.len() <= 1);
            }
        }
    }

    #[test]
    fn shift_round_trip() {
        let m = gm();
        for w in Bits::all(12) {
            let s = m.shift_image(&w, false);
            let back = m.shift_image(&s, true);
            assert_eq!(back.common_prefix_len(&w), back.len());
        }
    }
}
