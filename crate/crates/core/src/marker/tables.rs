use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbolic::{find_factor, period_spectrum, DirectedGraph, Sft, Symbol, Word};

/// A bridge `Ψ(from, to, len)`: `from · word · to` is a path and `word`
/// contains `w0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub from: Symbol,
    pub to: Symbol,
    pub word: Word,
}

/// The chosen `σ^j`-fixed point of the target for one periodic orbit of the
/// source, both given from the least rotation of the source orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicImage {
    pub orbit: Word,
    pub image: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodingTables {
    /// The constant value of `Φ`.
    pub phi: Symbol,
    pub w0: Word,
    pub n0: usize,
    /// Mixing exponent of the target.
    pub n: usize,
    /// `N = 2n + n0`.
    pub big_n: usize,
    pub bridges: Vec<Bridge>,
    pub periodic_images: Vec<PeriodicImage>,
}

impl CodingTables {
    pub fn bridge(&self, from: Symbol, to: Symbol, len: usize) -> Option<&[Symbol]> {
        self.bridges
            .binary_search_by(|b| (b.from, b.to, b.word.len()).cmp(&(from, to, len)))
            .ok()
            .map(|i| self.bridges[i].word.as_slice())
    }

    pub fn periodic_image(&self, orbit: &[Symbol]) -> Option<&[Symbol]> {
        self.periodic_images
            .binary_search_by(|p| p.orbit.as_slice().cmp(orbit))
            .ok()
            .map(|i| self.periodic_images[i].image.as_slice())
    }

    /// Bridges a block code needs: short intervals between two marks, and
    /// flanks between a mark and any periodic image symbol.
    pub fn required_keys(phi: Symbol, big_n: usize, images: &[PeriodicImage]) -> BTreeSet<(Symbol, Symbol, usize)> {
        let mut keys: BTreeSet<_> = (big_n - 1..=2 * big_n - 2).map(|l| (phi, phi, l)).collect();
        for s in images.iter().flat_map(|p| p.image.iter().copied()) {
            keys.insert((phi, s, big_n - 1));
            keys.insert((s, phi, big_n - 1));
        }
        keys
    }
}

/// The spacing `N = 2n + |w0|` the tables for these targets will use.
pub fn target_spacing(sigma: &Sft, targets: &[Word]) -> Result<usize> {
    let n = match sigma.mixing().exponent {
        Some(e) => e,
        None => return Err(Error::InvalidConfig("target shift is not mixing".into())),
    };
    Ok(2 * n + cover_word(sigma.graph(), targets)?.len())
}

/// Builds `Φ`, `w0`, `N`, the bridge table `Ψ` and the periodic images.
/// `orbits` are least rotations of source orbits of least period below `N`.
pub fn coding_tables(sigma: &Sft, targets: &[Word], orbits: &[Word]) -> Result<CodingTables> {
    let graph = sigma.graph();
    let mixing = sigma.mixing();
    let n = match (mixing.primitive, mixing.exponent) {
        (true, Some(e)) => e,
        _ => return Err(Error::InvalidConfig("target shift is not mixing".into())),
    };
    for w in targets {
        if w.is_empty() || !sigma.contains_word(w) {
            return Err(Error::WordNotInLanguage(graph.render(w)));
        }
    }
    let w0 = cover_word(graph, targets)?;
    let n0 = w0.len();
    let big_n = 2 * n + n0;
    let phi: Symbol = 0;

    let spectrum = period_spectrum(graph, orbits.iter().map(|o| o.len()).max().unwrap_or(1));
    let mut periodic_images = Vec::new();
    let mut by_period: BTreeMap<usize, Word> = BTreeMap::new();
    for orbit in orbits {
        let j = orbit.len();
        if !spectrum.contains(j) {
            return Err(Error::PeriodUnavailable(j));
        }
        let image = match by_period.get(&j) {
            Some(img) => img.clone(),
            None => {
                let img = least_closed_path(graph, j).ok_or(Error::PeriodUnavailable(j))?;
                by_period.insert(j, img.clone());
                img
            }
        };
        periodic_images.push(PeriodicImage {
            orbit: orbit.clone(),
            image,
        });
    }
    periodic_images.sort_by(|a, b| a.orbit.cmp(&b.orbit));
    periodic_images.dedup_by(|a, b| a.orbit == b.orbit);

    let search = BridgeSearch::new(graph, &w0);
    let bridges = CodingTables::required_keys(phi, big_n, &periodic_images)
        .into_iter()
        .map(|(from, to, len)| {
            search
                .find(from, to, len)
                .map(|word| Bridge { from, to, word })
                .ok_or_else(|| Error::BridgeUnavailable {
                    from: graph.label(from).to_owned(),
                    to: graph.label(to).to_owned(),
                    len,
                })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CodingTables {
        phi,
        w0,
        n0,
        n,
        big_n,
        bridges,
        periodic_images,
    })
}

/// A path containing every target word, grown greedily from the least
/// target by appending the target that adds the fewest symbols (largest
/// overlap or shortest connecting path; ties toward the smaller word).
pub fn cover_word(graph: &DirectedGraph, targets: &[Word]) -> Result<Word> {
    let mut remaining: BTreeSet<Word> = targets.iter().cloned().collect();
    let Some(first) = remaining.pop_first() else {
        return Err(Error::InvalidConfig("no target words".into()));
    };
    let mut w = first.into_vec();
    loop {
        remaining.retain(|x| find_factor(&w, x).is_none());
        let mut best: Option<(usize, &Word, Vec<Symbol>)> = None;
        for x in &remaining {
            let Some(tail) = extension(graph, &w, x) else {
                continue;
            };
            if best.as_ref().map_or(true, |b| tail.len() < b.0) {
                best = Some((tail.len(), x, tail));
            }
        }
        match best {
            None if remaining.is_empty() => return Ok(Word::new(w)),
            None => {
                let x = remaining.first().expect("nonempty");
                return Err(Error::WordNotInLanguage(graph.render(x)));
            }
            Some((_, _, tail)) => w.extend(tail),
        }
    }
}

/// Symbols to append to `w` so that it ends with `x`.
fn extension(graph: &DirectedGraph, w: &[Symbol], x: &[Symbol]) -> Option<Vec<Symbol>> {
    for o in (1..x.len().min(w.len() + 1)).rev() {
        if w[w.len() - o..] == x[..o] {
            return Some(x[o..].to_vec());
        }
    }
    let last = *w.last()?;
    let mut tail = graph.shortest_connector(last, x[0])?;
    tail.extend_from_slice(x);
    Some(tail)
}

/// Lexicographically least closed path of length `j`, read from its start.
pub fn least_closed_path(graph: &DirectedGraph, j: usize) -> Option<Word> {
    let n = graph.vertex_count();
    for start in 0..n as Symbol {
        // reach[m][v]: a path of exactly m edges leads from v back to start
        let mut reach = vec![vec![false; n]; j + 1];
        reach[0][start as usize] = true;
        for m in 1..=j {
            for v in 0..n {
                reach[m][v] = graph.successors(v as Symbol).iter().any(|&s| reach[m - 1][s as usize]);
            }
        }
        if !reach[j][start as usize] {
            continue;
        }
        let mut path = vec![start];
        let mut cur = start;
        for m in (1..j).rev() {
            cur = *graph
                .successors(cur)
                .iter()
                .filter(|&&s| reach[m][s as usize])
                .min()
                .expect("feasible");
            path.push(cur);
        }
        return Some(Word::new(path));
    }
    None
}

/// Lexicographically least constrained paths via a backward feasibility
/// table over (position, vertex, matcher state) with a KMP matcher for `w0`.
pub struct BridgeSearch<'a> {
    graph: &'a DirectedGraph,
    pattern: Vec<Symbol>,
    /// `kmp[state][symbol]`, with `pattern.len()` absorbing.
    kmp: Vec<Vec<usize>>,
}

impl<'a> BridgeSearch<'a> {
    pub fn new(graph: &'a DirectedGraph, w0: &[Symbol]) -> Self {
        let a = graph.vertex_count();
        let m = w0.len();
        let mut fail = vec![0usize; m + 1];
        let mut k = 0;
        for i in 1..m {
            while k > 0 && w0[i] != w0[k] {
                k = fail[k];
            }
            if w0[i] == w0[k] {
                k += 1;
            }
            fail[i + 1] = k;
        }
        let kmp = (0..=m)
            .map(|st| {
                (0..a as Symbol)
                    .map(|c| {
                        if st == m {
                            return m;
                        }
                        let mut s = st;
                        loop {
                            if w0[s] == c {
                                return s + 1;
                            }
                            if s == 0 {
                                return 0;
                            }
                            s = fail[s];
                        }
                    })
                    .collect()
            })
            .collect();
        BridgeSearch {
            graph,
            pattern: w0.to_vec(),
            kmp,
        }
    }

    pub fn find(&self, from: Symbol, to: Symbol, len: usize) -> Option<Word> {
        let a = self.graph.vertex_count();
        let m = self.pattern.len();
        if len == 0 {
            return None;
        }
        let states = m + 1;
        // ok[i][v * states + st]: placing v at position i in state st can be completed
        let mut ok = vec![vec![false; a * states]; len];
        for v in 0..a {
            if self.graph.has_edge(v as Symbol, to) {
                ok[len - 1][v * states + m] = true;
            }
        }
        for i in (0..len - 1).rev() {
            let (head, tail) = ok.split_at_mut(i + 1);
            let next = &tail[0];
            for v in 0..a {
                for st in 0..states {
                    head[i][v * states + st] = self.graph.successors(v as Symbol).iter().any(|&s| {
                        next[s as usize * states + self.kmp[st][s as usize]]
                    });
                }
            }
        }
        let mut word = Vec::with_capacity(len);
        let mut prev = from;
        let mut st = 0;
        for row in &ok {
            let v = self
                .graph
                .successors(prev)
                .iter()
                .copied()
                .filter(|&s| row[s as usize * states + self.kmp[st][s as usize]])
                .min()?;
            st = self.kmp[st][v as usize];
            word.push(v);
            prev = v;
        }
        Some(Word::new(word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::build_graph;

    fn complete2() -> Sft {
        Sft::new(build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]).unwrap())
    }

    fn golden_mean() -> Sft {
        Sft::new(build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]).unwrap())
    }

    fn word(s: &Sft, text: &str) -> Word {
        s.graph().parse_word(text).unwrap()
    }

    #[test]
    fn complete_graph_tables() {
        let s = complete2();
        let t = coding_tables(&s, &[word(&s, "ab"), word(&s, "ba")], &[]).unwrap();
        assert_eq!((t.n, t.n0, t.big_n), (1, 3, 5));
        assert_eq!(s.graph().render(&t.w0), "aba");
        for l in 4..=8 {
            let b = t.bridge(0, 0, l).unwrap();
            assert_eq!(b.len(), l);
            assert!(find_factor(b, &t.w0).is_some());
            let mut path = vec![0];
            path.extend_from_slice(b);
            path.push(0);
            assert!(s.graph().is_path(&path));
        }
    }

    #[test]
    fn golden_mean_big_n() {
        let s = golden_mean();
        let t = coding_tables(&s, &[word(&s, "ab")], &[]).unwrap();
        assert_eq!(t.big_n, 6);
    }

    #[test]
    fn missing_period_is_reported() {
        let g = build_graph(
            ["0", "1", "2", "3", "4", "5", "6"],
            [
                ("0", "1"),
                ("1", "2"),
                ("2", "0"),
                ("0", "3"),
                ("3", "4"),
                ("4", "5"),
                ("5", "6"),
                ("6", "0"),
            ],
        )
        .unwrap();
        let s = Sft::new(g);
        let orbit = Word::new(vec![0, 1]);
        assert!(matches!(
            coding_tables(&s, &[Word::new(vec![0])], &[orbit]),
            Err(Error::PeriodUnavailable(2))
        ));
    }

    #[test]
    fn closed_paths_are_least() {
        let s = golden_mean();
        assert_eq!(least_closed_path(s.graph(), 1).unwrap(), Word::new(vec![0]));
        assert_eq!(least_closed_path(s.graph(), 2).unwrap(), Word::new(vec![0, 0]));
        let c2 = build_graph(["x", "y"], [("x", "y"), ("y", "x")]).unwrap();
        assert!(least_closed_path(&c2, 3).is_none());
    }

    #[test]
    fn words_outside_the_language_are_refused() {
        let s = golden_mean();
        assert!(matches!(
            coding_tables(&s, &[word(&s, "bb")], &[]),
            Err(Error::WordNotInLanguage(_))
        ));
    }
}
