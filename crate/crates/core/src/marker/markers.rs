use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use varisat::{ExtendFormula, Lit, Solver};

use super::automaton::MarkerAutomaton;
use super::window::SubshiftWindow;
use crate::error::{Error, Result};
use crate::symbolic::{small_period, Symbol, Word};

/// A clopen marker set: `σ^i(t) ∈ F` iff `t[i-L..=i+L]` is one of `words`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerSet {
    pub words: Vec<Word>,
    /// Marker window radius `L`.
    pub radius: usize,
    /// Spacing `N`: marks are at least `N` apart.
    pub spacing: usize,
    /// Periodicity window radius `k`.
    pub k: usize,
}

impl MarkerSet {
    pub fn width(&self) -> usize {
        2 * self.radius + 1
    }

    /// Radius of the windows on which covering is decided.
    pub fn covering_radius(&self) -> usize {
        self.k.max(self.spacing - 1 + self.radius)
    }

    pub fn automaton(&self, alphabet: usize) -> MarkerAutomaton {
        MarkerAutomaton::new(alphabet, self.width(), self.words.iter().map(|w| w.as_slice()))
    }

    pub fn is_marker(&self, window: &[Symbol]) -> bool {
        self.words
            .binary_search_by(|w| w.as_slice().cmp(window))
            .is_ok()
    }

    /// Marks of `t` at every position with full context, `None` elsewhere.
    pub fn marks(&self, t: &[Symbol]) -> Vec<Option<bool>> {
        let l = self.radius;
        (0..t.len())
            .map(|i| {
                (i >= l && i + l < t.len()).then(|| self.is_marker(&t[i - l..=i + l]))
            })
            .collect()
    }
}

/// Exhaustive check of both marker invariants on the window language.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkerCheck {
    pub disjoint: bool,
    pub covering: bool,
    pub words_checked: usize,
    /// First offending word, rendered, if any.
    pub counterexample: Option<String>,
}

impl MarkerCheck {
    pub fn holds(&self) -> bool {
        self.disjoint && self.covering
    }
}

fn validate(n: usize, k: usize, l: usize) -> Result<()> {
    if !(k > n && n > 1) {
        return Err(Error::InvalidConfig(format!(
            "marker parameters need k > N > 1, got N={n}, k={k}"
        )));
    }
    if l == 0 {
        return Err(Error::InvalidConfig("marker radius must be positive".into()));
    }
    Ok(())
}

/// Marker search with window radius `L = k`.
pub fn find_markers(lambda: &SubshiftWindow, n: usize, k: usize) -> Result<MarkerSet> {
    find_markers_with_radius(lambda, n, k, k)
}

/// Marker search with `k = N+1` and the least radius `L <= max_radius` for
/// which a marker set exists.
pub fn search_markers(lambda: &SubshiftWindow, n: usize, max_radius: usize) -> Result<MarkerSet> {
    let k = n + 1;
    let mut last = Error::MarkerSearchFailed { radius: max_radius };
    for l in 1..=max_radius {
        match find_markers_with_radius(lambda, n, k, l) {
            Ok(set) => return Ok(set),
            Err(e @ Error::MarkerSearchFailed { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Chooses marker windows so that every window of width `2R+1` with a
/// non-periodic center sees a mark within `N-1` of its center, while no two
/// chosen windows (or one with itself) can occur at offsets `1..N`.
/// The choice is a satisfiability problem over candidate windows: one
/// clause per window needing a mark, one per conflicting pair. A model is
/// pruned to a minimal set by dropping redundant windows in lexicographic
/// order. Unsatisfiability proves that no marker set of radius `L` exists
/// on this window language.
pub fn find_markers_with_radius(
    lambda: &SubshiftWindow,
    n: usize,
    k: usize,
    l: usize,
) -> Result<MarkerSet> {
    validate(n, k, l)?;
    let mut set = MarkerSet {
        words: Vec::new(),
        radius: l,
        spacing: n,
        k,
    };
    let r = set.covering_radius();
    lambda.ensure_len(2 * r + 1)?;
    lambda.ensure_len(2 * l + n)?;
    let width = 2 * l + 1;

    let cands = lambda.words(width)?;
    let cand_id: HashMap<&[Symbol], usize> =
        cands.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();

    // windows needing a mark near their non-periodic center
    let mut needs: Vec<Vec<usize>> = Vec::new();
    for w in lambda.words(2 * r + 1)? {
        if small_period(&w[r - k..=r + k], n).is_some() {
            continue;
        }
        let mut ids: Vec<usize> = (r + 1 - n..=r + n - 1)
            .map(|p| cand_id[&w[p - l..=p + l]])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        needs.push(ids);
    }
    needs.sort_unstable();
    needs.dedup();
    if needs.is_empty() {
        return Ok(set);
    }

    let mut usable = vec![true; cands.len()];
    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); cands.len()];
    for off in 1..n {
        for w in lambda.words(width + off)? {
            let (a, b) = (cand_id[&w[..width]], cand_id[&w[off..off + width]]);
            if a == b {
                usable[a] = false;
            } else {
                conflicts[a].push(b);
            }
        }
    }
    for cs in &mut conflicts {
        cs.sort_unstable();
        cs.dedup();
    }
    let mut solver = Solver::new();
    let lit = |i: usize, positive: bool| Lit::from_index(i, positive);
    for (i, &u) in usable.iter().enumerate() {
        if !u {
            solver.add_clause(&[lit(i, false)]);
        }
    }
    for (a, cs) in conflicts.iter().enumerate() {
        for &b in cs {
            solver.add_clause(&[lit(a, false), lit(b, false)]);
        }
    }
    for ids in &needs {
        let clause: Vec<Lit> = ids.iter().map(|&i| lit(i, true)).collect();
        solver.add_clause(&clause);
    }
    let satisfiable = solver
        .solve()
        .map_err(|e| Error::InvalidConfig(format!("marker solver: {e}")))?;
    if !satisfiable {
        return Err(Error::MarkerSearchFailed { radius: l });
    }
    let mut chosen = vec![false; cands.len()];
    for x in solver.model().unwrap_or_default() {
        if x.is_positive() && x.index() < cands.len() {
            chosen[x.index()] = true;
        }
    }

    // drop windows every dependent need can spare
    let mut count = vec![0u32; needs.len()];
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); cands.len()];
    for (id, ids) in needs.iter().enumerate() {
        for &c in ids {
            covers[c].push(id);
            if chosen[c] {
                count[id] += 1;
            }
        }
    }
    for c in 0..cands.len() {
        if chosen[c] && covers[c].iter().all(|&id| count[id] > 1) {
            chosen[c] = false;
            for &id in &covers[c] {
                count[id] -= 1;
            }
        }
    }
    set.words = (0..cands.len())
        .filter(|&c| chosen[c])
        .map(|c| cands[c].clone())
        .collect();
    Ok(set)
}

/// Re-checks disjointness over all words of length `2L+1+l`, `1 <= l < N`,
/// and covering over all words of width `2R+1`, independently of the search.
pub fn check_markers(lambda: &SubshiftWindow, set: &MarkerSet) -> Result<MarkerCheck> {
    let (l, n, k) = (set.radius, set.spacing, set.k);
    let width = set.width();
    let mut check = MarkerCheck {
        disjoint: true,
        covering: true,
        words_checked: 0,
        counterexample: None,
    };
    for off in 1..n {
        for w in lambda.words(width + off)? {
            check.words_checked += 1;
            if set.is_marker(&w[..width]) && set.is_marker(&w[off..off + width]) {
                check.disjoint = false;
                check.counterexample.get_or_insert_with(|| w.render(&lambda.labels));
            }
        }
    }
    let r = set.covering_radius();
    for w in lambda.words(2 * r + 1)? {
        check.words_checked += 1;
        if small_period(&w[r - k..=r + k], n).is_some() {
            continue;
        }
        let marked = (r + 1 - n..=r + n - 1).any(|p| set.is_marker(&w[p - l..=p + l]));
        if !marked {
            check.covering = false;
            check.counterexample.get_or_insert_with(|| w.render(&lambda.labels));
        }
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::build_graph;

    fn golden_mean(max_len: usize) -> SubshiftWindow {
        let g = build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]).unwrap();
        SubshiftWindow::from_graph(g, Some(max_len))
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn fixed_point_needs_no_markers() {
        let w = SubshiftWindow::periodic_orbit(labels(1), &[0], 31).unwrap();
        let f = find_markers(&w, 3, 5).unwrap();
        assert!(f.words.is_empty());
        assert!(check_markers(&w, &f).unwrap().holds());
    }

    #[test]
    fn period_four_orbit_gets_one_marker() {
        let w = SubshiftWindow::periodic_orbit(labels(4), &[0, 2, 1, 3], 31).unwrap();
        let f = find_markers(&w, 3, 5).unwrap();
        assert_eq!(f.words.len(), 1);
        let cycle: Vec<Symbol> = (0..40).map(|i| [0, 2, 1, 3][i % 4]).collect();
        let hits: Vec<usize> = f
            .marks(&cycle)
            .iter()
            .enumerate()
            .filter(|(_, m)| **m == Some(true))
            .map(|(i, _)| i)
            .collect();
        assert!(hits.windows(2).all(|p| p[1] - p[0] == 4));
        assert!(check_markers(&w, &f).unwrap().holds());
    }

    #[test]
    fn golden_mean_markers_hold() {
        let w = golden_mean(31);
        let f = find_markers(&w, 3, 7).unwrap();
        assert!(!f.words.is_empty());
        assert!(check_markers(&w, &f).unwrap().holds());
    }

    #[test]
    fn search_finds_least_radius() {
        let w = golden_mean(40);
        let f = search_markers(&w, 3, 10).unwrap();
        assert_eq!(f.k, 4);
        assert!(check_markers(&w, &f).unwrap().holds());
        if f.radius > 1 {
            assert!(matches!(
                find_markers_with_radius(&w, 3, 4, f.radius - 1),
                Err(Error::MarkerSearchFailed { .. })
            ));
        }
    }

    #[test]
    fn parameters_are_checked() {
        let w = golden_mean(31);
        assert!(find_markers(&w, 3, 3).is_err());
        assert!(find_markers(&w, 1, 3).is_err());
        assert!(matches!(
            find_markers(&golden_mean(15), 3, 7),
            Err(Error::WindowTooShort { .. })
        ));
    }
}
