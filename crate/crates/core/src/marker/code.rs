use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::intervals::{interval_decomposition, IntervalClass};
use super::markers::MarkerSet;
use super::tables::CodingTables;
use super::window::{least_period_cyclic, SubshiftWindow, WindowLanguage};
use crate::error::{Error, Result};
use crate::symbolic::{
    find_factor, least_rotation, small_period, DirectedGraph, Sft, Symbol, Word,
};

/// A sliding block code of radius `L′ = max(2N-1+L, N-1+k)` from the marker
/// set and the coding tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCode {
    pub window_radius: usize,
    pub markers: MarkerSet,
    pub tables: CodingTables,
    pub source_labels: Vec<String>,
    pub target: DirectedGraph,
}

/// Outcome of the exhaustive check on all allowed words of length `2L′+2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeCheck {
    pub word_len: usize,
    pub words_checked: u64,
    /// The local rule agrees with interval-wise coding of `t` and of `σt`.
    pub commutes: bool,
    /// Consecutive image symbols are edges of the target.
    pub image_in_language: bool,
    /// A source word whose image contains `w0`.
    pub hitting_source: Option<Word>,
    pub hitting_image: Option<Word>,
    pub counterexample: Option<String>,
}

impl CodeCheck {
    pub fn holds(&self) -> bool {
        self.commutes && self.image_in_language && self.hitting_image.is_some()
    }
}

/// One coding decision of the trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub start: usize,
    pub end: usize,
    /// `mark`, `short`, `periodic`, `flank`, or `undetermined`.
    pub case: String,
    pub image: Option<String>,
}

fn period_block<'a>(t: &'a [Symbol], p: usize, k: usize, n: usize) -> Option<&'a [Symbol]> {
    if p < k || p + k >= t.len() {
        return None;
    }
    let j = small_period(&t[p - k..=p + k], n)?;
    Some(&t[p..p + j])
}

/// Index at which the least rotation of `block` starts.
fn least_rotation_start(block: &[Symbol]) -> usize {
    let j = block.len();
    let mut best = 0;
    for r in 1..j {
        for i in 0..j {
            let (a, b) = (block[(r + i) % j], block[(best + i) % j]);
            if a != b {
                if a < b {
                    best = r;
                }
                break;
            }
        }
    }
    best
}

impl BlockCode {
    fn spacing(&self) -> usize {
        self.markers.spacing
    }

    /// Periodic image symbol at `p`, phased by the least rotation of the
    /// local period block.
    pub fn core_symbol(&self, t: &[Symbol], p: usize) -> Option<Symbol> {
        let block = period_block(t, p, self.markers.k, self.spacing())?;
        let j = block.len();
        let r = least_rotation_start(block);
        let mut buf = [0 as Symbol; 64];
        let mut heap;
        let rot: &mut [Symbol] = if j <= 64 {
            &mut buf[..j]
        } else {
            heap = vec![0; j];
            &mut heap
        };
        for (i, x) in rot.iter_mut().enumerate() {
            *x = block[(r + i) % j];
        }
        let image = self.tables.periodic_image(rot)?;
        Some(image[(j - r) % j])
    }

    /// The local rule at `c`, reading marks from `marked` (valid within
    /// `2N-1` of `c`).
    pub fn rule(&self, t: &[Symbol], marked: &[bool], c: usize) -> Option<Symbol> {
        self.rule_with(marked, c, &mut |p| self.core_symbol(t, p))
    }

    fn rule_with(
        &self,
        marked: &[bool],
        c: usize,
        core: &mut impl FnMut(usize) -> Option<Symbol>,
    ) -> Option<Symbol> {
        let n = self.spacing();
        let phi = self.tables.phi;
        if marked[c] {
            return Some(phi);
        }
        let left = (1..=2 * n - 1).find(|&d| d <= c && marked[c - d]).map(|d| c - d);
        let right = (1..=2 * n - 1)
            .find(|&d| c + d < marked.len() && marked[c + d])
            .map(|d| c + d);
        if let (Some(l), Some(r)) = (left, right) {
            if r - l - 1 <= 2 * n - 2 {
                return self.tables.bridge(phi, phi, r - l - 1).map(|b| b[c - l - 1]);
            }
        }
        if let Some(l) = left.filter(|&l| c - l - 1 <= n - 2) {
            let v = core(l + n)?;
            return self.tables.bridge(phi, v, n - 1).map(|b| b[c - l - 1]);
        }
        if let Some(r) = right.filter(|&r| r - c - 1 <= n - 2) {
            let v = core(r - n)?;
            return self.tables.bridge(v, phi, n - 1).map(|b| b[c + n - 1 - r]);
        }
        core(c)
    }

    fn marks_of(&self, t: &[Symbol]) -> Vec<bool> {
        self.markers
            .marks(t)
            .into_iter()
            .map(|m| m.unwrap_or(false))
            .collect()
    }

    /// Images of every position of `t` with a full `L′` window.
    pub fn apply(&self, t: &[Symbol]) -> Vec<Option<Symbol>> {
        let r = self.window_radius;
        if t.len() < 2 * r + 1 {
            return Vec::new();
        }
        let marked = self.marks_of(t);
        (r..t.len() - r).map(|c| self.rule(t, &marked, c)).collect()
    }

    /// Codes `t` interval by interval, independently of the local rule.
    /// Positions whose case is not decided inside `t` are `None`.
    pub fn code_by_intervals(&self, t: &[Symbol]) -> Vec<Option<Symbol>> {
        self.trace_inner(t).0
    }

    fn trace_inner(&self, t: &[Symbol]) -> (Vec<Option<Symbol>>, Vec<TraceStep>) {
        let n = self.spacing();
        let phi = self.tables.phi;
        let d = interval_decomposition(t, &self.markers);
        let mut out = vec![None; t.len()];
        let mut steps = Vec::new();
        let render = |w: &[Option<Symbol>]| -> Option<String> {
            w.iter()
                .map(|s| s.map(|s| self.target.label(s).to_owned()))
                .collect::<Option<Vec<_>>>()
                .map(|v| v.join(" "))
        };
        for &m in &d.marks {
            out[m] = Some(phi);
            steps.push(TraceStep {
                start: m,
                end: m,
                case: "mark".into(),
                image: Some(self.target.label(phi).to_owned()),
            });
        }
        for iv in &d.intervals {
            let (s, e) = (iv.start, iv.end);
            let len = iv.len();
            if iv.class == IntervalClass::Short {
                if let Some(b) = self.tables.bridge(phi, phi, len) {
                    for i in s..=e {
                        out[i] = Some(b[i - s]);
                    }
                }
                steps.push(TraceStep {
                    start: s,
                    end: e,
                    case: "short".into(),
                    image: render(&out[s..=e]),
                });
                continue;
            }
            let (lo, ro) = (iv.left_open(), iv.right_open());
            // an open interval is known to be long only once it is visibly long
            let long_known = !(lo || ro) || len >= 2 * n - 1;
            if !long_known {
                steps.push(TraceStep {
                    start: s,
                    end: e,
                    case: "undetermined".into(),
                    image: None,
                });
                continue;
            }
            let core_lo = s + n - 1;
            let core_hi = (e + 1).saturating_sub(n - 1);
            if !lo {
                let v = self.core_symbol(t, s + n - 1);
                let b = v.and_then(|v| self.tables.bridge(phi, v, n - 1));
                for i in s..core_lo.min(e + 1) {
                    out[i] = b.map(|b| b[i - s]);
                }
                steps.push(TraceStep {
                    start: s,
                    end: core_lo - 1,
                    case: "flank".into(),
                    image: render(&out[s..core_lo]),
                });
            }
            for i in core_lo..core_hi {
                out[i] = self.core_symbol(t, i);
            }
            if core_hi > core_lo {
                steps.push(TraceStep {
                    start: core_lo,
                    end: core_hi - 1,
                    case: "periodic".into(),
                    image: render(&out[core_lo..core_hi]),
                });
            }
            if !ro {
                let v = self.core_symbol(t, e + 1 - n);
                let b = v.and_then(|v| self.tables.bridge(v, phi, n - 1));
                for i in core_hi..=e {
                    out[i] = b.map(|b| b[i - core_hi]);
                }
                steps.push(TraceStep {
                    start: core_hi,
                    end: e,
                    case: "flank".into(),
                    image: render(&out[core_hi..=e]),
                });
            }
        }
        steps.sort_by_key(|s| s.start);
        (out, steps)
    }

    /// The interval decisions for `t`, in order.
    pub fn trace(&self, t: &[Symbol]) -> Vec<TraceStep> {
        self.trace_inner(t).1
    }

    /// Interval-wise image at `c`, with marks known on `lo..hi`: the
    /// maximal unmarked interval around `c` is located and coded whole.
    #[cfg(test)]
    fn interval_code_at(&self, t: &[Symbol], marked: &[bool], lo: usize, hi: usize, c: usize) -> Option<Symbol> {
        self.interval_code_with(marked, lo, hi, c, &mut |p| self.core_symbol(t, p))
    }

    fn interval_code_with(
        &self,
        marked: &[bool],
        lo: usize,
        hi: usize,
        c: usize,
        core: &mut impl FnMut(usize) -> Option<Symbol>,
    ) -> Option<Symbol> {
        let n = self.spacing();
        let phi = self.tables.phi;
        if marked[c] {
            return Some(phi);
        }
        let mut s = c;
        while s > lo && !marked[s - 1] {
            s -= 1;
        }
        let mut e = c;
        while e + 1 < hi && !marked[e + 1] {
            e += 1;
        }
        let (left_open, right_open) = (s == lo, e + 1 == hi);
        let len = e + 1 - s;
        if !left_open && !right_open && len <= 2 * n - 2 {
            return self.tables.bridge(phi, phi, len).map(|b| b[c - s]);
        }
        if len < 2 * n - 1 {
            return None;
        }
        let core_hi = e + 2 - n;
        // near an open end the flank boundary lies outside the word
        if (left_open && c < s + n - 1) || (right_open && c >= core_hi) {
            return None;
        }
        if !left_open && c < s + n - 1 {
            let v = core(s + n - 1)?;
            return self.tables.bridge(phi, v, n - 1).map(|b| b[c - s]);
        }
        if !right_open && c >= core_hi {
            let v = core(e + 1 - n)?;
            return self.tables.bridge(v, phi, n - 1).map(|b| b[c - core_hi]);
        }
        core(c)
    }

    /// Checks one word of length `2L′+2` whose marks are known on
    /// `L..len-L`.
    fn check_word(&self, t: &[Symbol], marked: &[bool], check: &mut CodeCheck) {
        let r = self.window_radius;
        let (l, len) = (self.markers.radius, t.len());
        // core symbols depend on `t` and the position only
        let mut memo: Vec<Option<Option<Symbol>>> = vec![None; len];
        let mut core = |p: usize| *memo[p].get_or_insert_with(|| self.core_symbol(t, p));
        let a = self.rule_with(marked, r, &mut core);
        let b = self.rule_with(marked, r + 1, &mut core);
        let by_t = (
            self.interval_code_with(marked, l, len - l, r, &mut core),
            self.interval_code_with(marked, l, len - l, r + 1, &mut core),
        );
        let by_st = self.interval_code_with(marked, l + 1, len - l, r + 1, &mut core);
        check.words_checked += 1;
        let commutes = a.is_some() && (a, b) == by_t && b.is_some() && b == by_st;
        let edge = matches!((a, b), (Some(a), Some(b)) if self.target.has_edge(a, b));
        if !commutes {
            check.commutes = false;
        }
        if !edge {
            check.image_in_language = false;
        }
        if (!commutes || !edge) && check.counterexample.is_none() {
            check.counterexample = Some(Word::from(t).render(&self.source_labels));
        }
    }

    /// Exhaustive check over all allowed words of length `2L′+2`, plus a
    /// word whose image contains `w0`.
    pub fn verify(&self, lambda: &SubshiftWindow) -> Result<CodeCheck> {
        let len = 2 * self.window_radius + 2;
        lambda.ensure_len(len)?;
        let mut check = CodeCheck {
            word_len: len,
            words_checked: 0,
            commutes: true,
            image_in_language: true,
            hitting_source: None,
            hitting_image: None,
            counterexample: None,
        };
        match &lambda.language {
            WindowLanguage::Graph { graph } => self.verify_graph(graph, len, &mut check),
            WindowLanguage::Words { .. } => {
                for w in lambda.words(len)? {
                    let marked = self.marks_of(&w);
                    self.check_word(&w, &marked, &mut check);
                }
            }
        }
        if let Some((src, img)) = self.hitting_word(lambda)? {
            check.hitting_source = Some(src);
            check.hitting_image = Some(img);
        }
        Ok(check)
    }

    fn verify_graph(&self, graph: &DirectedGraph, len: usize, check: &mut CodeCheck) {
        let automaton = self.markers.automaton(graph.vertex_count());
        let l = self.markers.radius;
        let mut t: Vec<Symbol> = Vec::with_capacity(len);
        let mut states: Vec<u32> = Vec::with_capacity(len);
        let mut marked = vec![false; len];
        let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
        // iterative DFS: (depth, next successor index)
        while let Some(&mut (depth, ref mut next)) = stack.last_mut() {
            let choices: &[Symbol] = if depth == 0 {
                &[]
            } else {
                graph.successors(t[depth - 1])
            };
            let count = if depth == 0 { graph.vertex_count() } else { choices.len() };
            if *next >= count {
                stack.pop();
                if depth > 0 {
                    t.pop();
                    states.pop();
                }
                continue;
            }
            let s = if depth == 0 { *next as Symbol } else { choices[*next] };
            *next += 1;
            let prev = states.last().copied().unwrap_or(0);
            let st = automaton.step(prev, s);
            t.push(s);
            states.push(st);
            if depth + 1 > 2 * l {
                marked[depth - l] = automaton.is_final(st);
            }
            if depth + 1 == len {
                self.check_word(&t, &marked, check);
                t.pop();
                states.pop();
            } else {
                stack.push((depth + 1, 0));
            }
        }
    }

    /// A source word with an image containing `w0`: a non-periodic window
    /// padded to full context (graph windows) or any window word.
    fn hitting_word(&self, lambda: &SubshiftWindow) -> Result<Option<(Word, Word)>> {
        let w0 = &self.tables.w0;
        let found = |w: &[Symbol]| -> Option<(Word, Word)> {
            let img: Option<Vec<Symbol>> = self.apply(w).into_iter().collect();
            let img = img?;
            find_factor(&img, w0).map(|_| (Word::from(w), Word::new(img)))
        };
        match &lambda.language {
            WindowLanguage::Words { len, .. } => {
                for w in lambda.words(*len)? {
                    if let Some(hit) = found(&w) {
                        return Ok(Some(hit));
                    }
                }
                Ok(None)
            }
            WindowLanguage::Graph { graph } => {
                let (n, k) = (self.spacing(), self.markers.k);
                let width = 2 * k + 1;
                let pad = self.window_radius + 2 * n;
                for w in lambda.words(width)? {
                    if small_period(&w, n).is_some() {
                        continue;
                    }
                    let Some(t) = extend(graph, &w, pad, pad) else {
                        continue;
                    };
                    if let Some(hit) = found(&t) {
                        return Ok(Some(hit));
                    }
                }
                Ok(None)
            }
        }
    }
}

/// Pads `w` by least-symbol walks, `left` symbols before and `right` after.
fn extend(graph: &DirectedGraph, w: &[Symbol], left: usize, right: usize) -> Option<Vec<Symbol>> {
    let mut t: Vec<Symbol> = w.to_vec();
    for _ in 0..right {
        let last = *t.last()?;
        t.push(*graph.successors(last).iter().min()?);
    }
    let mut head = Vec::with_capacity(left);
    let mut first = t[0];
    for _ in 0..left {
        first = *graph.predecessors(first).iter().min()?;
        head.push(first);
    }
    head.reverse();
    head.extend(t);
    Some(head)
}

/// Orbits (least rotations) of least period below `n` carried by windows
/// of width `2k+1`; each must be a periodic point of the window.
pub fn small_period_orbits(lambda: &SubshiftWindow, n: usize, k: usize) -> Result<Vec<Word>> {
    let mut orbits = BTreeSet::new();
    for w in lambda.words(2 * k + 1)? {
        let Some(j) = small_period(&w, n) else {
            continue;
        };
        let block = &w[..j];
        debug_assert_eq!(least_period_cyclic(block), j);
        if !lambda.has_periodic_point(block) {
            return Err(Error::PeriodicWindowNotOrbit { k, period: j });
        }
        orbits.insert(Word::new(least_rotation(block)));
    }
    Ok(orbits.into_iter().collect())
}

/// Radius from which the local rule sees every mark within `2N-1` and every
/// periodicity window it reads.
pub fn code_radius(markers: &MarkerSet) -> usize {
    (2 * markers.spacing - 1 + markers.radius).max(markers.spacing - 1 + markers.k)
}

/// Assembles the block code and runs the exhaustive check.
pub fn synthesize_code(
    lambda: &SubshiftWindow,
    sigma: &Sft,
    markers: &MarkerSet,
    tables: &CodingTables,
) -> Result<(BlockCode, CodeCheck)> {
    if markers.spacing != tables.big_n {
        return Err(Error::InvalidConfig(format!(
            "marker spacing {} differs from N = {}",
            markers.spacing, tables.big_n
        )));
    }
    for orbit in small_period_orbits(lambda, markers.spacing, markers.k)? {
        if tables.periodic_image(&orbit).is_none() {
            return Err(Error::PeriodUnavailable(orbit.len()));
        }
    }
    for (from, to, len) in CodingTables::required_keys(tables.phi, tables.big_n, &tables.periodic_images) {
        if tables.bridge(from, to, len).is_none() {
            return Err(Error::BridgeUnavailable {
                from: sigma.graph().label(from).to_owned(),
                to: sigma.graph().label(to).to_owned(),
                len,
            });
        }
    }
    let code = BlockCode {
        window_radius: code_radius(markers),
        markers: markers.clone(),
        tables: tables.clone(),
        source_labels: lambda.labels.clone(),
        target: sigma.graph().clone(),
    };
    let check = code.verify(lambda)?;
    if !check.holds() {
        return Err(Error::CommutationCheckFailed(match &check.counterexample {
            Some(w) => format!("on source word {w}"),
            None => "no image word contains w0".into(),
        }));
    }
    Ok((code, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marker::{coding_tables, find_markers};
    use crate::symbolic::build_graph;

    fn complete2() -> Sft {
        Sft::new(build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]).unwrap())
    }

    fn targets(s: &Sft) -> Vec<Word> {
        vec![s.graph().parse_word("ab").unwrap(), s.graph().parse_word("ba").unwrap()]
    }

    #[test]
    fn rotation_start() {
        assert_eq!(least_rotation_start(&[2, 0, 1]), 1);
        assert_eq!(least_rotation_start(&[0, 1]), 0);
        assert_eq!(least_rotation_start(&[1, 0, 0]), 1);
    }

    #[test]
    fn period_eight_orbit_into_complete_graph() {
        let sigma = complete2();
        let labels: Vec<String> = (0..8).map(|i| i.to_string()).collect();
        let n = 5;
        let k = n + 1;
        let r = k + n + k;
        let cycle = [0, 4, 2, 6, 1, 5, 3, 7];
        let lambda = SubshiftWindow::periodic_orbit(labels, &cycle, 2 * r + 2 + 8).unwrap();
        let orbits = small_period_orbits(&lambda, n, k).unwrap();
        assert!(orbits.is_empty());
        let tables = coding_tables(&sigma, &targets(&sigma), &orbits).unwrap();
        let markers = find_markers(&lambda, tables.big_n, k).unwrap();
        let (code, check) = synthesize_code(&lambda, &sigma, &markers, &tables).unwrap();
        assert!(check.holds());
        assert_eq!(check.words_checked, 8);
        let img = check.hitting_image.unwrap();
        assert!(find_factor(&img, &code.tables.w0).is_some());
    }

    #[test]
    fn period_four_orbit_is_small_period_for_n_five() {
        let labels = ["0", "1", "2", "3"].map(String::from).to_vec();
        let lambda = SubshiftWindow::periodic_orbit(labels, &[0, 2, 1, 3], 40).unwrap();
        let orbits = small_period_orbits(&lambda, 5, 6).unwrap();
        assert_eq!(orbits, vec![Word::new(vec![0, 2, 1, 3])]);
    }

    #[test]
    fn fixed_point_maps_to_periodic_image() {
        let sigma = complete2();
        let lambda = SubshiftWindow::periodic_orbit(vec!["x".into()], &[0], 40).unwrap();
        let orbits = small_period_orbits(&lambda, 5, 6).unwrap();
        assert_eq!(orbits, vec![Word::new(vec![0])]);
        let tables = coding_tables(&sigma, &targets(&sigma), &orbits).unwrap();
        let markers = find_markers(&lambda, tables.big_n, 6).unwrap();
        assert!(markers.words.is_empty());
        let code = BlockCode {
            window_radius: 6 + 5 + 6,
            markers,
            tables,
            source_labels: lambda.labels.clone(),
            target: sigma.graph().clone(),
        };
        let img = code.apply(&[0; 40]);
        assert!(img.iter().all(|s| *s == Some(0)));
        // a fixed point has no marks, so no image word can contain w0
        assert!(synthesize_code(&lambda, &sigma, &code.markers, &code.tables).is_err());
    }

    fn golden_mean_window() -> SubshiftWindow {
        let g = build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("b", "a")]).unwrap();
        SubshiftWindow::from_graph(g, None)
    }

    #[test]
    fn pointwise_interval_coding_matches_whole_word_coding() {
        use rand::{Rng, SeedableRng};
        let sigma = complete2();
        let lambda = golden_mean_window();
        let w = vec![sigma.graph().parse_word("ab").unwrap()];
        let orbits = small_period_orbits(&lambda, 4, 5).unwrap();
        let tables = coding_tables(&sigma, &w, &orbits).unwrap();
        let markers = crate::marker::search_markers(&lambda, tables.big_n, 12).unwrap();
        let code = BlockCode {
            window_radius: code_radius(&markers),
            markers,
            tables,
            source_labels: lambda.labels.clone(),
            target: sigma.graph().clone(),
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let l = code.markers.radius;
        for _ in 0..300 {
            let mut t: Vec<Symbol> = vec![rng.gen_range(0..2)];
            while t.len() < 80 {
                let next = if *t.last().unwrap() == 1 { 0 } else { rng.gen_range(0..2) };
                t.push(next);
            }
            let marked = code.marks_of(&t);
            let whole = code.code_by_intervals(&t);
            let local = code.apply(&t);
            for c in l..t.len() - l {
                assert_eq!(code.interval_code_at(&t, &marked, l, t.len() - l, c), whole[c]);
            }
            let r = code.window_radius;
            for (i, s) in local.iter().enumerate() {
                assert!(s.is_some());
                assert_eq!(*s, whole[r + i]);
            }
        }
    }
}
