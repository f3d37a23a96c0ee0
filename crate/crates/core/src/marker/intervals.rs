use serde::{Deserialize, Serialize};

use super::markers::MarkerSet;
use crate::symbolic::{small_period, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum IntervalClass {
    /// Between two marks, length in `[N-1, 2N-2]`.
    Short,
    /// Between two marks, length at least `2N-1`, with the least period
    /// (below `N`) of its core if one exists.
    Long { period: Option<usize> },
    /// Reaches an end of the decidable region on at least one side.
    Open {
        left_open: bool,
        right_open: bool,
        period: Option<usize>,
    },
}

/// A maximal unmarked segment `start..=end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
    pub class: IntervalClass,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn left_open(&self) -> bool {
        matches!(self.class, IntervalClass::Open { left_open: true, .. })
    }

    pub fn right_open(&self) -> bool {
        matches!(self.class, IntervalClass::Open { right_open: true, .. })
    }
}

/// Marks and intervals of a finite word on the region where marks are
/// decidable, `[L, len - L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub region: (usize, usize),
    pub marks: Vec<usize>,
    pub intervals: Vec<Interval>,
}

/// Least period below `N` of the stretch `t(i+N-1-k) … t(i'-N+1+k)`,
/// clipped to the word.
fn core_period(t: &[Symbol], start: usize, end: usize, set: &MarkerSet) -> Option<usize> {
    let (n, k) = (set.spacing, set.k);
    let lo = (start + n - 1).saturating_sub(k);
    let hi = (end + k + 1).saturating_sub(n - 1).min(t.len());
    if hi <= lo {
        return None;
    }
    small_period(&t[lo..hi], n)
}

pub fn interval_decomposition(t: &[Symbol], set: &MarkerSet) -> Decomposition {
    let l = set.radius;
    let n = set.spacing;
    if t.len() < 2 * l + 1 {
        return Decomposition {
            region: (l, l),
            marks: Vec::new(),
            intervals: Vec::new(),
        };
    }
    let (lo, hi) = (l, t.len() - l);
    let marks: Vec<usize> = (lo..hi)
        .filter(|&i| set.is_marker(&t[i - l..=i + l]))
        .collect();
    let mut intervals = Vec::new();
    let mut push = |start: usize, end: usize, left_open: bool, right_open: bool| {
        let period = core_period(t, start, end, set);
        let class = if left_open || right_open {
            IntervalClass::Open {
                left_open,
                right_open,
                period,
            }
        } else if end + 1 - start <= 2 * n - 2 {
            IntervalClass::Short
        } else {
            IntervalClass::Long { period }
        };
        intervals.push(Interval { start, end, class });
    };
    let mut start = lo;
    let mut open = true;
    for &m in &marks {
        if m > start {
            push(start, m - 1, open, false);
        }
        start = m + 1;
        open = false;
    }
    if start < hi {
        push(start, hi - 1, open, true);
    }
    Decomposition {
        region: (lo, hi),
        marks,
        intervals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Word;

    fn set(words: Vec<Vec<Symbol>>, radius: usize, n: usize, k: usize) -> MarkerSet {
        let mut words: Vec<Word> = words.into_iter().map(Word::new).collect();
        words.sort();
        MarkerSet {
            words,
            radius,
            spacing: n,
            k,
        }
    }

    #[test]
    fn periodic_word_without_markers_is_one_open_interval() {
        let t = vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1];
        let d = interval_decomposition(&t, &set(vec![], 2, 3, 4));
        assert!(d.marks.is_empty());
        assert_eq!(d.intervals.len(), 1);
        assert_eq!(
            d.intervals[0].class,
            IntervalClass::Open {
                left_open: true,
                right_open: true,
                period: Some(2)
            }
        );
    }

    #[test]
    fn period_four_marks_give_short_intervals() {
        let cycle = [0, 2, 1, 3];
        let t: Vec<Symbol> = (0..30).map(|i| cycle[i % 4]).collect();
        let f = set(vec![t[0..11].to_vec()], 5, 3, 5);
        let d = interval_decomposition(&t, &f);
        assert!(d.marks.windows(2).all(|w| w[1] - w[0] == 4));
        for iv in d.intervals.iter().filter(|iv| !iv.left_open() && !iv.right_open()) {
            assert_eq!(iv.class, IntervalClass::Short);
            assert_eq!(iv.len(), 3);
        }
    }

    #[test]
    fn long_run_between_marks_has_periodic_core() {
        let mut t = vec![0; 24];
        t[3] = 1;
        t[20] = 1;
        let f = set(vec![vec![0, 1, 0]], 1, 3, 1);
        let d = interval_decomposition(&t, &f);
        assert_eq!(d.marks, vec![3, 20]);
        let long = d.intervals.iter().find(|iv| iv.start == 4).unwrap();
        assert_eq!(long.end, 19);
        assert_eq!(long.class, IntervalClass::Long { period: Some(1) });
    }
}
