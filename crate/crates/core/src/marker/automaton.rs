use std::collections::VecDeque;

use crate::symbolic::Symbol;

/// Aho–Corasick matcher for a set of equal-length words with a dense
/// transition table. After reading `t[..=q]` the state is final exactly when
/// `t[q+1-width..=q]` is one of the words.
#[derive(Clone, Debug)]
pub struct MarkerAutomaton {
    alphabet: usize,
    width: usize,
    delta: Vec<u32>,
    final_state: Vec<bool>,
}

impl MarkerAutomaton {
    pub fn new<'a>(alphabet: usize, width: usize, words: impl IntoIterator<Item = &'a [Symbol]>) -> Self {
        let mut children: Vec<Vec<u32>> = vec![vec![u32::MAX; alphabet]];
        let mut depth = vec![0usize];
        for w in words {
            debug_assert_eq!(w.len(), width);
            let mut s = 0usize;
            for &c in w {
                let c = c as usize;
                if children[s][c] == u32::MAX {
                    children.push(vec![u32::MAX; alphabet]);
                    depth.push(depth[s] + 1);
                    children[s][c] = (children.len() - 1) as u32;
                }
                s = children[s][c] as usize;
            }
        }
        let n = children.len();
        let mut delta = vec![0u32; n * alphabet];
        let mut fail = vec![0usize; n];
        let mut queue = VecDeque::new();
        for c in 0..alphabet {
            let t = children[0][c];
            if t == u32::MAX {
                delta[c] = 0;
            } else {
                delta[c] = t;
                queue.push_back(t as usize);
            }
        }
        while let Some(s) = queue.pop_front() {
            for c in 0..alphabet {
                let t = children[s][c];
                if t == u32::MAX {
                    delta[s * alphabet + c] = delta[fail[s] * alphabet + c];
                } else {
                    fail[t as usize] = delta[fail[s] * alphabet + c] as usize;
                    delta[s * alphabet + c] = t;
                    queue.push_back(t as usize);
                }
            }
        }
        let final_state = depth.iter().map(|&d| width > 0 && d == width).collect();
        MarkerAutomaton {
            alphabet,
            width,
            delta,
            final_state,
        }
    }

    pub const START: u32 = 0;

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn step(&self, state: u32, c: Symbol) -> u32 {
        self.delta[state as usize * self.alphabet + c as usize]
    }

    #[inline]
    pub fn is_final(&self, state: u32) -> bool {
        self.final_state[state as usize]
    }

    /// `hits[q]` is set when a word ends at position `q`.
    pub fn scan(&self, t: &[Symbol]) -> Vec<bool> {
        let mut s = Self::START;
        t.iter()
            .map(|&c| {
                s = self.step(s, c);
                self.is_final(s)
            })
            .collect()
    }
}
