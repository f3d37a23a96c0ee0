/// Square boolean matrix stored as row bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BoolMatrix {
    pub fn zero(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BoolMatrix {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    pub fn from_successors(succ: &[Vec<u16>]) -> Self {
        let mut m = Self::zero(succ.len());
        for (i, row) in succ.iter().enumerate() {
            for &j in row {
                m.set(i, j as usize);
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    pub fn mul(&self, other: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.n, other.n);
        let mut out = BoolMatrix::zero(self.n);
        for i in 0..self.n {
            let dst = i * self.words;
            for k in 0..self.n {
                if self.get(i, k) {
                    for (d, s) in out.rows[dst..dst + self.words]
                        .iter_mut()
                        .zip(other.row(k))
                    {
                        *d |= *s;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> BoolMatrix {
        let mut base = self.clone();
        let mut acc = BoolMatrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// All entries set.
    pub fn is_positive(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j)))
    }

    pub fn trace_nonzero(&self) -> bool {
        (0..self.n).any(|i| self.get(i, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_mean_powers() {
        let a = BoolMatrix::from_successors(&[vec![0, 1], vec![0]]);
        assert!(!a.is_positive());
        assert!(a.pow(2).is_positive());
        assert_eq!(a.pow(0), BoolMatrix::identity(2));
        assert_eq!(a.pow(3), a.mul(&a).mul(&a));
    }

    #[test]
    fn wide_matrix_bitsets() {
        // 70-cycle crosses a word boundary
        let succ: Vec<Vec<u16>> = (0..70).map(|i| vec![((i + 1) % 70) as u16]).collect();
        let a = BoolMatrix::from_successors(&succ);
        assert!(a.pow(70).trace_nonzero());
        assert!(!a.pow(69).trace_nonzero());
        assert!(a.pow(70) == BoolMatrix::identity(70));
    }
}
