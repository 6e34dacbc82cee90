//! Dense Gauss-Jordan elimination over 𝔽_p.

use crate::algebra::modular::{inv_mod, mul_mod, sub_mod};

/// Row-major dense matrix of residues mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> ModMatrix {
        ModMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(p: u64, cols: usize, rows: Vec<Vec<u64>>) -> ModMatrix {
        let mut m = ModMatrix::zeros(p, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let p = self.p;
        let cols = self.cols;
        let mut a = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| a[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    a.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(a[r * cols + c], p).expect("nonzero pivot");
            for j in c..cols {
                a[r * cols + j] = mul_mod(a[r * cols + j], inv, p);
            }
            let (before, rest) = a.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u64]| {
                let f = row[c];
                if f == 0 {
                    return;
                }
                for j in c..cols {
                    if pivot_row[j] != 0 {
                        row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            r += 1;
        }
        a.truncate(r * cols);
        Echelon {
            p,
            cols,
            pivots,
            reduced: a,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }
}

/// Output of [`ModMatrix::rref`]: the nonzero rows of the reduced form.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u64,
    cols: usize,
    pivots: Vec<usize>,
    reduced: Vec<u64>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.reduced[row * self.cols + col]
    }

    /// Kernel basis normalized to the identity on the free columns.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (i, &c) in self.pivots.iter().enumerate() {
                    v[c] = crate::algebra::modular::neg_mod(self.entry(i, f), self.p);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::modular::add_mod;

    #[test]
    fn rank_of_small_matrices() {
        let m = ModMatrix::from_rows(7, 3, vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(m.rank(), 2);
        let id = ModMatrix::from_rows(5, 2, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(id.rank(), 2);
        assert_eq!(ModMatrix::zeros(5, 3, 4).rank(), 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let p = 13;
        let m = ModMatrix::from_rows(
            p,
            5,
            vec![vec![1, 2, 3, 4, 5], vec![2, 4, 6, 8, 10], vec![0, 1, 0, 1, 0]],
        );
        let ech = m.rref();
        let ker = ech.kernel();
        assert_eq!(ker.len(), 5 - ech.rank());
        for v in &ker {
            for i in 0..m.rows() {
                let s = m
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, p), p));
                assert_eq!(s, 0);
            }
        }
    }
}
