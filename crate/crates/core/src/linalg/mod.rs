//! Exact rank and kernel computations for integer and 𝔽_p matrices.

mod bareiss;
mod lift;
mod modp;

pub use bareiss::{bareiss, BareissEchelon};
pub(crate) use bareiss::normalize_sign;
pub use lift::{exact_solve, ExactMethod, ExactSolution, LiftBudget};
pub use modp::{Echelon, ModMatrix};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::bigint_mod;

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> IntMatrix {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { cols, rows }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn reduce(&self, p: u64) -> ModMatrix {
        let mut m = ModMatrix::zeros(p, self.rows(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, bigint_mod(v, p));
                }
            }
        }
        m
    }

    /// Exact check that `self * v = 0`.
    pub fn annihilates(&self, v: &[BigInt]) -> bool {
        self.rows.iter().all(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        })
    }
}
