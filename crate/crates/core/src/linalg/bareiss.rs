//! Fraction-free (Bareiss) elimination over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Row echelon form produced by Bareiss elimination. Every intermediate
/// division is exact, so entries stay integral and are minors of the input.
#[derive(Clone, Debug)]
pub struct BareissEchelon {
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// The first `rank` rows of the echelon form.
    pub rows: Vec<Vec<BigInt>>,
}

pub fn bareiss(m: &IntMatrix) -> BareissEchelon {
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = m.rows_iter().map(|r| r.to_vec()).collect();
    let n_rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(pr) = (r..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    BareissEchelon {
        rank: r,
        pivots,
        rows: a,
    }
}

impl BareissEchelon {
    /// Kernel basis by back substitution, as primitive integer vectors with
    /// the same free-column normalization as the modular solver (before
    /// clearing denominators).
    pub fn kernel(&self, cols: usize) -> Vec<Vec<BigInt>> {
        let mut is_pivot = vec![false; cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..cols)
            .filter(|&c| !is_pivot[c])
            .map(|f| {
                let mut v = vec![BigRational::zero(); cols];
                v[f] = BigRational::one();
                for (i, &c) in self.pivots.iter().enumerate().rev() {
                    let row = &self.rows[i];
                    let mut s = BigRational::zero();
                    for j in c + 1..cols {
                        if !row[j].is_zero() && !v[j].is_zero() {
                            s += &v[j] * BigRational::from_integer(row[j].clone());
                        }
                    }
                    v[c] = -s / BigRational::from_integer(row[c].clone());
                }
                primitive(&v)
            })
            .collect()
    }
}

/// Scales a rational vector to a primitive integer vector, keeping the sign.
pub(crate) fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|n| n / &g).collect()
}

/// Sign convention for reported kernel vectors: first nonzero entry positive.
pub(crate) fn normalize_sign(v: &mut [BigInt]) {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -&*x);
    }
}
