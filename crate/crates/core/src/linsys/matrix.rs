//! Interpolation conditions for fat points.
//!
//! A form `f` of degree `d` vanishes to order at least `m` at `P` iff every
//! partial derivative of order `m - 1` vanishes at `P` (for `d >= m - 1` and
//! characteristic 0 or larger than `d`). One row per derivative multi-index,
//! one column per monomial of `monomial_basis(d)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::scheme::FatPointScheme;
use crate::algebra::modular::{inv_mod, mul_mod};
use crate::algebra::{bigint_mod, falling, monomial_basis, Exponent, Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, ModMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionMatrix {
    pub degree: u32,
    pub field: Field,
    pub columns: Vec<Exponent>,
    /// `(point index, derivative multi-index)` per row.
    pub row_labels: Vec<(usize, Exponent)>,
    pub entries: Vec<Vec<Scalar>>,
}

impl ConditionMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }
}

/// Rejects fields whose characteristic could break the derivative test.
pub(crate) fn check_characteristic(scheme: &FatPointScheme, d: u32) -> Result<()> {
    scheme
        .field()
        .require_characteristic_above(d.max(scheme.max_mult()) as u64)
}

fn row_labels(scheme: &FatPointScheme) -> Vec<(usize, Exponent)> {
    let mut out = Vec::with_capacity(scheme.condition_count() as usize);
    for (i, &m) in scheme.mults().iter().enumerate() {
        if m == 0 {
            continue;
        }
        for beta in monomial_basis(m - 1) {
            out.push((i, beta));
        }
    }
    out
}

/// Entry `∂^β x^μ` evaluated at the normalized representative of each point.
pub fn build_condition_matrix(scheme: &FatPointScheme, d: u32) -> Result<ConditionMatrix> {
    check_characteristic(scheme, d)?;
    let field = scheme.field();
    let columns = monomial_basis(d);
    let labels = row_labels(scheme);
    let powers: Vec<[Vec<Scalar>; 3]> = scheme
        .points()
        .iter()
        .map(|p| std::array::from_fn(|k| scalar_powers(&p.coords()[k], d)))
        .collect();
    let entries = labels
        .iter()
        .map(|(i, beta)| {
            columns
                .iter()
                .map(|mu| {
                    let coeff = (0..3).fold(1i128, |acc, k| acc * falling(mu[k], beta[k]) as i128);
                    if coeff == 0 {
                        return Scalar::zero(field);
                    }
                    let mut v = Scalar::from_bigint(field, &BigInt::from(coeff));
                    for k in 0..3 {
                        v = &v * &powers[*i][k][(mu[k] - beta[k]) as usize];
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(ConditionMatrix {
        degree: d,
        field,
        columns,
        row_labels: labels,
        entries,
    })
}

fn scalar_powers(c: &Scalar, d: u32) -> Vec<Scalar> {
    let mut v = vec![Scalar::one(c.field())];
    for k in 1..=d as usize {
        let next = &v[k - 1] * c;
        v.push(next);
    }
    v
}

fn falling_big(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (n - k + 1..=n).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

/// Same row space as [`build_condition_matrix`] for a rational scheme, with
/// rows evaluated at the primitive integer representative of each point.
pub(crate) fn integer_condition_matrix(scheme: &FatPointScheme, d: u32) -> Result<IntMatrix> {
    if scheme.field() != Field::Rational {
        return Err(Error::InvalidParameter(
            "integer condition matrix needs a rational scheme".into(),
        ));
    }
    let columns = monomial_basis(d);
    let powers: Vec<[Vec<BigInt>; 3]> = scheme
        .points()
        .iter()
        .map(|p| {
            let ints = p.integer_coords();
            std::array::from_fn(|k| {
                let mut v = vec![BigInt::one()];
                for e in 1..=d as usize {
                    let next = &v[e - 1] * &ints[k];
                    v.push(next);
                }
                v
            })
        })
        .collect();
    let rows = row_labels(scheme)
        .iter()
        .map(|(i, beta)| {
            columns
                .iter()
                .map(|mu| {
                    if (0..3).any(|k| beta[k] > mu[k]) {
                        return BigInt::zero();
                    }
                    let mut v = (0..3).fold(BigInt::one(), |acc, k| acc * falling_big(mu[k], beta[k]));
                    for k in 0..3 {
                        v *= &powers[*i][k][(mu[k] - beta[k]) as usize];
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(IntMatrix::from_rows(columns.len(), rows))
}

/// Condition matrix reduced mod `p`. Rational schemes use the primitive
/// integer representatives; prime-field schemes must live over `𝔽_p`.
pub(crate) fn modular_condition_matrix(scheme: &FatPointScheme, d: u32, p: u64) -> ModMatrix {
    let columns = monomial_basis(d);
    let labels = row_labels(scheme);
    let coords: Vec<[u64; 3]> = scheme
        .points()
        .iter()
        .map(|pt| match scheme.field() {
            Field::Rational => {
                let ints = pt.integer_coords();
                std::array::from_fn(|k| bigint_mod(&ints[k], p))
            }
            Field::Prime(q) => {
                debug_assert_eq!(q, p);
                std::array::from_fn(|k| pt.coords()[k].residue().expect("residue"))
            }
        })
        .collect();
    let powers: Vec<[Vec<u64>; 3]> = coords
        .iter()
        .map(|c| {
            std::array::from_fn(|k| {
                let mut v = vec![1 % p];
                for e in 1..=d as usize {
                    v.push(mul_mod(v[e - 1], c[k], p));
                }
                v
            })
        })
        .collect();
    let mut m = ModMatrix::zeros(p, labels.len(), columns.len());
    for (r, (i, beta)) in labels.iter().enumerate() {
        for (c, mu) in columns.iter().enumerate() {
            if (0..3).any(|k| beta[k] > mu[k]) {
                continue;
            }
            let mut v = 1u64;
            for k in 0..3 {
                let f = (mu[k] - beta[k] + 1..=mu[k])
                    .fold(1u64, |acc, t| mul_mod(acc, t as u64 % p, p));
                v = mul_mod(v, f, p);
                v = mul_mod(v, powers[*i][k][(mu[k] - beta[k]) as usize], p);
            }
            m.set(r, c, v);
        }
    }
    m
}

/// Reduces an exact condition matrix mod `p` entrywise (denominators must be
/// units mod `p`). Test helper for cross-checking the fast builders.
pub fn reduce_condition_matrix(cm: &ConditionMatrix, p: u64) -> Result<ModMatrix> {
    let mut m = ModMatrix::zeros(p, cm.rows(), cm.cols());
    for (i, row) in cm.entries.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let r = match v {
                Scalar::Rational(q) => {
                    let num = bigint_mod(q.numer(), p);
                    let den = bigint_mod(q.denom(), p);
                    let inv = inv_mod(den, p).ok_or(Error::DivisionByZero)?;
                    mul_mod(num, inv, p)
                }
                Scalar::Mod { value, .. } => *value,
            };
            m.set(i, j, r);
        }
    }
    Ok(m)
}
