//! Certified rank and kernel over ℚ by multi-modular lifting.
//!
//! For an integer matrix `A` and any prime `p`, `rank_p(A) <= rank_Q(A)`.
//! The kernel of the reduced form mod `p`, normalized to the identity on the
//! free columns, is lifted by Chinese remaindering and rational
//! reconstruction; once every lifted vector satisfies `A v = 0` over ℤ we
//! have `cols - rank_p` independent rational kernel vectors, hence
//! `rank_Q(A) = rank_p(A)` and the lifted vectors are an exact kernel basis.
//! If lifting does not verify within the prime budget, Bareiss elimination
//! settles the question.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::bareiss::{bareiss, normalize_sign, primitive};
use super::modp::Echelon;
use super::IntMatrix;
use crate::algebra::modular::{descending_primes_31, inv_mod, mul_mod, sub_mod};
use crate::algebra::bigint_mod;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactMethod {
    /// Full rank over a single prime.
    ModularFullRank,
    /// Kernel lifted from this many primes and verified over ℤ.
    ModularLift { primes: usize },
    Bareiss,
}

#[derive(Clone, Debug)]
pub struct ExactSolution {
    pub rank: usize,
    /// Primitive integer kernel vectors, first nonzero entry positive.
    pub kernel: Vec<Vec<BigInt>>,
    pub method: ExactMethod,
}

#[derive(Clone, Copy, Debug)]
pub struct LiftBudget {
    pub max_primes: usize,
}

impl Default for LiftBudget {
    fn default() -> LiftBudget {
        LiftBudget { max_primes: 3000 }
    }
}

struct Accumulator {
    pivots: Vec<usize>,
    free: Vec<usize>,
    /// Residues of the reduced-form entries `R[i][f]`, row-major over
    /// (pivot row, free column).
    values: Vec<BigInt>,
    modulus: BigInt,
    primes: usize,
}

impl Accumulator {
    fn start(ech: &Echelon, p: u64) -> Accumulator {
        let free = ech.free_columns();
        let mut values = Vec::with_capacity(ech.rank() * free.len());
        for i in 0..ech.rank() {
            for &f in &free {
                values.push(BigInt::from(ech.entry(i, f)));
            }
        }
        Accumulator {
            pivots: ech.pivots().to_vec(),
            free,
            values,
            modulus: BigInt::from(p),
            primes: 1,
        }
    }

    fn absorb(&mut self, ech: &Echelon, p: u64) {
        let m_mod_p = bigint_mod(&self.modulus, p);
        let inv = inv_mod(m_mod_p, p).expect("distinct primes");
        let nfree = self.free.len();
        for i in 0..self.pivots.len() {
            for (k, &f) in self.free.iter().enumerate() {
                let slot = &mut self.values[i * nfree + k];
                let a = bigint_mod(slot, p);
                let t = mul_mod(sub_mod(ech.entry(i, f), a, p), inv, p);
                if t != 0 {
                    *slot += &self.modulus * BigInt::from(t);
                }
            }
        }
        self.modulus *= BigInt::from(p);
        self.primes += 1;
    }

    fn reconstruct(&self, cols: usize) -> Option<Vec<Vec<BigInt>>> {
        let bound = (&self.modulus / BigInt::from(2)).sqrt();
        let nfree = self.free.len();
        let mut out = Vec::with_capacity(nfree);
        for (k, &f) in self.free.iter().enumerate() {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (i, &c) in self.pivots.iter().enumerate() {
                let q = rational_reconstruction(&self.values[i * nfree + k], &self.modulus, &bound)?;
                v[c] = -q;
            }
            out.push(primitive(&v));
        }
        Some(out)
    }
}

/// Finds `n/d` with `|n|, d <= bound` and `n ≡ a d (mod m)`.
pub(crate) fn rational_reconstruction(a: &BigInt, m: &BigInt, bound: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Exact rank and kernel of an integer matrix over ℚ.
pub fn exact_solve(m: &IntMatrix, budget: LiftBudget) -> ExactSolution {
    let cols = m.cols();
    let mut primes = descending_primes_31();
    let mut acc: Option<Accumulator> = None;
    let mut next_check = 1usize;
    let mut tried = 0usize;

    while tried < budget.max_primes {
        let p = primes.next().expect("enough 31-bit primes");
        tried += 1;
        let ech = m.reduce(p).rref();
        if ech.rank() == cols {
            return ExactSolution {
                rank: cols,
                kernel: Vec::new(),
                method: ExactMethod::ModularFullRank,
            };
        }
        match &mut acc {
            None => acc = Some(Accumulator::start(&ech, p)),
            Some(a) => {
                let better = ech.rank() > a.pivots.len()
                    || (ech.rank() == a.pivots.len() && ech.pivots() < a.pivots.as_slice());
                if better {
                    *a = Accumulator::start(&ech, p);
                    next_check = 1;
                } else if ech.pivots() == a.pivots.as_slice() {
                    a.absorb(&ech, p);
                } else {
                    continue;
                }
            }
        }
        let a = acc.as_ref().expect("accumulator set");
        if a.primes >= next_check {
            next_check = (a.primes * 3).div_ceil(2).max(a.primes + 1);
            if let Some(kernel) = a.reconstruct(cols) {
                if kernel.iter().all(|v| m.annihilates(v)) {
                    let mut kernel = kernel;
                    kernel.iter_mut().for_each(|v| normalize_sign(v));
                    return ExactSolution {
                        rank: a.pivots.len(),
                        kernel,
                        method: ExactMethod::ModularLift { primes: a.primes },
                    };
                }
            }
        }
    }

    let ech = bareiss(m);
    let mut kernel = ech.kernel(cols);
    kernel.iter_mut().for_each(|v| normalize_sign(v));
    ExactSolution {
        rank: ech.rank,
        kernel,
        method: ExactMethod::Bareiss,
    }
}
