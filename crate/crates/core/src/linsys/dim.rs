//! Dimensions of linear systems `|O(d) ⊗ I(mZ)|` and their certification.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{check_characteristic, integer_condition_matrix, modular_condition_matrix};
use super::scheme::FatPointScheme;
use crate::algebra::modular::random_prime_31;
use crate::algebra::{monomial_count, Field, HomoPoly, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{exact_solve, normalize_sign, ExactMethod, LiftBudget};

/// How ranks over ℚ are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Certified rank over ℚ (see [`crate::linalg::exact_solve`]).
    Exact,
    /// Rank modulo one seeded random 31-bit prime.
    SinglePrime,
    /// Ranks modulo `k` distinct seeded primes; disagreement escalates to
    /// [`Strategy::Exact`].
    MultiPrime(u32),
}

impl Default for Strategy {
    fn default() -> Strategy {
        Strategy::MultiPrime(2)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Exact => write!(f, "exact"),
            Strategy::SinglePrime => write!(f, "prime"),
            Strategy::MultiPrime(k) => write!(f, "multiprime:{k}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s.trim() {
            "exact" => Ok(Strategy::Exact),
            "prime" => Ok(Strategy::SinglePrime),
            other => {
                let k = other
                    .strip_prefix("multiprime:")
                    .and_then(|k| k.parse::<u32>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown strategy `{other}`")))?;
                Ok(Strategy::MultiPrime(k))
            }
        }
    }
}

/// What a reported dimension is backed by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certification {
    ExactRational,
    SinglePrime,
    MultiPrime(u32),
    /// Exact linear algebra over the coefficient field 𝔽_p itself.
    ExactPrimeField(u64),
}

impl Certification {
    pub fn is_exact(self) -> bool {
        matches!(
            self,
            Certification::ExactRational | Certification::ExactPrimeField(_)
        )
    }

    /// Exact beats modular; more agreeing primes beat fewer.
    fn strength(self) -> (u8, u32) {
        match self {
            Certification::ExactRational | Certification::ExactPrimeField(_) => (2, 0),
            Certification::MultiPrime(k) => (1, k),
            Certification::SinglePrime => (1, 1),
        }
    }

    /// The less trustworthy of two certifications.
    pub fn weakest(self, other: Certification) -> Certification {
        if other.strength() < self.strength() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certification::ExactRational => write!(f, "EXACT_RATIONAL"),
            Certification::SinglePrime => write!(f, "SINGLE_PRIME"),
            Certification::MultiPrime(k) => write!(f, "MULTI_PRIME({k})"),
            Certification::ExactPrimeField(p) => write!(f, "EXACT_PRIME_FIELD({p})"),
        }
    }
}

impl FromStr for Certification {
    type Err = Error;

    fn from_str(s: &str) -> Result<Certification> {
        let arg = |prefix: &str| -> Option<u64> {
            s.strip_prefix(prefix)?.strip_suffix(')')?.parse().ok()
        };
        match s {
            "EXACT_RATIONAL" => Ok(Certification::ExactRational),
            "SINGLE_PRIME" => Ok(Certification::SinglePrime),
            _ => {
                if let Some(k) = arg("MULTI_PRIME(") {
                    Ok(Certification::MultiPrime(k as u32))
                } else if let Some(p) = arg("EXACT_PRIME_FIELD(") {
                    Ok(Certification::ExactPrimeField(p))
                } else {
                    Err(Error::Parse(format!("unknown certification `{s}`")))
                }
            }
        }
    }
}

impl Serialize for Certification {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Certification {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Certification, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[derive(Default)]
pub struct DimOptions {
    pub strategy: Strategy,
    /// Seed of the random prime stream (recorded in every report).
    pub seed: u64,
    /// Return a kernel basis when the result is exact.
    pub kernel: bool,
}


impl DimOptions {
    pub fn exact() -> DimOptions {
        DimOptions {
            strategy: Strategy::Exact,
            seed: 0,
            kernel: true,
        }
    }

    pub fn with_strategy(strategy: Strategy, seed: u64) -> DimOptions {
        DimOptions {
            strategy,
            seed,
            kernel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSystemReport {
    pub degree: u32,
    pub expected_dim: i64,
    pub actual_dim: u64,
    /// `actual_dim - max(expected_dim, 0)`.
    pub superabundance: i64,
    pub certification: Certification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_basis: Option<Vec<HomoPoly>>,
    /// Primes used by the modular strategies (empty otherwise).
    #[serde(default)]
    pub primes: Vec<u64>,
    pub seed: u64,
}

impl LinearSystemReport {
    pub fn is_empty(&self) -> bool {
        self.actual_dim == 0
    }
}

/// `C(d+2, 2) - Σ C(m_i + 1, 2)`, unclamped.
pub fn expected_dim(scheme: &FatPointScheme, d: u32) -> i64 {
    monomial_count(d) as i64 - scheme.condition_count()
}

/// Seeded stream of distinct random 31-bit primes.
pub fn seeded_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_prime_31(&mut rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn report(
    scheme: &FatPointScheme,
    d: u32,
    rank: usize,
    certification: Certification,
    kernel_basis: Option<Vec<HomoPoly>>,
    primes: Vec<u64>,
    seed: u64,
) -> LinearSystemReport {
    let expected = expected_dim(scheme, d);
    let actual = (monomial_count(d) - rank) as u64;
    LinearSystemReport {
        degree: d,
        expected_dim: expected,
        actual_dim: actual,
        superabundance: actual as i64 - expected.max(0),
        certification,
        kernel_basis,
        primes,
        seed,
    }
}

fn kernel_to_polys(field: Field, d: u32, kernel: &[Vec<BigInt>]) -> Result<Vec<HomoPoly>> {
    kernel
        .iter()
        .map(|v| {
            let coeffs: Vec<Scalar> = v.iter().map(|c| Scalar::from_bigint(field, c)).collect();
            HomoPoly::from_coefficients(field, d, &coeffs)
        })
        .collect()
}

/// Dimension of the space of degree-`d` forms vanishing on the scheme.
pub fn system_dim(scheme: &FatPointScheme, d: u32, opts: &DimOptions) -> Result<LinearSystemReport> {
    check_characteristic(scheme, d)?;
    let cols = monomial_count(d);
    let field = scheme.field();

    // a nonzero form of degree d has order at most d everywhere
    if scheme.max_mult() > d {
        let cert = match field {
            Field::Rational => Certification::ExactRational,
            Field::Prime(p) => Certification::ExactPrimeField(p),
        };
        let kernel = opts.kernel.then(Vec::new);
        return Ok(report(scheme, d, cols, cert, kernel, Vec::new(), opts.seed));
    }

    if let Field::Prime(p) = field {
        let ech = modular_condition_matrix(scheme, d, p).rref();
        let kernel = if opts.kernel {
            let vectors: Vec<Vec<BigInt>> = ech
                .kernel()
                .into_iter()
                .map(|v| v.into_iter().map(BigInt::from).collect())
                .collect();
            Some(kernel_to_polys(field, d, &vectors)?)
        } else {
            None
        };
        return Ok(report(
            scheme,
            d,
            ech.rank(),
            Certification::ExactPrimeField(p),
            kernel,
            vec![p],
            opts.seed,
        ));
    }

    let exact = |primes: Vec<u64>| -> Result<LinearSystemReport> {
        let m = integer_condition_matrix(scheme, d)?;
        let sol = exact_solve(&m, LiftBudget::default());
        debug_assert!(sol.method != ExactMethod::Bareiss || sol.kernel.len() == cols - sol.rank);
        let kernel = if opts.kernel {
            let mut vectors = sol.kernel.clone();
            vectors.iter_mut().for_each(|v| normalize_sign(v));
            Some(kernel_to_polys(field, d, &vectors)?)
        } else {
            None
        };
        Ok(report(
            scheme,
            d,
            sol.rank,
            Certification::ExactRational,
            kernel,
            primes,
            opts.seed,
        ))
    };

    match opts.strategy {
        Strategy::Exact => exact(Vec::new()),
        Strategy::SinglePrime => {
            let p = seeded_primes(opts.seed, 1)[0];
            let rank = modular_condition_matrix(scheme, d, p).rank();
            Ok(report(scheme, d, rank, Certification::SinglePrime, None, vec![p], opts.seed))
        }
        Strategy::MultiPrime(k) => {
            let primes = seeded_primes(opts.seed, k as usize);
            let ranks: Vec<usize> = primes
                .iter()
                .map(|&p| modular_condition_matrix(scheme, d, p).rank())
                .collect();
            if ranks.iter().all(|&r| r == ranks[0]) {
                Ok(report(
                    scheme,
                    d,
                    ranks[0],
                    Certification::MultiPrime(k),
                    None,
                    primes,
                    opts.seed,
                ))
            } else {
                exact(primes)
            }
        }
    }
}

/// Basis of the degree-`d` forms vanishing on the scheme, each checked
/// against the prescribed multiplicities.
pub fn kernel_basis(scheme: &FatPointScheme, d: u32) -> Result<Vec<HomoPoly>> {
    let rep = system_dim(scheme, d, &DimOptions::exact())?;
    let basis = rep.kernel_basis.unwrap_or_default();
    for g in &basis {
        for (p, &m) in scheme.points().iter().zip(scheme.mults()) {
            if !g.order_of_vanishing(p)?.at_least(m) {
                return Err(Error::InvalidParameter(format!(
                    "kernel element {g} fails multiplicity {m} at {p}"
                )));
            }
        }
    }
    Ok(basis)
}

/// Anything that can answer dimension queries (a plain solver, a cache...).
pub trait DimOracle: Sync {
    fn system_dim(&self, scheme: &FatPointScheme, d: u32, opts: &DimOptions) -> Result<LinearSystemReport>;
}

/// Direct computation, no caching.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectOracle;

impl DimOracle for DirectOracle {
    fn system_dim(&self, scheme: &FatPointScheme, d: u32, opts: &DimOptions) -> Result<LinearSystemReport> {
        system_dim(scheme, d, opts)
    }
}
