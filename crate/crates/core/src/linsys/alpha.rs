//! Initial degrees `α(I(mZ))` and their differences.
//!
//! Rank is lower semicontinuous in the point coordinates, so an empty system
//! at a witness configuration is empty for general points as well. Existence
//! at a witness transfers to general points only when the expected
//! dimension is already positive. Each computed α records which of these
//! certificates backs its two sides.

use serde::{Deserialize, Serialize};

use super::dim::{expected_dim, Certification, DimOptions, DimOracle, LinearSystemReport, Strategy};
use super::scheme::FatPointScheme;
use crate::algebra::{Field, HomoPoly, ProjectivePoint};
use crate::error::{Error, Result};

/// Why nothing of degree `α - 1` exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LowerCertificate {
    /// `α - 1` is below the largest multiplicity.
    DegreeBound,
    /// The condition matrix in degree `α - 1` has full column rank.
    FullRank { certification: Certification },
}

/// Why something of degree `α` exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UpperCertificate {
    /// More monomials than conditions: holds for every configuration.
    ExpectedDimension { expected_dim: i64 },
    /// A nonzero kernel at this particular configuration.
    Kernel { certification: Certification, dim: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub degree: u32,
    pub expected_dim: i64,
    pub actual_dim: u64,
    pub certification: Certification,
}

impl From<&LinearSystemReport> for DegreeSummary {
    fn from(r: &LinearSystemReport) -> DegreeSummary {
        DegreeSummary {
            degree: r.degree,
            expected_dim: r.expected_dim,
            actual_dim: r.actual_dim,
            certification: r.certification,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaValue {
    pub mults: Vec<u32>,
    pub alpha: u32,
    pub lower: LowerCertificate,
    pub upper: UpperCertificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<HomoPoly>,
    /// Every degree examined by the search, ascending.
    pub search: Vec<DegreeSummary>,
}

impl AlphaValue {
    /// Both sides hold for general points, not only for this witness.
    pub fn certified_for_general(&self) -> bool {
        matches!(self.upper, UpperCertificate::ExpectedDimension { .. })
    }

    /// Both sides rest on exact computations.
    pub fn is_exact(&self) -> bool {
        let lower = match &self.lower {
            LowerCertificate::DegreeBound => true,
            LowerCertificate::FullRank { certification } => certification.is_exact(),
        };
        let upper = match &self.upper {
            UpperCertificate::ExpectedDimension { .. } => true,
            UpperCertificate::Kernel { certification, .. } => certification.is_exact(),
        };
        lower && upper
    }

    /// The weaker of the two sides; bounds that need no matrix count as
    /// exact over `field`.
    pub fn certification(&self, field: Field) -> Certification {
        let exact = exact_for(field);
        let lower = match &self.lower {
            LowerCertificate::DegreeBound => exact,
            LowerCertificate::FullRank { certification } => *certification,
        };
        let upper = match &self.upper {
            UpperCertificate::ExpectedDimension { .. } => exact,
            UpperCertificate::Kernel { certification, .. } => *certification,
        };
        lower.weakest(upper)
    }
}

pub(crate) fn exact_for(field: Field) -> Certification {
    match field {
        Field::Rational => Certification::ExactRational,
        Field::Prime(p) => Certification::ExactPrimeField(p),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaOptions {
    /// Options for the ascending search.
    pub search: DimOptions,
    /// Recompute both boundary degrees exactly.
    pub certify: bool,
    /// Attach one explicit form of degree α (forces an exact kernel).
    pub witness: bool,
}

impl Default for AlphaOptions {
    fn default() -> AlphaOptions {
        AlphaOptions {
            search: DimOptions::default(),
            certify: true,
            witness: false,
        }
    }
}

impl AlphaOptions {
    pub fn fast(seed: u64) -> AlphaOptions {
        AlphaOptions {
            search: DimOptions::with_strategy(Strategy::MultiPrime(2), seed),
            certify: false,
            witness: false,
        }
    }

    pub fn certified(seed: u64) -> AlphaOptions {
        AlphaOptions {
            search: DimOptions::with_strategy(Strategy::MultiPrime(2), seed),
            certify: true,
            witness: false,
        }
    }

    fn exact_opts(&self, kernel: bool) -> DimOptions {
        DimOptions {
            strategy: Strategy::Exact,
            seed: self.search.seed,
            kernel,
        }
    }
}

/// `α(I(mZ))`, searching upwards from `max(start, max m_i)`.
pub fn alpha_from(
    scheme: &FatPointScheme,
    start: u32,
    oracle: &dyn DimOracle,
    opts: &AlphaOptions,
) -> Result<AlphaValue> {
    if scheme.is_trivial() {
        return Err(Error::AllZeroMultiplicities);
    }
    let floor = scheme.max_mult();
    let mut d = start.max(floor);
    let mut search = Vec::new();
    let (alpha, upper, mut witness) = loop {
        let rep = oracle.system_dim(scheme, d, &opts.search)?;
        search.push(DegreeSummary::from(&rep));
        if rep.actual_dim == 0 {
            d += 1;
            continue;
        }
        let expected = expected_dim(scheme, d);
        let need_exact = opts.witness || (opts.certify && expected <= 0);
        if !need_exact {
            let upper = if expected > 0 {
                UpperCertificate::ExpectedDimension { expected_dim: expected }
            } else {
                UpperCertificate::Kernel {
                    certification: rep.certification,
                    dim: rep.actual_dim,
                }
            };
            break (d, upper, None);
        }
        let ex = oracle.system_dim(scheme, d, &opts.exact_opts(true))?;
        if ex.actual_dim == 0 {
            // the modular search was fooled by an unlucky prime
            search.push(DegreeSummary::from(&ex));
            d += 1;
            continue;
        }
        let upper = if expected > 0 {
            UpperCertificate::ExpectedDimension { expected_dim: expected }
        } else {
            UpperCertificate::Kernel {
                certification: ex.certification,
                dim: ex.actual_dim,
            }
        };
        let witness = ex.kernel_basis.and_then(|b| b.into_iter().next());
        break (d, upper, witness);
    };

    let mut alpha = alpha;
    let lower = loop {
        if alpha == 0 || alpha - 1 < floor {
            break LowerCertificate::DegreeBound;
        }
        let below_opts = if opts.certify {
            opts.exact_opts(false)
        } else {
            opts.search
        };
        let below = oracle.system_dim(scheme, alpha - 1, &below_opts)?;
        if below.actual_dim == 0 {
            break LowerCertificate::FullRank {
                certification: below.certification,
            };
        }
        // only reachable through a wrong warm start
        alpha -= 1;
        witness = None;
        search.push(DegreeSummary::from(&below));
    };
    let upper = if alpha == d {
        upper
    } else {
        let rep = oracle.system_dim(scheme, alpha, &opts.exact_opts(false))?;
        UpperCertificate::Kernel {
            certification: rep.certification,
            dim: rep.actual_dim,
        }
    };
    search.sort_by_key(|s| s.degree);
    search.dedup_by_key(|s| s.degree);
    Ok(AlphaValue {
        mults: scheme.mults().to_vec(),
        alpha,
        lower,
        upper,
        witness,
        search,
    })
}

/// `α(I(mZ))`, the least degree of a nonzero form vanishing on the scheme.
pub fn alpha(scheme: &FatPointScheme, oracle: &dyn DimOracle, opts: &AlphaOptions) -> Result<AlphaValue> {
    alpha_from(scheme, 0, oracle, opts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaReport {
    pub field: Field,
    /// `α(mZ)` for `m = 1..=k_max`.
    pub alphas: Vec<u32>,
    /// `α(mZ) - α((m-1)Z)` for `m = 2..=k_max`.
    pub diffs: Vec<i64>,
    pub entries: Vec<AlphaValue>,
    pub strategy: String,
    pub seed: u64,
}

impl AlphaReport {
    pub fn alpha(&self, m: usize) -> u32 {
        self.alphas[m - 1]
    }

    pub fn certified_for_general(&self) -> bool {
        self.entries.iter().all(AlphaValue::certified_for_general)
    }

    /// Weakest certification over the first `k` entries.
    pub fn certification_up_to(&self, k: usize) -> Certification {
        self.entries[..k]
            .iter()
            .map(|e| e.certification(self.field))
            .fold(exact_for(self.field), Certification::weakest)
    }

    pub fn certification(&self) -> Certification {
        self.certification_up_to(self.entries.len())
    }
}

/// `α(Z), α(2Z), ..., α(k_max Z)` with the warm start `α((m+1)Z) > α(mZ)`.
pub fn alpha_sequence(
    field: Field,
    points: &[ProjectivePoint],
    k_max: u32,
    oracle: &dyn DimOracle,
    opts: &AlphaOptions,
) -> Result<AlphaReport> {
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    if points.is_empty() {
        return Err(Error::AllZeroMultiplicities);
    }
    let mut entries: Vec<AlphaValue> = Vec::with_capacity(k_max as usize);
    for m in 1..=k_max {
        let scheme = FatPointScheme::uniform(field, points, m)?;
        let start = entries.last().map_or(0, |e| e.alpha + 1);
        entries.push(alpha_from(&scheme, start, oracle, opts)?);
    }
    let alphas: Vec<u32> = entries.iter().map(|e| e.alpha).collect();
    let diffs = alphas.windows(2).map(|w| w[1] as i64 - w[0] as i64).collect();
    Ok(AlphaReport {
        field,
        alphas,
        diffs,
        entries,
        strategy: opts.search.strategy.to_string(),
        seed: opts.search.seed,
    })
}

/// `α(I(m Z)) - α(I(n Z))` for componentwise `m >= n`, `m != n`. The zero
/// vector has `α = 0`.
pub fn alpha_diff(
    field: Field,
    points: &[ProjectivePoint],
    m_vec: &[u32],
    n_vec: &[u32],
    oracle: &dyn DimOracle,
    opts: &AlphaOptions,
) -> Result<i64> {
    if m_vec.len() != points.len() || n_vec.len() != points.len() {
        return Err(Error::InvalidVectors(
            "vectors must have one entry per point".into(),
        ));
    }
    if m_vec.iter().zip(n_vec).any(|(m, n)| m < n) || m_vec == n_vec {
        return Err(Error::InvalidVectors(format!(
            "need m >= n componentwise and m != n, got {m_vec:?} and {n_vec:?}"
        )));
    }
    let value = |v: &[u32]| -> Result<i64> {
        if v.iter().all(|&x| x == 0) {
            return Ok(0);
        }
        let scheme = FatPointScheme::new(field, points.to_vec(), v.to_vec())?;
        Ok(alpha(&scheme, oracle, opts)?.alpha as i64)
    };
    Ok(value(m_vec)? - value(n_vec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsys::DirectOracle;

    const Q: Field = Field::Rational;

    fn pts(coords: &[[i64; 3]]) -> Vec<ProjectivePoint> {
        coords
            .iter()
            .map(|c| ProjectivePoint::from_ints(Q, *c).unwrap())
            .collect()
    }

    #[test]
    fn single_point_of_multiplicity_k() {
        for k in 1..6 {
            let s = FatPointScheme::new(Q, pts(&[[3, -2, 1]]), vec![k]).unwrap();
            let a = alpha(&s, &DirectOracle, &AlphaOptions::default()).unwrap();
            assert_eq!(a.alpha, k);
            assert_eq!(a.lower, LowerCertificate::DegreeBound);
        }
    }

    #[test]
    fn three_general_double_points() {
        let s = FatPointScheme::uniform(Q, &pts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 2).unwrap();
        let opts = AlphaOptions {
            witness: true,
            ..AlphaOptions::default()
        };
        let a = alpha(&s, &DirectOracle, &opts).unwrap();
        assert_eq!(a.alpha, 3);
        // x y z is the only cubic double at the coordinate points
        let xyz = HomoPoly::from_int_terms(Q, &[([1, 1, 1], 1)]).unwrap();
        assert_eq!(a.witness, Some(xyz));
    }

    #[test]
    fn all_zero_multiplicities_rejected() {
        let s = FatPointScheme::new(Q, pts(&[[1, 0, 0]]), vec![0]).unwrap();
        assert_eq!(
            alpha(&s, &DirectOracle, &AlphaOptions::default()).unwrap_err(),
            Error::AllZeroMultiplicities
        );
    }

    #[test]
    fn diff_validation() {
        let p = pts(&[[1, 0, 0], [0, 1, 0]]);
        let o = AlphaOptions::default();
        assert!(alpha_diff(Q, &p, &[1, 1], &[1, 1], &DirectOracle, &o).is_err());
        assert!(alpha_diff(Q, &p, &[1, 0], &[0, 1], &DirectOracle, &o).is_err());
        assert_eq!(alpha_diff(Q, &p, &[2, 2], &[1, 1], &DirectOracle, &o).unwrap(), 1);
        assert_eq!(alpha_diff(Q, &p, &[1, 1], &[0, 0], &DirectOracle, &o).unwrap(), 1);
    }
}
