//! Classification statements about α sequences turned into checks on
//! computed data, a randomized search harness for the open conic statement,
//! and the registry of reference examples.

mod numeric;
mod registry;
mod search;
mod theorems;

use serde::{Deserialize, Serialize};

pub use numeric::{check_genus_bound, check_high_sing_conditions, GenusBound};
pub use registry::{
    registry, repro, repro_all, CellResult, ExpectedCell, Property, PropertyResult, RegistryEntry,
    ReproReport, Source,
};
pub use search::{conjecture_search, SearchMode, SearchParams, SearchReport, TrialRecord};
pub use theorems::{
    check_all, check_cor_collinear, check_thm_first, check_thm_last, check_thm_only_lines, Evaluator,
};

use crate::configs::PointSet;
use crate::geometry::{ArrangementWitness, Line};
use crate::linsys::{seeded_primes, Certification, Strategy};
use crate::algebra::{Field, HomoPoly, ProjectivePoint};

/// The implications under test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `α(kZ) - α(Z) = k - 1`, `k >= 3`, forces `Z` onto a line.
    CollinearFromTotalGrowth,
    /// `α(kZ) - α((k-1)Z) = 1` forces a line or a line arrangement.
    UnitStepLineArrangement,
    /// Two consecutive unit steps force a line.
    TwoUnitStepsCollinear,
    /// Steps of exactly 2 up to `k >= 5` force a conic.
    StepsOfTwoConic,
    /// Four consecutive steps of 2 force a conic (open).
    ConjectureConic,
    /// Repeated steps of 3 force `α(Z) = 3` (open, exploratory).
    ConjectureCubic,
}

impl Claim {
    pub fn is_open(self) -> bool {
        matches!(self, Claim::ConjectureConic | Claim::ConjectureCubic)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    /// Hypothesis and conclusion both hold.
    Consistent,
    /// Hypothesis fails.
    ConsistentVacuous,
    /// Conclusion fails in a documented sharpness case.
    ConsistentException,
    /// Hypothesis holds at exact certification, conclusion fails.
    Inconsistent,
    /// Conclusion could not be settled (incomplete search, or a field the
    /// statement does not cover).
    Undecided,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<Line>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conic: Option<HomoPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<ArrangementWitness>,
    /// Whether the arrangement search ran to completion.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrangement_exhaustive: Option<bool>,
}

/// Everything needed to rerun a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Repro {
    pub field: Field,
    pub points: Vec<[String; 3]>,
    pub strategy: String,
    pub seed: u64,
    pub primes: Vec<u64>,
}

impl Repro {
    pub(crate) fn new(field: Field, points: &[ProjectivePoint], strategy: Strategy, seed: u64) -> Repro {
        let primes = match (field, strategy) {
            (Field::Rational, Strategy::SinglePrime) => seeded_primes(seed, 1),
            (Field::Rational, Strategy::MultiPrime(k)) => seeded_primes(seed, k as usize),
            _ => Vec::new(),
        };
        Repro {
            field,
            points: PointSet::from_points(field, points).points,
            strategy: strategy.to_string(),
            seed,
            primes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub claim: Claim,
    pub k: u32,
    pub hypothesis_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion_holds: Option<bool>,
    pub outcome: Outcome,
    pub alphas: Vec<u32>,
    pub certification: Certification,
    #[serde(skip_serializing_if = "is_default_witness")]
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub repro: Repro,
}

fn is_default_witness(w: &Witness) -> bool {
    *w == Witness::default()
}

impl TheoremVerdict {
    pub fn is_inconsistent(&self) -> bool {
        self.outcome == Outcome::Inconsistent
    }
}
