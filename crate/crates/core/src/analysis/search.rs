use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::theorems::Evaluator;
use super::{Outcome, TheoremVerdict};
use crate::algebra::{Field, ProjectivePoint};
use crate::configs::{attempt_rng, nagata16, on_conic, PointSet, SCHEMA};
use crate::error::{Error, Result};
use crate::linsys::{AlphaOptions, DimOracle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Four consecutive steps of 2 and a common conic.
    Conic,
    /// Steps of 3 and `α(Z) = 3` (exploratory).
    Cubic,
}

impl SearchMode {
    pub fn from_step(step: u32) -> Result<SearchMode> {
        match step {
            2 => Ok(SearchMode::Conic),
            3 => Ok(SearchMode::Cubic),
            _ => Err(Error::InvalidParameter(format!("search mode must be 2 or 3, got {step}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub mode: SearchMode,
    pub trials: u32,
    pub r_min: usize,
    pub r_max: usize,
    pub k: u32,
    pub seed: u64,
    /// Coordinate bound; small values make special position likely.
    pub height: i64,
    pub field: Field,
    /// Also run the fixed control configurations.
    pub controls: bool,
}

impl SearchParams {
    pub fn new(mode: SearchMode, trials: u32, seed: u64) -> SearchParams {
        SearchParams {
            mode,
            trials,
            r_min: 4,
            r_max: 9,
            k: match mode {
                SearchMode::Conic => 5,
                SearchMode::Cubic => 3,
            },
            seed,
            height: 3,
            field: Field::Rational,
            controls: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    /// Trial index, or the control name.
    pub label: String,
    pub r: usize,
    pub alphas: Vec<u32>,
    pub verdict: TheoremVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub schema: &'static str,
    pub params: SearchParams,
    pub trials_run: u32,
    /// Trials whose hypothesis held, in trial order.
    pub hypothesis_true: Vec<TrialRecord>,
    /// Exactly certified failures of the conclusion.
    pub inconsistent: Vec<TrialRecord>,
    pub controls: Vec<TrialRecord>,
}

fn trial_points(params: &SearchParams, index: u32) -> Result<Vec<ProjectivePoint>> {
    let mut rng = attempt_rng(params.seed, u64::from(index));
    let r = rng.gen_range(params.r_min..=params.r_max);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(r);
    for _ in 0..100_000 {
        if out.len() == r {
            return Ok(out);
        }
        let c = [0; 3].map(|_| rng.gen_range(-params.height..=params.height));
        if let Ok(p) = ProjectivePoint::from_ints(params.field, c) {
            if seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    Err(Error::InvalidParameter(format!(
        "height {} leaves fewer than {r} distinct points",
        params.height
    )))
}

fn run_one(
    label: String,
    field: Field,
    points: &[ProjectivePoint],
    params: &SearchParams,
    oracle: &dyn DimOracle,
) -> Result<TrialRecord> {
    let opts = AlphaOptions::fast(params.seed);
    let mut ev = Evaluator::new(field, points, oracle, opts)?;
    let verdict = match params.mode {
        SearchMode::Conic => ev.conjecture_conic(params.k)?,
        SearchMode::Cubic => ev.conjecture_cubic(params.k)?,
    };
    Ok(TrialRecord {
        label,
        r: points.len(),
        alphas: verdict.alphas.clone(),
        verdict,
    })
}

/// Random configurations tested against an open implication. Hits are
/// certified exactly before they are logged as inconsistent. The report
/// depends only on the parameters.
pub fn conjecture_search(params: &SearchParams, oracle: &dyn DimOracle) -> Result<SearchReport> {
    if params.trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if params.r_min == 0 || params.r_min > params.r_max {
        return Err(Error::InvalidParameter(format!(
            "bad point-count range {}..={}",
            params.r_min, params.r_max
        )));
    }
    if params.mode == SearchMode::Conic && params.k < 5 {
        return Err(Error::InvalidParameter("the conic search needs k >= 5".into()));
    }
    let records = (0..params.trials)
        .into_par_iter()
        .map(|i| {
            let pts = trial_points(params, i)?;
            run_one(i.to_string(), params.field, &pts, params, oracle)
        })
        .collect::<Result<Vec<TrialRecord>>>()?;
    let mut controls = Vec::new();
    if params.controls {
        let q = Field::Rational;
        controls.push(run_one("on_conic(8)".into(), q, &on_conic(8)?, params, oracle)?);
        controls.push(run_one(
            format!("nagata16(seed {})", params.seed),
            q,
            &nagata16(params.seed)?,
            params,
            oracle,
        )?);
    }
    let hypothesis_true: Vec<TrialRecord> = records
        .into_iter()
        .filter(|t| t.verdict.hypothesis_holds)
        .collect();
    let inconsistent = hypothesis_true
        .iter()
        .filter(|t| t.verdict.outcome == Outcome::Inconsistent)
        .cloned()
        .collect();
    Ok(SearchReport {
        schema: SCHEMA,
        params: params.clone(),
        trials_run: params.trials,
        hypothesis_true,
        inconsistent,
        controls,
    })
}

impl TrialRecord {
    pub fn point_set(&self) -> PointSet {
        PointSet {
            schema: SCHEMA.to_string(),
            field: self.verdict.repro.field,
            points: self.verdict.repro.points.clone(),
            mults: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsys::DirectOracle;

    #[test]
    fn small_run_is_reproducible() {
        let mut params = SearchParams::new(SearchMode::Conic, 12, 5);
        params.controls = false;
        let a = conjecture_search(&params, &DirectOracle).unwrap();
        let b = conjecture_search(&params, &DirectOracle).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.inconsistent.is_empty());
    }

    #[test]
    fn controls_behave() {
        let mut params = SearchParams::new(SearchMode::Conic, 1, 7);
        params.r_max = 4;
        let rep = conjecture_search(&params, &DirectOracle).unwrap();
        let conic = &rep.controls[0].verdict;
        assert!(conic.hypothesis_holds);
        assert_eq!(conic.outcome, Outcome::Consistent);
        let nagata = &rep.controls[1].verdict;
        assert!(!nagata.hypothesis_holds);
        assert!(nagata.alphas.windows(2).all(|w| w[1] - w[0] == 4));
    }

    #[test]
    fn bad_parameters() {
        let params = SearchParams::new(SearchMode::Conic, 0, 1);
        assert!(conjecture_search(&params, &DirectOracle).is_err());
        assert!(SearchMode::from_step(4).is_err());
    }
}
