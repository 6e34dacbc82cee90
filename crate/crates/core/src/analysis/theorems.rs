use super::{Claim, Outcome, Repro, TheoremVerdict, Witness};
use crate::algebra::{Field, ProjectivePoint};
use crate::error::{Error, Result};
use crate::geometry::{
    are_collinear, common_conic, detect_line_arrangement_with_budget, is_type9, ArrangementSearch, Line,
    DEFAULT_NODE_BUDGET,
};
use crate::linsys::{alpha_sequence, AlphaOptions, AlphaReport, Certification, DimOracle};

struct Conclusion {
    holds: bool,
    witness: Witness,
    /// A documented case where the conclusion is allowed to fail.
    exception: Option<String>,
    /// Why a failure cannot be called a counterexample.
    undecided: Option<String>,
}

impl Conclusion {
    fn plain(holds: bool, witness: Witness) -> Conclusion {
        Conclusion {
            holds,
            witness,
            exception: None,
            undecided: None,
        }
    }
}

/// Computes α data for one configuration once and answers every checker
/// from it. Fast modular data decides hypotheses; any hypothesis that holds
/// is re-decided on exactly certified data before a verdict is issued.
pub struct Evaluator<'a> {
    field: Field,
    points: Vec<ProjectivePoint>,
    oracle: &'a dyn DimOracle,
    opts: AlphaOptions,
    fast: Option<AlphaReport>,
    certified: Option<AlphaReport>,
    collinear: Option<Option<Line>>,
    arrangement: Option<Option<ArrangementSearch>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(field: Field, points: &[ProjectivePoint], oracle: &'a dyn DimOracle, opts: AlphaOptions) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("empty point set".into()));
        }
        Ok(Evaluator {
            field,
            points: points.to_vec(),
            oracle,
            opts,
            fast: None,
            certified: None,
            collinear: None,
            arrangement: None,
        })
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    /// `α(Z), ..., α(kZ)` and their weakest certification.
    pub fn alphas(&mut self, k: u32, certified: bool) -> Result<(Vec<u32>, Certification)> {
        let certified = certified || self.opts.certify;
        let opts = AlphaOptions {
            certify: certified,
            ..self.opts
        };
        let slot = if certified { &mut self.certified } else { &mut self.fast };
        if slot.as_ref().is_none_or(|r| r.alphas.len() < k as usize) {
            *slot = Some(alpha_sequence(self.field, &self.points, k, self.oracle, &opts)?);
        }
        let report = slot.as_ref().expect("just filled");
        Ok((report.alphas[..k as usize].to_vec(), report.certification_up_to(k as usize)))
    }

    fn collinear(&mut self) -> Result<Option<Line>> {
        if self.collinear.is_none() {
            self.collinear = Some(are_collinear(&self.points)?);
        }
        Ok(self.collinear.clone().expect("just filled"))
    }

    fn arrangement(&mut self) -> Result<Option<ArrangementSearch>> {
        if self.arrangement.is_none() {
            self.arrangement = Some(if self.points.len() >= 2 {
                Some(detect_line_arrangement_with_budget(&self.points, DEFAULT_NODE_BUDGET)?)
            } else {
                None
            });
        }
        Ok(self.arrangement.clone().expect("just filled"))
    }

    fn line_conclusion(&mut self) -> Result<Conclusion> {
        let line = self.collinear()?;
        Ok(Conclusion::plain(
            line.is_some(),
            Witness {
                line,
                ..Witness::default()
            },
        ))
    }

    fn conic_conclusion(&mut self) -> Result<Conclusion> {
        let conic = common_conic(&self.points)?;
        Ok(Conclusion::plain(
            conic.is_some(),
            Witness {
                conic,
                ..Witness::default()
            },
        ))
    }

    fn verdict(
        &mut self,
        claim: Claim,
        k: u32,
        needed: u32,
        hypothesis: impl Fn(&[u32]) -> bool,
        conclusion: impl FnOnce(&mut Self, &[u32]) -> Result<Conclusion>,
    ) -> Result<TheoremVerdict> {
        let (mut alphas, mut certification) = self.alphas(needed, false)?;
        let mut holds = hypothesis(&alphas);
        if holds && !certification.is_exact() {
            (alphas, certification) = self.alphas(needed, true)?;
            holds = hypothesis(&alphas);
        }
        let repro = Repro::new(self.field, &self.points, self.opts.search.strategy, self.opts.search.seed);
        if !holds {
            return Ok(TheoremVerdict {
                claim,
                k,
                hypothesis_holds: false,
                conclusion_holds: None,
                outcome: Outcome::ConsistentVacuous,
                alphas,
                certification,
                witness: Witness::default(),
                note: None,
                repro,
            });
        }
        let c = conclusion(self, &alphas)?;
        let (outcome, note) = if c.holds {
            (Outcome::Consistent, None)
        } else if let Some(why) = c.exception {
            (Outcome::ConsistentException, Some(why))
        } else if let Some(why) = c.undecided {
            (Outcome::Undecided, Some(why))
        } else if let Field::Prime(p) = self.field {
            (
                Outcome::Undecided,
                Some(format!("statement is about characteristic 0, data is over F_{p}")),
            )
        } else {
            (Outcome::Inconsistent, None)
        };
        Ok(TheoremVerdict {
            claim,
            k,
            hypothesis_holds: true,
            conclusion_holds: Some(c.holds),
            outcome,
            alphas,
            certification,
            witness: c.witness,
            note,
            repro,
        })
    }

    /// `α(kZ) - α(Z) = k - 1` implies collinear, for `k >= 3`.
    pub fn thm_first(&mut self, k: u32) -> Result<TheoremVerdict> {
        require(k >= 3, "k must be at least 3")?;
        self.verdict(
            Claim::CollinearFromTotalGrowth,
            k,
            k,
            |a| a[k as usize - 1] - a[0] == k - 1,
            |ev, _| ev.line_conclusion(),
        )
    }

    /// `α(kZ) - α((k-1)Z) = 1` implies collinear or the full intersection set
    /// of a line arrangement, for `k >= 2`.
    pub fn thm_only_lines(&mut self, k: u32) -> Result<TheoremVerdict> {
        require(k >= 2, "k must be at least 2")?;
        self.verdict(
            Claim::UnitStepLineArrangement,
            k,
            k,
            |a| a[k as usize - 1] - a[k as usize - 2] == 1,
            |ev, _| {
                let mut c = ev.line_conclusion()?;
                if c.holds {
                    return Ok(c);
                }
                if let Some(search) = ev.arrangement()? {
                    c.witness.arrangement_exhaustive = Some(search.exhaustive);
                    c.holds = search.witness.is_some();
                    if !c.holds && !search.exhaustive {
                        c.undecided = Some(format!(
                            "arrangement search stopped after {} nodes",
                            search.nodes
                        ));
                    }
                    c.witness.arrangement = search.witness;
                }
                Ok(c)
            },
        )
    }

    /// Two consecutive unit steps ending at `k >= 3` imply collinear.
    pub fn cor_collinear(&mut self, k: u32) -> Result<TheoremVerdict> {
        require(k >= 3, "k must be at least 3")?;
        let i = k as usize - 1;
        self.verdict(
            Claim::TwoUnitStepsCollinear,
            k,
            k,
            |a| a[i] - a[i - 1] == 1 && a[i - 1] - a[i - 2] == 1,
            |ev, _| ev.line_conclusion(),
        )
    }

    /// Steps of exactly 2 from `α(Z)` up to `α(k_max Z)` imply a conic when
    /// `k_max >= 5`. With `k_max = 4` six points may also form the triangle
    /// with one extra point per side.
    pub fn thm_last(&mut self, k_max: u32) -> Result<TheoremVerdict> {
        require(k_max >= 4, "k_max must be at least 4")?;
        let r = self.points.len();
        self.verdict(
            Claim::StepsOfTwoConic,
            k_max,
            k_max,
            |a| a.windows(2).all(|w| w[1] - w[0] == 2),
            |ev, a| {
                let mut c = ev.conic_conclusion()?;
                if c.holds || k_max >= 5 {
                    return Ok(c);
                }
                if r != 6 {
                    c.undecided = Some("four values constrain only six-point sets".into());
                } else if a[0] == 3 && is_type9(&ev.points)? {
                    c.exception =
                        Some("six points forming a triangle with one extra point per side".into());
                }
                Ok(c)
            },
        )
    }

    /// Four consecutive steps of 2 ending at `k >= 5` imply a conic.
    pub fn conjecture_conic(&mut self, k: u32) -> Result<TheoremVerdict> {
        require(k >= 5, "k must be at least 5")?;
        let i = k as usize - 1;
        self.verdict(
            Claim::ConjectureConic,
            k,
            k,
            |a| (i - 3..=i).all(|j| a[j] - a[j - 1] == 2),
            |ev, _| ev.conic_conclusion(),
        )
    }

    /// `k` steps of 3 from `α(Z)` imply `α(Z) = 3`.
    pub fn conjecture_cubic(&mut self, k: u32) -> Result<TheoremVerdict> {
        require(k >= 1, "k must be at least 1")?;
        self.verdict(
            Claim::ConjectureCubic,
            k,
            k + 1,
            |a| a.windows(2).all(|w| w[1] - w[0] == 3),
            |_, a| Ok(Conclusion::plain(a[0] == 3, Witness::default())),
        )
    }
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

pub fn check_thm_first(
    field: Field,
    points: &[ProjectivePoint],
    k: u32,
    oracle: &dyn DimOracle,
    opts: &AlphaOptions,
) -> Result<TheoremVerdict> {
    Evaluator::new(field, points, oracle, *opts)?.thm_first(k)
}

pub fn check_thm_only_lines(
    field: Field,
    points: &[ProjectivePoint],
    k: u32,
    oracle: &dyn DimOracle,
    opts: &AlphaOptions,
) -> Result<TheoremVerdict> {
    Evaluator::new(field, points, oracle, *opts)?.thm_only_lines(k)
}

pub fn check_cor_collinear(
    field: Field,
    points: &[ProjectivePoint],
    k: u32,
    oracle: &dyn DimOracle,
    opts: &AlphaOptions,
) -> Result<TheoremVerdict> {
    Evaluator::new(field, points, oracle, *opts)?.cor_collinear(k)
}

pub fn check_thm_last(
    field: Field,
    points: &[ProjectivePoint],
    k_max: u32,
    oracle: &dyn DimOracle,
    opts: &AlphaOptions,
) -> Result<TheoremVerdict> {
    Evaluator::new(field, points, oracle, *opts)?.thm_last(k_max)
}

/// Every proved statement at every admissible `k <= k_max`, sharing one
/// α computation.
pub fn check_all(
    field: Field,
    points: &[ProjectivePoint],
    k_max: u32,
    oracle: &dyn DimOracle,
    opts: &AlphaOptions,
) -> Result<Vec<TheoremVerdict>> {
    let mut ev = Evaluator::new(field, points, oracle, *opts)?;
    let mut out = Vec::new();
    for k in 3..=k_max {
        out.push(ev.thm_first(k)?);
    }
    for k in 2..=k_max {
        out.push(ev.thm_only_lines(k)?);
    }
    for k in 3..=k_max {
        out.push(ev.cor_collinear(k)?);
    }
    if k_max >= 4 {
        out.push(ev.thm_last(k_max)?);
    }
    Ok(out)
}
