//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! All comparisons are exact integer equalities. A criterion listed in
//! `KNOWN_FAILURES` still prints FAIL; the run only fails if another
//! criterion fails or a known failure starts passing.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fatpoints_core::algebra::{monomial_basis, Field, HomoPoly, ProjectivePoint, Scalar};
use fatpoints_core::analysis::{
    check_all, check_thm_last, conjecture_search, Outcome, SearchMode, SearchParams, TheoremVerdict,
};
use fatpoints_core::configs::{
    collinear, dual_hesse, general, generate, nagata16, on_conic, star, star_minus_one, type9, ConfigSpec,
    Family, DEFAULT_HEIGHT,
};
use fatpoints_core::geometry::{common_conic, detect_line_arrangement, is_star_configuration, is_type9};
use fatpoints_core::linsys::{
    alpha_sequence, system_dim, AlphaOptions, AlphaReport, Certification, DimOptions, DirectOracle,
    FatPointScheme, LowerCertificate, Strategy, UpperCertificate,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Runtime target for the whole suite.
const TIME_BUDGET: Duration = Duration::from_secs(300);
/// Property cases per suite.
const CASES: u64 = 100;
/// Random configurations for the theorem self-consistency run.
const RANDOM_CONFIGS: u64 = 500;
const SEARCH_TRIALS: u32 = 200;
const SEED: u64 = 2024;

/// Criteria that cannot hold as stated, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    5,
    "the nine lines form a degree-9 curve triple at all twelve points, so alpha(3Z) <= 9",
)];

const Q: Field = Field::Rational;

type CriterionResult = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> CriterionResult);

fn certified() -> AlphaOptions {
    AlphaOptions::certified(SEED)
}

fn seq(field: Field, pts: &[ProjectivePoint], k: u32) -> Result<AlphaReport, String> {
    alpha_sequence(field, pts, k, &DirectOracle, &certified()).map_err(|e| e.to_string())
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn all_sides_exact(rep: &AlphaReport) -> Result<(), String> {
    for e in &rep.entries {
        let lower_ok = match &e.lower {
            LowerCertificate::DegreeBound => true,
            LowerCertificate::FullRank { certification } => certification.is_exact(),
        };
        let upper_ok = match &e.upper {
            UpperCertificate::ExpectedDimension { expected_dim } => *expected_dim > 0,
            UpperCertificate::Kernel { certification, dim } => certification.is_exact() && *dim > 0,
        };
        if !(lower_ok && upper_ok) {
            return Err(format!("alpha({}Z) not certified on both sides: {e:?}", e.mults[0]));
        }
    }
    Ok(())
}

fn c1() -> CriterionResult {
    let pts = general(3, 1, DEFAULT_HEIGHT).map_err(|e| e.to_string())?;
    let rep = seq(Q, &pts, 8)?;
    expect_eq("alphas", rep.alphas.clone(), vec![2, 3, 5, 6, 8, 9, 11, 12])?;
    all_sides_exact(&rep)?;
    Ok(format!("alpha = {} with exact certificates on both sides", join(&rep.alphas)))
}

fn c2() -> CriterionResult {
    let rep = seq(Q, &on_conic(6).map_err(|e| e.to_string())?, 6)?;
    expect_eq("alphas", rep.alphas.clone(), (1..=6).map(|k| 2 * k).collect())?;
    all_sides_exact(&rep)?;
    Ok(format!("alpha = {}", join(&rep.alphas)))
}

fn c3() -> CriterionResult {
    let pts = general(6, 42, DEFAULT_HEIGHT).map_err(|e| e.to_string())?;
    let rep = seq(Q, &pts, 5)?;
    expect_eq("alpha(3Z), alpha(4Z), alpha(5Z)", &rep.alphas[2..], &[8, 10, 12][..])?;
    all_sides_exact(&rep)?;
    let two = &rep.entries[1];
    let cert = two.certification(Q);
    expect_eq("alpha(2Z) certification", cert, Certification::ExactRational)?;
    Ok(format!(
        "alpha = {}; alpha(2Z) = {} settled at {cert}",
        join(&rep.alphas),
        two.alpha
    ))
}

fn c4() -> CriterionResult {
    let pts = type9(None).map_err(|e| e.to_string())?;
    let rep = seq(Q, &pts, 5)?;
    expect_eq("alphas", rep.alphas.clone(), vec![3, 5, 7, 9, 12])?;
    expect_eq("is_type9", is_type9(&pts).map_err(|e| e.to_string())?, true)?;
    expect_eq("common conic", common_conic(&pts).map_err(|e| e.to_string())?.is_some(), false)?;
    Ok(format!("alpha = {}, type9 detected, no conic", join(&rep.alphas)))
}

fn c5() -> CriterionResult {
    let mut notes = Vec::new();
    let mut errors = Vec::new();
    for p in [31u64, 13] {
        let (pts, lines) = dual_hesse(p).map_err(|e| e.to_string())?;
        let per_point: BTreeSet<usize> = pts.iter().map(|q| lines.iter().filter(|l| l.contains(q)).count()).collect();
        let per_line: BTreeSet<usize> = lines.iter().map(|l| pts.iter().filter(|q| l.contains(q)).count()).collect();
        expect_eq("incidence", (pts.len(), lines.len(), per_point, per_line), (12, 9, BTreeSet::from([3]), BTreeSet::from([4])))?;
        let field = Field::prime(p).map_err(|e| e.to_string())?;
        let rep = seq(field, &pts, 3)?;
        notes.push(format!("F_{p}: (12_3, 9_4), alpha(2Z) = {}, alpha(3Z) = {}", rep.alphas[1], rep.alphas[2]));
        if let Err(e) = expect_eq(&format!("F_{p} alpha(2Z), alpha(3Z)"), &rep.alphas[1..3], &[8, 10][..]) {
            errors.push(e);
        }
    }
    if errors.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{}; {}", errors.join("; "), notes.join("; ")))
    }
}

fn c6() -> CriterionResult {
    let mut out = Vec::new();
    for p in [3usize, 4, 5] {
        let (pts, _) = star(p, 1, DEFAULT_HEIGHT).map_err(|e| e.to_string())?;
        let rep = seq(Q, &pts, 2)?;
        let p32 = p as u32;
        expect_eq(&format!("star({p}) alpha(Z), alpha(2Z)"), rep.alphas.clone(), vec![p32 - 1, p32])?;
        let arr = detect_line_arrangement(&pts).map_err(|e| e.to_string())?;
        expect_eq(&format!("star({p}) arrangement lines"), arr.map(|w| w.lines.len()), Some(p))?;
        let st = is_star_configuration(&pts).map_err(|e| e.to_string())?;
        expect_eq(&format!("star({p}) detector"), st.map(|(q, _)| q), Some(p))?;
        out.push(format!("p={p}: {}", join(&rep.alphas)));
    }
    Ok(format!("{}; alpha_2,1 = 1, arrangement and star detected", out.join(", ")))
}

fn c7() -> CriterionResult {
    let mut out = Vec::new();
    for d in [4usize, 5] {
        let pts = star_minus_one(d, 1, DEFAULT_HEIGHT).map_err(|e| e.to_string())?;
        let rep = seq(Q, &pts, 2)?;
        let d32 = d as u32;
        expect_eq(&format!("d={d}"), rep.alphas.clone(), vec![d32 - 2, d32])?;
        out.push(format!("d={d}: {}", join(&rep.alphas)));
    }
    Ok(out.join(", "))
}

fn c8() -> CriterionResult {
    let pts = nagata16(7).map_err(|e| e.to_string())?;
    let rep = seq(Q, &pts, 4)?;
    expect_eq("alphas", rep.alphas.clone(), vec![5, 9, 13, 17])?;
    let mut certs = Vec::new();
    for k in 1..=4u32 {
        let scheme = FatPointScheme::uniform(Q, &pts, k).map_err(|e| e.to_string())?;
        let (strategy, want) = if k <= 2 {
            (Strategy::Exact, Certification::ExactRational)
        } else {
            (Strategy::MultiPrime(3), Certification::MultiPrime(3))
        };
        let r = system_dim(&scheme, 4 * k, &DimOptions::with_strategy(strategy, SEED)).map_err(|e| e.to_string())?;
        expect_eq(&format!("degree {} empty", 4 * k), r.actual_dim, 0)?;
        expect_eq(&format!("degree {} certification", 4 * k), r.certification, want)?;
        certs.push(format!("{}:{}", 4 * k, r.certification));
    }
    Ok(format!("alpha = {}; full rank at {}", join(&rep.alphas), certs.join(", ")))
}

fn random_points(rng: &mut ChaCha8Rng, field: Field, max_r: usize, h: i64) -> Vec<ProjectivePoint> {
    let r = rng.gen_range(1..=max_r);
    let mut set = BTreeSet::new();
    while set.len() < r {
        let c = [0; 3].map(|_| rng.gen_range(-h..=h));
        if let Ok(p) = ProjectivePoint::from_ints(field, c) {
            set.insert(p);
        }
    }
    set.into_iter().collect()
}

fn random_form(rng: &mut ChaCha8Rng, field: Field, d: u32, h: i64) -> HomoPoly {
    let coeffs: Vec<Scalar> = monomial_basis(d).iter().map(|_| Scalar::from_i64(field, rng.gen_range(-h..=h))).collect();
    HomoPoly::from_coefficients(field, d, &coeffs).expect("basis-sized")
}

/// Random form times `j` lines through `p`.
fn form_through(rng: &mut ChaCha8Rng, p: &ProjectivePoint, d: u32, j: u32) -> HomoPoly {
    let mut f = random_form(rng, Q, d - j, 4);
    for _ in 0..j {
        let q = random_points(rng, Q, 1, 5).remove(0);
        let line = HomoPoly::linear(&ProjectivePoint::cross(p.coords(), q.coords()));
        if !line.is_zero() {
            f = f.mul(&line).expect("same field");
        }
    }
    f
}

fn cases<F>(name: &str, f: F) -> Result<String, String>
where
    F: Fn(u64, &mut ChaCha8Rng) -> Result<(), String> + Sync,
{
    (0..CASES)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (i << 8));
            f(i, &mut rng).map_err(|e| format!("{name} case {i}: {e}"))
        })
        .collect::<Result<Vec<()>, String>>()?;
    Ok(format!("{name} {CASES}"))
}

fn c9() -> CriterionResult {
    let mut done = Vec::new();
    done.push(cases("growth", |_, rng| {
        let pts = random_points(rng, Q, 6, 4);
        let a = seq(Q, &pts, 4)?.alphas;
        if a.windows(2).all(|w| w[1] > w[0]) {
            Ok(())
        } else {
            Err(format!("{a:?}"))
        }
    })?);
    done.push(cases("subadditivity", |_, rng| {
        let pts = random_points(rng, Q, 6, 4);
        let a = seq(Q, &pts, 4)?.alphas;
        for m in 1..=3usize {
            for n in 1..=4 - m {
                if a[m + n - 1] > a[m - 1] + a[n - 1] {
                    return Err(format!("{a:?} at m={m}, n={n}"));
                }
            }
        }
        Ok(())
    })?);
    done.push(cases("alpha_k1 >= k-1", |_, rng| {
        let pts = random_points(rng, Q, 5, 3);
        let a = seq(Q, &pts, 6)?.alphas;
        if (1..=6).all(|k| a[k - 1] - a[0] >= k as u32 - 1) {
            Ok(())
        } else {
            Err(format!("{a:?}"))
        }
    })?);
    done.push(cases("superabundance", |_, rng| {
        let pts = random_points(rng, Q, 6, 6);
        let mults: Vec<u32> = pts.iter().map(|_| rng.gen_range(0..=3)).collect();
        let d = rng.gen_range(0..=8);
        let scheme = FatPointScheme::new(Q, pts, mults).map_err(|e| e.to_string())?;
        let r = system_dim(&scheme, d, &DimOptions::with_strategy(Strategy::Exact, SEED)).map_err(|e| e.to_string())?;
        if r.certification == Certification::ExactRational && r.superabundance >= 0 {
            Ok(())
        } else {
            Err(format!("{r:?}"))
        }
    })?);
    done.push(cases("oracle equivalence", |i, rng| {
        // p > d keeps the derivative conditions valid
        let (p, d) = [(2u64, 0u32), (2, 1), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)][i as usize % 7];
        let field = Field::prime(p).map_err(|e| e.to_string())?;
        let pts = random_points(rng, field, 3, p as i64);
        let mults: Vec<u32> = pts.iter().map(|_| rng.gen_range(1..=2u32.min(p as u32 - 1))).collect();
        let scheme = FatPointScheme::new(field, pts.clone(), mults.clone()).map_err(|e| e.to_string())?;
        let dim = system_dim(&scheme, d, &DimOptions::default()).map_err(|e| e.to_string())?.actual_dim;
        let n = monomial_basis(d).len() as u32;
        let mut count = 0u64;
        for code in 0..p.pow(n) {
            let coeffs: Vec<Scalar> = (0..n).map(|j| Scalar::from_i64(field, ((code / p.pow(j)) % p) as i64)).collect();
            let f = HomoPoly::from_coefficients(field, d, &coeffs).map_err(|e| e.to_string())?;
            let ok = pts.iter().zip(&mults).all(|(q, &m)| {
                f.evaluate(q).map(|v| v.is_zero()).unwrap_or(false)
                    && f.order_of_vanishing(q).map(|o| o.at_least(m)).unwrap_or(false)
            });
            count += u64::from(ok);
        }
        if count == p.pow(dim as u32) {
            Ok(())
        } else {
            Err(format!("F_{p}, d={d}: {count} vanishing forms vs dimension {dim}"))
        }
    })?);
    done.push(cases("order <-> derivatives", |_, rng| {
        let d = rng.gen_range(1..=6u32);
        let j = rng.gen_range(0..=d);
        let p = random_points(rng, Q, 1, 5).remove(0);
        let f = form_through(rng, &p, d, j);
        if f.is_zero() {
            return Ok(());
        }
        let ord = f.order_of_vanishing(&p).map_err(|e| e.to_string())?;
        for m in 1..=f.degree() {
            let vanish = f
                .partials_of_order(m - 1)
                .map_err(|e| e.to_string())?
                .iter()
                .all(|g| g.evaluate(&p).map(|v| v.is_zero()).unwrap_or(false));
            if vanish != ord.at_least(m) {
                return Err(format!("f = {f}, m = {m}, order {ord}"));
            }
        }
        Ok(())
    })?);
    Ok(format!("cases: {}", done.join(", ")))
}

/// Theorem checks run to `k <= 5`; over 𝔽_13 the search degrees for `k = 5`
/// would reach the characteristic already at `k = 4`, so that field stops at
/// `k = 3`.
fn k_max_for(field: Field) -> u32 {
    match field {
        Field::Prime(p) if p < 31 => 3,
        _ => 5,
    }
}

fn family_configs() -> Result<Vec<(String, Field, Vec<ProjectivePoint>)>, String> {
    let mut out = Vec::new();
    let e = |e: fatpoints_core::Error| e.to_string();
    for r in 1..=6 {
        out.push((format!("collinear({r})"), Q, collinear(r).map_err(e)?));
    }
    for r in 3..=8 {
        out.push((format!("on_conic({r})"), Q, on_conic(r).map_err(e)?));
    }
    for r in 2..=7 {
        out.push((format!("general({r})"), Q, general(r, SEED, DEFAULT_HEIGHT).map_err(e)?));
    }
    for p in 3..=5 {
        out.push((format!("star({p})"), Q, star(p, SEED, DEFAULT_HEIGHT).map_err(e)?.0));
    }
    for d in 4..=5 {
        out.push((format!("star_minus_one({d})"), Q, star_minus_one(d, SEED, DEFAULT_HEIGHT).map_err(e)?));
    }
    out.push(("type9".into(), Q, type9(None).map_err(e)?));
    out.push(("type9(seed)".into(), Q, type9(Some(SEED)).map_err(e)?));
    out.push(("nagata16".into(), Q, nagata16(7).map_err(e)?));
    for p in [13, 31] {
        out.push((format!("dual_hesse({p})"), Field::prime(p).map_err(e)?, dual_hesse(p).map_err(e)?.0));
    }
    for spec in [
        ConfigSpec { d: Some(4), prime: Some(17), seed: Some(1), ..ConfigSpec::new(Family::NodalCurveNodes) },
        ConfigSpec { d: Some(2), d2: Some(3), prime: Some(31), seed: Some(5), ..ConfigSpec::new(Family::TwoNodalUnion) },
    ] {
        let c = generate(&spec).map_err(e)?.ok_or("nodal generator exhausted its retries")?;
        out.push((format!("{}", c.family), c.field, c.points));
    }
    Ok(out)
}

fn c10() -> CriterionResult {
    let mut subjects = family_configs()?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..RANDOM_CONFIGS {
        subjects.push((format!("random #{i}"), Q, random_points(&mut rng, Q, 8, 3)));
    }
    let verdicts: Vec<(String, Vec<TheoremVerdict>)> = subjects
        .par_iter()
        .map(|(name, field, pts)| {
            check_all(*field, pts, k_max_for(*field), &DirectOracle, &AlphaOptions::fast(SEED))
                .map(|v| (name.clone(), v))
                .map_err(|e| format!("{name}: {e}"))
        })
        .collect::<Result<_, String>>()?;
    let mut total = 0;
    let mut hyp_true = 0;
    let mut undecided = 0;
    for (name, vs) in &verdicts {
        for v in vs {
            total += 1;
            hyp_true += usize::from(v.hypothesis_holds);
            undecided += usize::from(v.outcome == Outcome::Undecided);
            if v.outcome == Outcome::Inconsistent {
                return Err(format!("{name}: inconsistent {:?} at k={} ({:?})", v.claim, v.k, v.alphas));
            }
            if v.hypothesis_holds && !v.certification.is_exact() {
                return Err(format!("{name}: hypothesis decided at {}", v.certification));
            }
        }
    }
    let t9 = check_thm_last(Q, &type9(None).map_err(|e| e.to_string())?, 4, &DirectOracle, &certified())
        .map_err(|e| e.to_string())?;
    expect_eq("type9 k_max=4", t9.outcome, Outcome::ConsistentException)?;
    Ok(format!(
        "{} configurations, {total} verdicts, {hyp_true} with true hypothesis, 0 inconsistent, {undecided} undecided; type9 is the k_max=4 exception",
        verdicts.len()
    ))
}

fn c11() -> CriterionResult {
    let params = SearchParams::new(SearchMode::Conic, SEARCH_TRIALS, SEED);
    let a = conjecture_search(&params, &DirectOracle).map_err(|e| e.to_string())?;
    let b = conjecture_search(&params, &DirectOracle).map_err(|e| e.to_string())?;
    let ja = serde_json::to_string(&a).map_err(|e| e.to_string())?;
    let jb = serde_json::to_string(&b).map_err(|e| e.to_string())?;
    expect_eq("byte-identical rerun", ja == jb, true)?;
    expect_eq("inconsistent", a.inconsistent.len(), 0)?;
    if a.hypothesis_true.iter().any(|t| !t.verdict.certification.is_exact()) {
        return Err("a logged instance is not exactly certified".into());
    }
    let controls: Vec<String> = a
        .controls
        .iter()
        .map(|c| format!("{} {:?}", c.label, c.verdict.outcome))
        .collect();
    Ok(format!(
        "{} trials, {} hypothesis-true instances logged, 0 inconsistent, {} bytes reproducible; controls: {}",
        a.trials_run,
        a.hypothesis_true.len(),
        ja.len(),
        controls.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "3 general points", c1),
        (2, "6 points on a conic", c2),
        (3, "6 general points", c3),
        (4, "type-9 configuration", c4),
        (5, "dual Hesse over F_31 and F_13", c5),
        (6, "stars of 3, 4, 5 lines", c6),
        (7, "lines minus one intersection", c7),
        (8, "16 general points", c8),
        (9, "property suites", c9),
        (10, "checker self-consistency", c10),
        (11, "conjecture harness", c11),
    ];
    let start = Instant::now();
    let mut unexpected = 0;
    for (n, name, run) in criteria {
        let t = Instant::now();
        let result = run();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        let secs = t.elapsed().as_secs_f64();
        match (&result, known) {
            (Ok(msg), None) => println!("criterion {n:>2} PASS [{name}] {msg} ({secs:.1}s)"),
            (Err(msg), Some((_, why))) => {
                println!("criterion {n:>2} FAIL [{name}] {msg} (known: {why}) ({secs:.1}s)")
            }
            (Err(msg), None) => {
                unexpected += 1;
                println!("criterion {n:>2} FAIL [{name}] {msg} ({secs:.1}s)");
            }
            (Ok(msg), Some(_)) => {
                unexpected += 1;
                println!("criterion {n:>2} PASS [{name}] {msg}; listed as a known failure, update KNOWN_FAILURES ({secs:.1}s)");
            }
        }
    }
    let total = start.elapsed();
    let in_budget = total <= TIME_BUDGET;
    println!(
        "acceptance runtime {:.1}s ({} the {}s target)",
        total.as_secs_f64(),
        if in_budget { "within" } else { "over" },
        TIME_BUDGET.as_secs()
    );
    if unexpected == 0 && in_budget {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
