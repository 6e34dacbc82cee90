//! One function per subcommand. Each returns the process exit code.

use std::path::PathBuf;

use fatpoints_core::algebra::Field;
use fatpoints_core::analysis::{
    check_all, conjecture_search, registry, repro, repro_all, Outcome, ReproReport, SearchMode, SearchParams,
    TheoremVerdict,
};
use fatpoints_core::geometry::{rich_lines, Line};
use fatpoints_core::linsys::{
    alpha, alpha_sequence, AlphaOptions, AlphaReport, AlphaValue, Certification, DimOptions, DimOracle, DirectOracle,
    FatPointScheme, LinearSystemReport, LowerCertificate, Strategy, UpperCertificate,
};
use fatpoints_core::{Error, Result};
use serde::Serialize;

use crate::args::{AlphaArgs, Common, DimArgs, GenerateArgs, PlotArgs, ReproArgs, SearchArgs, SeqArgs};
use crate::cache::CachedOracle;
use crate::input::{multiplicities, resolve, Input};
use crate::output::{csv, emit, json, table, write_file};
use crate::plot::svg;

pub const OK: u8 = 0;
pub const FAILURE: u8 = 1;
/// A result was produced but part of it is not exactly certified.
pub const GAP: u8 = 2;

pub const CACHE_ENV: &str = "FATPOINTS_CACHE";

enum Oracle {
    Direct,
    Cached(CachedOracle),
}

impl Oracle {
    fn open(common: &Common) -> Result<Oracle> {
        let dir = std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| common.cache.clone());
        match dir {
            Some(dir) => Ok(Oracle::Cached(CachedOracle::new(dir, common.verify_cache)?)),
            None if common.verify_cache => Err(Error::InvalidParameter(
                "--verify-cache needs --cache or FATPOINTS_CACHE".into(),
            )),
            None => Ok(Oracle::Direct),
        }
    }

    fn get(&self) -> &dyn DimOracle {
        match self {
            Oracle::Direct => &DirectOracle,
            Oracle::Cached(c) => c,
        }
    }

    /// Verification summary on stderr, so stdout is the same with or
    /// without a cache.
    fn finish(&self) {
        if let Oracle::Cached(c) = self {
            let s = c.stats();
            if s.verified > 0 {
                eprintln!("cache: {} hits recomputed and identical, {} misses", s.verified, s.misses);
            }
        }
    }
}

/// Default: modular search, exact boundary degrees. An explicit modular
/// strategy skips the exact step.
fn alpha_options(common: &Common) -> AlphaOptions {
    match common.strategy {
        None => AlphaOptions::certified(common.seed),
        Some(Strategy::Exact) => AlphaOptions {
            search: DimOptions::with_strategy(Strategy::Exact, common.seed),
            certify: true,
            witness: false,
        },
        Some(s) => AlphaOptions {
            search: DimOptions::with_strategy(s, common.seed),
            certify: false,
            witness: false,
        },
    }
}

fn lower_text(c: &LowerCertificate) -> String {
    match c {
        LowerCertificate::DegreeBound => "degree bound".into(),
        LowerCertificate::FullRank { certification } => format!("full rank {certification}"),
    }
}

fn upper_text(c: &UpperCertificate) -> String {
    match c {
        UpperCertificate::ExpectedDimension { expected_dim } => format!("expected dim {expected_dim}"),
        UpperCertificate::Kernel { certification, dim } => format!("kernel dim {dim} {certification}"),
    }
}

fn gap_unless(exact: bool) -> u8 {
    if exact {
        OK
    } else {
        eprintln!("warning: some values rest on modular ranks only");
        GAP
    }
}

#[derive(Serialize)]
struct AlphaBody<'a> {
    field: Field,
    points: usize,
    #[serde(flatten)]
    value: &'a AlphaValue,
    certification: Certification,
    exact: bool,
    /// Both bounds hold for general points, not only for this witness.
    certified_for_general: bool,
}

pub fn cmd_alpha(args: &AlphaArgs) -> Result<u8> {
    let input = resolve(&args.source, args.d, args.common.seed)?;
    let mults = multiplicities(&args.mults, &input)?;
    let scheme = FatPointScheme::new(input.field, input.points.clone(), mults)?;
    let oracle = Oracle::open(&args.common)?;
    let opts = AlphaOptions {
        witness: args.witness,
        ..alpha_options(&args.common)
    };
    let value = alpha(&scheme, oracle.get(), &opts)?;
    oracle.finish();
    let text = if args.common.pretty {
        let mut rows = vec![vec!["degree".into(), "expected".into(), "actual".into(), "certification".into()]];
        for s in &value.search {
            rows.push(vec![
                s.degree.to_string(),
                s.expected_dim.to_string(),
                s.actual_dim.to_string(),
                s.certification.to_string(),
            ]);
        }
        let mut t = format!(
            "alpha = {}\nlower: {}\nupper: {}\n",
            value.alpha,
            lower_text(&value.lower),
            upper_text(&value.upper)
        );
        if let Some(w) = &value.witness {
            t.push_str(&format!("witness: {w}\n"));
        }
        t.push('\n');
        t.push_str(&table(&rows));
        t
    } else {
        json(
            "alpha",
            AlphaBody {
                field: input.field,
                points: input.points.len(),
                value: &value,
                certification: value.certification(input.field),
                exact: value.is_exact(),
                certified_for_general: value.certified_for_general(),
            },
        )
    };
    emit(args.common.out.as_ref(), &text)?;
    Ok(gap_unless(value.is_exact()))
}

#[derive(Serialize)]
struct SeqBody<'a> {
    points: usize,
    #[serde(flatten)]
    report: &'a AlphaReport,
    certification: Certification,
    certified_for_general: bool,
}

fn seq_rows(report: &AlphaReport) -> Vec<Vec<String>> {
    let mut rows = vec![vec![
        "k".into(),
        "alpha".into(),
        "diff".into(),
        "lower".into(),
        "upper".into(),
    ]];
    for (i, e) in report.entries.iter().enumerate() {
        rows.push(vec![
            (i + 1).to_string(),
            e.alpha.to_string(),
            if i == 0 { String::new() } else { report.diffs[i - 1].to_string() },
            lower_text(&e.lower),
            upper_text(&e.upper),
        ]);
    }
    rows
}

pub fn cmd_alphaseq(args: &SeqArgs) -> Result<u8> {
    let input = resolve(&args.source, args.d, args.common.seed)?;
    let oracle = Oracle::open(&args.common)?;
    let report = alpha_sequence(input.field, &input.points, args.kmax, oracle.get(), &alpha_options(&args.common))?;
    oracle.finish();
    let certification = report.certification();
    let text = if args.csv {
        csv(&seq_rows(&report))
    } else if args.common.pretty {
        let alphas: Vec<String> = report.alphas.iter().map(u32::to_string).collect();
        format!("alpha: {}\n\n{}", alphas.join(","), table(&seq_rows(&report)))
    } else {
        json(
            "alphaseq",
            SeqBody {
                points: input.points.len(),
                report: &report,
                certification,
                certified_for_general: report.certified_for_general(),
            },
        )
    };
    emit(args.common.out.as_ref(), &text)?;
    Ok(gap_unless(certification.is_exact()))
}

#[derive(Serialize)]
struct DimBody<'a> {
    field: Field,
    points: usize,
    mults: &'a [u32],
    #[serde(flatten)]
    report: &'a LinearSystemReport,
}

fn dim_report(args: &DimArgs, kernel: bool) -> Result<(Input, Vec<u32>, LinearSystemReport)> {
    let input = resolve(&args.source, None, args.common.seed)?;
    let mults = multiplicities(&args.mults, &input)?;
    let scheme = FatPointScheme::new(input.field, input.points.clone(), mults.clone())?;
    let strategy = if kernel {
        Strategy::Exact
    } else {
        args.common.strategy.unwrap_or(Strategy::Exact)
    };
    let opts = DimOptions {
        kernel,
        ..DimOptions::with_strategy(strategy, args.common.seed)
    };
    let oracle = Oracle::open(&args.common)?;
    let report = oracle.get().system_dim(&scheme, args.d, &opts)?;
    oracle.finish();
    Ok((input, mults, report))
}

pub fn cmd_dim(args: &DimArgs) -> Result<u8> {
    let (input, mults, report) = dim_report(args, false)?;
    let text = if args.common.pretty {
        table(&[
            vec!["degree".into(), "expected".into(), "actual".into(), "superabundance".into(), "certification".into()],
            vec![
                report.degree.to_string(),
                report.expected_dim.to_string(),
                report.actual_dim.to_string(),
                report.superabundance.to_string(),
                report.certification.to_string(),
            ],
        ])
    } else {
        json(
            "dim",
            DimBody {
                field: input.field,
                points: input.points.len(),
                mults: &mults,
                report: &report,
            },
        )
    };
    emit(args.common.out.as_ref(), &text)?;
    Ok(gap_unless(report.certification.is_exact()))
}

pub fn cmd_kernel(args: &DimArgs) -> Result<u8> {
    if args.common.strategy.is_some_and(|s| s != Strategy::Exact) {
        return Err(Error::InvalidParameter("kernel bases are always computed exactly".into()));
    }
    let (input, mults, report) = dim_report(args, true)?;
    let text = if args.common.pretty {
        let mut t = format!("dimension {} in degree {}\n", report.actual_dim, report.degree);
        for f in report.kernel_basis.iter().flatten() {
            t.push_str(&format!("{f}\n"));
        }
        t
    } else {
        json(
            "kernel",
            DimBody {
                field: input.field,
                points: input.points.len(),
                mults: &mults,
                report: &report,
            },
        )
    };
    emit(args.common.out.as_ref(), &text)?;
    Ok(OK)
}

#[derive(Serialize)]
struct CheckBody<'a> {
    field: Field,
    points: usize,
    k_max: u32,
    inconsistent: usize,
    undecided: usize,
    verdicts: &'a [TheoremVerdict],
}

/// Exit 1 on an inconsistency, 2 when something stayed undecided.
pub fn cmd_check(args: &SeqArgs) -> Result<u8> {
    let input = resolve(&args.source, args.d, args.common.seed)?;
    let oracle = Oracle::open(&args.common)?;
    let opts = AlphaOptions {
        certify: false,
        ..alpha_options(&args.common)
    };
    let verdicts = check_all(input.field, &input.points, args.kmax, oracle.get(), &opts)?;
    oracle.finish();
    let count = |o: Outcome| verdicts.iter().filter(|v| v.outcome == o).count();
    let (inconsistent, undecided) = (count(Outcome::Inconsistent), count(Outcome::Undecided));
    let rows = || {
        let mut rows = vec![vec![
            "claim".into(),
            "k".into(),
            "hypothesis".into(),
            "conclusion".into(),
            "outcome".into(),
            "certification".into(),
        ]];
        for v in &verdicts {
            rows.push(vec![
                serde_json::to_value(v.claim).expect("claims serialize").as_str().unwrap_or("").to_string(),
                v.k.to_string(),
                v.hypothesis_holds.to_string(),
                v.conclusion_holds.map_or("-".into(), |c| c.to_string()),
                serde_json::to_value(v.outcome).expect("outcomes serialize").as_str().unwrap_or("").to_string(),
                v.certification.to_string(),
            ]);
        }
        rows
    };
    let text = if args.csv {
        csv(&rows())
    } else if args.common.pretty {
        table(&rows())
    } else {
        json(
            "check",
            CheckBody {
                field: input.field,
                points: input.points.len(),
                k_max: args.kmax,
                inconsistent,
                undecided,
                verdicts: &verdicts,
            },
        )
    };
    emit(args.common.out.as_ref(), &text)?;
    Ok(if inconsistent > 0 {
        eprintln!("error: {inconsistent} inconsistent verdicts");
        FAILURE
    } else if undecided > 0 {
        eprintln!("warning: {undecided} verdicts undecided");
        GAP
    } else {
        OK
    })
}

#[derive(Serialize)]
struct ReproBody<'a> {
    pass: bool,
    examples: &'a [ReproReport],
}

fn repro_rows(reports: &[ReproReport]) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["id".into(), "result".into(), "alpha".into(), "detail".into()]];
    for r in reports {
        let alphas: Vec<String> = r.alphas.iter().map(u32::to_string).collect();
        let mut detail: Vec<String> = r
            .cells
            .iter()
            .filter(|c| !c.pass)
            .map(|c| {
                let got = c.computed.map_or("-".into(), |v| v.to_string());
                format!("k={} expected {} got {got}", c.k, c.expected)
            })
            .collect();
        detail.extend(r.properties.iter().filter(|p| !p.pass).map(|p| p.detail.clone()));
        detail.extend(r.error.clone());
        rows.push(vec![
            r.id.clone(),
            if r.pass { "PASS" } else { "FAIL" }.into(),
            alphas.join(","),
            detail.join("; "),
        ]);
    }
    rows
}

/// Prints the table and writes the JSON artifact; exit 1 iff a cell fails.
pub fn cmd_repro(args: &ReproArgs) -> Result<u8> {
    if args.list {
        let mut rows = vec![vec!["id".into(), "title".into()]];
        rows.extend(registry().iter().map(|e| vec![e.id.clone(), e.title.clone()]));
        emit(None, &table(&rows))?;
        return Ok(OK);
    }
    let oracle = Oracle::open(&args.common)?;
    let (reports, name) = match &args.id {
        Some(id) => (vec![repro(id, oracle.get(), args.common.seed)?], id.clone()),
        None => (repro_all(oracle.get(), args.common.seed)?, "all".to_string()),
    };
    oracle.finish();
    let pass = reports.iter().all(|r| r.pass);
    let artifact = args
        .common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("repro-{name}.json")));
    write_file(&artifact, &json("repro", ReproBody { pass, examples: &reports }))?;
    emit(None, &table(&repro_rows(&reports)))?;
    Ok(if pass { OK } else { FAILURE })
}

#[derive(Serialize)]
struct SearchSummary {
    conjecture: u32,
    trials_run: u32,
    hypothesis_true: usize,
    inconsistent: usize,
    controls: Vec<(String, Outcome)>,
    candidates: String,
}

/// Candidates are a discovery, not a failure: exit 0 whenever the run
/// completes.
pub fn cmd_search(args: &SearchArgs) -> Result<u8> {
    if args.common.strategy.is_some() {
        return Err(Error::InvalidParameter(
            "search fixes its own strategy: modular hypotheses, exact escalation".into(),
        ));
    }
    let mode = if args.conjecture == 2 { SearchMode::Conic } else { SearchMode::Cubic };
    let mut params = SearchParams::new(mode, args.trials, args.common.seed);
    params.r_min = args.r_min.unwrap_or(params.r_min);
    params.r_max = args.r_max.unwrap_or(params.r_max);
    params.height = args.height.unwrap_or(params.height);
    params.controls = !args.no_controls;
    let oracle = Oracle::open(&args.common)?;
    let report = conjecture_search(&params, oracle.get())?;
    oracle.finish();
    let path = args.common.out.clone().unwrap_or_else(|| {
        PathBuf::from(format!("search-conjecture{}-seed{}.json", args.conjecture, args.common.seed))
    });
    let mut full = serde_json::to_string_pretty(&report).expect("search reports serialize");
    full.push('\n');
    write_file(&path, &full)?;
    let summary = SearchSummary {
        conjecture: args.conjecture,
        trials_run: report.trials_run,
        hypothesis_true: report.hypothesis_true.len(),
        inconsistent: report.inconsistent.len(),
        controls: report.controls.iter().map(|c| (c.label.clone(), c.verdict.outcome)).collect(),
        candidates: path.display().to_string(),
    };
    let text = if args.common.pretty {
        let mut rows = vec![vec!["trials".into(), "hypothesis true".into(), "inconsistent".into()]];
        rows.push(vec![
            summary.trials_run.to_string(),
            summary.hypothesis_true.to_string(),
            summary.inconsistent.to_string(),
        ]);
        format!("{}candidates written to {}\n", table(&rows), summary.candidates)
    } else {
        json("search", summary)
    };
    emit(None, &text)?;
    if !report.inconsistent.is_empty() {
        eprintln!("note: {} exactly certified counterexamples recorded", report.inconsistent.len());
    }
    Ok(OK)
}

/// Generator lines when the family has them, else every line through at
/// least three of the points.
fn plot_lines(input: &Input) -> Result<Vec<Line>> {
    if !input.lines().is_empty() {
        return Ok(input.lines().to_vec());
    }
    if input.points.len() < 3 {
        return Ok(Vec::new());
    }
    Ok(rich_lines(&input.points)?
        .into_iter()
        .filter(|(_, on)| on.len() >= 3)
        .map(|(l, _)| l)
        .collect())
}

pub fn cmd_plot(args: &PlotArgs) -> Result<u8> {
    let input = resolve(&args.source, args.d, args.seed)?;
    let lines = if args.no_lines { Vec::new() } else { plot_lines(&input)? };
    emit(args.out.as_ref(), &svg(input.field, &input.points, &lines))?;
    Ok(OK)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<u8> {
    let input = resolve(&args.source, args.d, args.seed)?;
    let text = match (&input.config, args.full) {
        (Some(config), true) => json("generate", config),
        _ => {
            let mut set = fatpoints_core::configs::PointSet::from_points(input.field, &input.points);
            set.mults = input.mults.clone();
            let mut s = set.to_json();
            s.push('\n');
            s
        }
    };
    emit(args.out.as_ref(), &text)?;
    Ok(OK)
}
