//! Command-line front end: scenario ingestion, condition and majorization
//! checks, theorem and counterexample runs, Monte Carlo validation and CSV
//! emission for plotting.
//!
//! Exit codes: 0 success, 1 check/verdict failure, 2 malformed input.

mod schema;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use schema::{LoadedScenario, ScenarioFile};
use stochord::{
    check_condition, comparison_curve, generate_scenario, in_class, is_majorized, is_p_larger,
    is_reciprocal, is_weak_sub, is_weak_super, ks_statistic, matrix_in_class, psi_check,
    run_counterexample, verify_scenario, Condition, CounterexampleId, CurveRow,
    HypothesisOutcome, MatrixClass, OrderStatus, ParamMatrix, Relation, SweepRun, TheoremId,
    TheoremReport, Verdict, VectorClass,
};

#[derive(Parser)]
#[command(
    name = "stochord",
    version,
    about = "Ordering checks for largest claim amounts of thinned heterogeneous portfolios"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run hazard (C1-C8) and psi (C9/C10) condition checks from a scenario
    /// file; the file grid is the evaluation grid. Exit 0 iff all requested
    /// conditions are satisfied.
    CheckConditions { file: PathBuf },
    /// Evaluate vector preorders, class memberships and matrix classes
    /// between the two portfolios; print a relation table. With a `checks`
    /// list in the file, exit 0 iff every listed check holds.
    CheckMajor { file: PathBuf },
    /// Emit the comparison curve (t, F_u, F_v, diff, rhr_u, rhr_v) as CSV.
    Eval {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify one named theorem against the scenario; exit 0 iff the report
    /// is consistent.
    VerifyTheorem {
        file: PathBuf,
        #[arg(long)]
        theorem: String,
    },
    /// Re-run a built-in refutation configuration (CE31, CE32 or CE33) and
    /// optionally write its curve; exit 0 iff the pinned signs reproduce.
    Counterexample {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo validation: empirical CDF of sampled maxima against the
    /// analytic one, reported as a Kolmogorov-Smirnov distance.
    Simulate {
        file: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Generator-driven property sweep of one theorem id (or `all`);
    /// exit 0 iff no generated scenario is inconsistent.
    SweepTheorem {
        id: String,
        #[arg(long, default_value_t = 100)]
        seeds: u64,
    },
}

fn main() -> ExitCode {
    if let Ok(s) = std::env::var("STOCHORD_THREADS") {
        if let Ok(n) = s.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<u8, String> {
    match cmd {
        Cmd::CheckConditions { file } => check_conditions(&file),
        Cmd::CheckMajor { file } => check_major(&file),
        Cmd::Eval { file, out } => eval(&file, &out),
        Cmd::VerifyTheorem { file, theorem } => verify_theorem(&file, &theorem),
        Cmd::Counterexample { id, out } => counterexample(&id, out.as_deref()),
        Cmd::Simulate {
            file,
            samples,
            seed,
        } => simulate(&file, samples, seed),
        Cmd::SweepTheorem { id, seeds } => sweep(&id, seeds),
    }
}

fn load(path: &Path) -> Result<LoadedScenario, String> {
    // built-in fixture ids work anywhere a scenario file does
    if !path.exists() {
        if let Some(s) = path.to_str().and_then(stochord::builtin) {
            return Ok(LoadedScenario {
                baseline: s.baseline,
                psi: s.psi,
                portfolio_u: s.portfolio_u,
                portfolio_v: s.portfolio_v,
                transforms: s.transforms,
                grid: s.grid,
                checks: Vec::new(),
                k: s.k,
            });
        }
    }
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: ScenarioFile = serde_json::from_str(&text).map_err(|e| {
        format!(
            "{}:{}:{}: {e}",
            path.display(),
            e.line(),
            e.column()
        )
    })?;
    file.load().map_err(|e| format!("{}: {e}", path.display()))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".to_string())
}

// ---- check-conditions ------------------------------------------------------

fn check_conditions(path: &Path) -> Result<u8, String> {
    let s = load(path)?;
    let requested: Vec<Condition> = if s.checks.is_empty() {
        let mut all = vec![
            Condition::C1,
            Condition::C2,
            Condition::C3,
            Condition::C4,
            Condition::C5,
            Condition::C6,
            Condition::C7,
            Condition::C8,
        ];
        if s.psi.is_some() {
            all.push(Condition::C9);
            all.push(Condition::C10);
        }
        all
    } else {
        s.checks
            .iter()
            .map(|c| parse_condition(c))
            .collect::<Result<Vec<_>, String>>()?
    };
    let mut all_ok = true;
    for cond in requested {
        let report = match cond {
            Condition::C9 | Condition::C10 => {
                let psi = s
                    .psi
                    .as_ref()
                    .ok_or_else(|| format!("{cond} requested but the file has no psi"))?;
                psi_check(psi, cond).map_err(|e| e.to_string())?
            }
            _ => check_condition(&s.baseline, cond, &s.grid).map_err(|e| e.to_string())?,
        };
        let tag = match report.verdict {
            Verdict::Satisfied => "satisfied",
            Verdict::Violated => "VIOLATED",
            Verdict::Inconclusive => "inconclusive",
        };
        match report.witness {
            Some(w) => println!("{cond}: {tag} (witness at {w:.6})"),
            None => println!("{cond}: {tag}"),
        }
        all_ok &= report.verdict == Verdict::Satisfied;
    }
    Ok(if all_ok { 0 } else { 1 })
}

fn parse_condition(s: &str) -> Result<Condition, String> {
    match s.to_ascii_uppercase().as_str() {
        "C1" => Ok(Condition::C1),
        "C2" => Ok(Condition::C2),
        "C3" => Ok(Condition::C3),
        "C4" => Ok(Condition::C4),
        "C5" => Ok(Condition::C5),
        "C6" => Ok(Condition::C6),
        "C7" => Ok(Condition::C7),
        "C8" => Ok(Condition::C8),
        "C9" => Ok(Condition::C9),
        "C10" => Ok(Condition::C10),
        other => Err(format!("unknown condition {other}")),
    }
}

// ---- check-major -----------------------------------------------------------

struct Vectors {
    names: Vec<&'static str>,
    values: Vec<Vec<f64>>,
}

fn vector_set(s: &LoadedScenario) -> Result<Vectors, String> {
    let mut names = vec![
        "alpha-u",
        "alpha-v",
        "lambda-u",
        "lambda-v",
        "theta-u",
        "theta-v",
        "inv-theta-u",
        "inv-theta-v",
        "p-u",
        "p-v",
    ];
    let u = &s.portfolio_u;
    let v = &s.portfolio_v;
    let mut values = vec![
        u.alpha().to_vec(),
        v.alpha().to_vec(),
        u.lambda().to_vec(),
        v.lambda().to_vec(),
        u.theta().to_vec(),
        v.theta().to_vec(),
        u.inv_theta(),
        v.inv_theta(),
        u.p().to_vec(),
        v.p().to_vec(),
    ];
    if let Some(psi) = &s.psi {
        names.push("psi-p-u");
        names.push("psi-p-v");
        values.push(psi.eval_vec(u.p()).map_err(|e| e.to_string())?);
        values.push(psi.eval_vec(v.p()).map_err(|e| e.to_string())?);
    }
    Ok(Vectors { names, values })
}

fn lookup<'v>(vs: &'v Vectors, name: &str) -> Result<&'v [f64], String> {
    vs.names
        .iter()
        .position(|n| *n == name)
        .map(|i| vs.values[i].as_slice())
        .ok_or_else(|| format!("unknown vector name {name} (expected one of {:?})", vs.names))
}

fn relation_by_name(name: &str, x: &[f64], y: &[f64]) -> Result<bool, String> {
    let r = match name {
        "majorized" => is_majorized(x, y),
        "weak-super" => is_weak_super(x, y),
        "weak-sub" => is_weak_sub(x, y),
        "p-larger" => is_p_larger(x, y),
        "reciprocal" => is_reciprocal(x, y),
        other => return Err(format!("unknown relation {other}")),
    };
    r.map_err(|e| e.to_string())
}

fn check_major(path: &Path) -> Result<u8, String> {
    let s = load(path)?;
    let vs = vector_set(&s)?;

    println!("vector classes:");
    for (name, v) in vs.names.iter().zip(&vs.values) {
        println!(
            "  {name:12} descending={:5} ascending={:5}",
            in_class(v, VectorClass::Dplus),
            in_class(v, VectorClass::Eplus)
        );
    }

    println!("preorders (row relation, U-side vs V-side):");
    let pairs = [
        ("alpha", "alpha-u", "alpha-v"),
        ("lambda", "lambda-u", "lambda-v"),
        ("theta", "theta-u", "theta-v"),
        ("inv-theta", "inv-theta-u", "inv-theta-v"),
        ("p", "p-u", "p-v"),
    ];
    for rel in ["majorized", "weak-super", "weak-sub", "p-larger", "reciprocal"] {
        let mut row = format!("  {rel:10}");
        for (label, left, right) in pairs {
            let fwd = relation_by_name(rel, lookup(&vs, left)?, lookup(&vs, right)?)?;
            let bwd = relation_by_name(rel, lookup(&vs, right)?, lookup(&vs, left)?)?;
            row.push_str(&format!(" {label}:uv={fwd:5} vu={bwd:5}"));
        }
        println!("{row}");
    }

    println!("matrix classes (U rows):");
    let u = &s.portfolio_u;
    let mut mats: Vec<(&str, Result<ParamMatrix, _>)> = vec![(
        "(lambda, inv-theta)",
        ParamMatrix::new(u.lambda().to_vec(), u.inv_theta()),
    )];
    if let Some(psi) = &s.psi {
        let psi_p = psi.eval_vec(u.p()).map_err(|e| e.to_string())?;
        mats.push((
            "(psi-p, lambda)",
            ParamMatrix::new(psi_p.clone(), u.lambda().to_vec()),
        ));
        mats.push(("(psi-p, inv-theta)", ParamMatrix::new(psi_p, u.inv_theta())));
    }
    for (name, m) in &mats {
        match m {
            Ok(m) => println!(
                "  {name:22} M={:5} Q={:5}",
                matrix_in_class(m, MatrixClass::Mn),
                matrix_in_class(m, MatrixClass::Qn)
            ),
            Err(e) => println!("  {name:22} not constructible: {e}"),
        }
    }

    // requested checks gate the exit code
    let mut all_ok = true;
    for check in &s.checks {
        let ok = eval_major_check(&s, &vs, check)?;
        println!("check {check}: {}", if ok { "holds" } else { "FAILS" });
        all_ok &= ok;
    }
    Ok(if all_ok { 0 } else { 1 })
}

/// Grammar: `rel:<name>:<left>:<right>`, `class:<dplus|eplus>:<vec>`,
/// `matrix:<m|q>:<top>:<bottom>`.
fn eval_major_check(s: &LoadedScenario, vs: &Vectors, check: &str) -> Result<bool, String> {
    let parts: Vec<&str> = check.split(':').collect();
    match parts.as_slice() {
        ["rel", name, left, right] => {
            relation_by_name(name, lookup(vs, left)?, lookup(vs, right)?)
        }
        ["class", cls, vec] => {
            let v = lookup(vs, vec)?;
            match *cls {
                "dplus" => Ok(in_class(v, VectorClass::Dplus)),
                "eplus" => Ok(in_class(v, VectorClass::Eplus)),
                other => Err(format!("unknown class {other}")),
            }
        }
        ["matrix", cls, top, bottom] => {
            let m = ParamMatrix::new(lookup(vs, top)?.to_vec(), lookup(vs, bottom)?.to_vec())
                .map_err(|e| e.to_string())?;
            match *cls {
                "m" => Ok(matrix_in_class(&m, MatrixClass::Mn)),
                "q" => Ok(matrix_in_class(&m, MatrixClass::Qn)),
                other => Err(format!("unknown matrix class {other}")),
            }
        }
        _ => {
            let _ = s;
            Err(format!(
                "cannot parse check '{check}'; expected rel:/class:/matrix: form"
            ))
        }
    }
}

// ---- eval ------------------------------------------------------------------

fn write_curve(path: &Path, rows: &[CurveRow]) -> Result<(), String> {
    let mut out = String::with_capacity(rows.len() * 140 + 64);
    out.push_str("t,F_u,F_v,diff,rhr_u,rhr_v\n");
    for r in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            r.t, r.f_u, r.f_v, r.diff, r.rhr_u, r.rhr_v
        ));
    }
    let mut f = fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
    f.write_all(out.as_bytes())
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn eval(path: &Path, out: &Path) -> Result<u8, String> {
    let s = load(path)?;
    let floor = s.portfolio_u.max_lambda().max(s.portfolio_v.max_lambda());
    if !s.grid.extended && s.grid.t_min <= floor {
        return Err(format!(
            "grid starts at {} but the largest location is {floor}; raise t_min or set \"extended\": true",
            s.grid.t_min
        ));
    }
    let rows = comparison_curve(&s.portfolio_u, &s.portfolio_v, &s.grid);
    write_curve(out, &rows)?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(0)
}

// ---- verify-theorem --------------------------------------------------------

fn print_report(report: &TheoremReport) {
    println!("scenario   : {} ({})", report.scenario_id, report.theorem);
    println!("hypotheses :");
    for h in &report.hypotheses {
        let tag = match &h.outcome {
            HypothesisOutcome::Condition(rep) => match rep.verdict {
                Verdict::Satisfied => "PASS",
                Verdict::Violated => "FAIL",
                Verdict::Inconclusive => "????",
            },
            HypothesisOutcome::Relation(true) => "PASS",
            HypothesisOutcome::Relation(false) => "FAIL",
            HypothesisOutcome::Structural { ok: true, .. } => "PASS",
            HypothesisOutcome::Structural { ok: false, .. } => "FAIL",
        };
        let extra = match &h.outcome {
            HypothesisOutcome::Condition(rep) => rep
                .witness
                .map(|w| format!(" (witness {w:.6})"))
                .unwrap_or_default(),
            HypothesisOutcome::Structural { ok: false, detail } if !detail.is_empty() => {
                format!(" ({detail})")
            }
            _ => String::new(),
        };
        println!("  [{tag}] {}{extra}", h.label);
    }
    println!("applicable : {}", report.applicable);
    let relation = match report.conclusion.relation {
        Relation::St => "st",
        Relation::Rh => "rh",
    };
    let status = match report.conclusion.status {
        OrderStatus::Holds => "holds (no violation found on grid)",
        OrderStatus::Fails => "fails",
        OrderStatus::Inconclusive => "inconclusive",
    };
    let dominant = match report.dominant {
        stochord::Dominant::U => "U",
        stochord::Dominant::V => "V",
    };
    println!(
        "conclusion : {dominant} >=_{relation} {}: {status} (margin {:.3e}, {} points, {} excluded)",
        if dominant == "U" { "V" } else { "U" },
        report.conclusion.margin,
        report.conclusion.points_used,
        report.conclusion.points_excluded,
    );
    if let Some(w) = report.conclusion.witness {
        println!("witness    : t = {w:.9}");
    }
    if let Some(agree) = report.rh_methods_agree() {
        println!("rh methods : rate-compare and ratio-monotone agree: {agree}");
    }
    if let Some(ok) = report.hierarchy_ok() {
        println!("hierarchy  : rh dominance implies st dominance on grid: {ok}");
    }
    println!("consistent : {}", report.consistent);
}

fn verify_theorem(path: &Path, theorem: &str) -> Result<u8, String> {
    let theorem = TheoremId::parse(theorem).map_err(|e| e.to_string())?;
    let s = load(path)?;
    let scenario = s.into_scenario(file_stem(path), theorem);
    let report = verify_scenario(&scenario).map_err(|e| e.to_string())?;
    print_report(&report);
    Ok(if report.consistent { 0 } else { 1 })
}

// ---- counterexample --------------------------------------------------------

fn counterexample(id: &str, out: Option<&Path>) -> Result<u8, String> {
    let id = CounterexampleId::parse(id).map_err(|e| e.to_string())?;
    let run = run_counterexample(id).map_err(|e| e.to_string())?;
    let what = match id {
        CounterexampleId::Ce33 => "rhr_u - rhr_v",
        _ => "F_u - F_v",
    };
    for p in &run.pinned {
        println!(
            "{} at t = {}: {:+.6e} (expected {}) {}",
            what,
            p.t,
            p.value,
            if p.expect_positive { "> 0" } else { "< 0" },
            if p.matches() { "ok" } else { "MISMATCH" }
        );
    }
    print_report(&run.report);
    if let Some(path) = out {
        write_curve(path, &run.curve)?;
        println!("curve written to {} ({} rows)", path.display(), run.curve.len());
    }
    Ok(if run.signs_match { 0 } else { 1 })
}

// ---- simulate ----------------------------------------------------------

fn simulate(path: &Path, samples: usize, seed: u64) -> Result<u8, String> {
    if samples == 0 {
        return Err("samples must be positive".into());
    }
    let s = load(path)?;
    let threshold = 0.005_f64.max(1.95 / (samples as f64).sqrt());
    let mut all_ok = true;
    for (name, pf, seed) in [
        ("portfolio_u", &s.portfolio_u, seed),
        ("portfolio_v", &s.portfolio_v, seed.wrapping_add(1)),
    ] {
        let mut draws = pf.sample_max(seed, samples).map_err(|e| e.to_string())?;
        let d = ks_statistic(&mut draws, |t| pf.max_cdf(t));
        let ok = d <= threshold;
        println!(
            "{name}: KS distance {d:.6} over {samples} samples, seed {seed} (threshold {threshold:.6}) {}",
            if ok { "ok" } else { "EXCEEDED" }
        );
        all_ok &= ok;
    }
    Ok(if all_ok { 0 } else { 1 })
}

// ---- sweep-theorem -----------------------------------------------------

fn sweep_one(theorem: TheoremId, seeds: u64) -> Result<Vec<SweepRun>, String> {
    (0..seeds)
        .into_par_iter()
        .map(|seed| {
            let scenario = generate_scenario(theorem, seed).map_err(|e| e.to_string())?;
            let report = verify_scenario(&scenario).map_err(|e| e.to_string())?;
            Ok(SweepRun {
                seed,
                scenario_id: scenario.id,
                applicable: report.applicable,
                conclusion_holds: report.conclusion.status == OrderStatus::Holds,
                consistent: report.consistent,
                hierarchy_ok: report.hierarchy_ok(),
                rh_methods_agree: report.rh_methods_agree(),
                margin: report.conclusion.margin,
            })
        })
        .collect()
}

fn sweep(id: &str, seeds: u64) -> Result<u8, String> {
    let theorems = if id == "all" {
        TheoremId::all()
    } else {
        vec![TheoremId::parse(id).map_err(|e| e.to_string())?]
    };
    let mut failures = 0usize;
    for theorem in theorems {
        let runs = match sweep_one(theorem, seeds) {
            Ok(runs) => runs,
            Err(e) => {
                println!("{theorem}: sweep aborted: {e}");
                failures += 1;
                continue;
            }
        };
        let applicable = runs.iter().filter(|r| r.applicable).count();
        let holds = runs.iter().filter(|r| r.conclusion_holds).count();
        let inconsistent: Vec<u64> = runs
            .iter()
            .filter(|r| !r.consistent)
            .map(|r| r.seed)
            .collect();
        let hierarchy_bad = runs
            .iter()
            .filter(|r| r.hierarchy_ok == Some(false))
            .count();
        let worst = runs
            .iter()
            .map(|r| r.margin)
            .fold(f64::INFINITY, f64::min);
        println!(
            "{theorem}: {} runs, {applicable} applicable, {holds} hold, {} inconsistent, {hierarchy_bad} hierarchy violations, worst margin {worst:.3e}",
            runs.len(),
            inconsistent.len(),
        );
        if !inconsistent.is_empty() {
            println!("  inconsistent seeds: {inconsistent:?}");
            failures += 1;
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}
