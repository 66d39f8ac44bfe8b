//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 when a verified inequality (or the mutation
//! self-test, or a worked example) fails, 2 on input errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::berezin::{min_t_berezin, refine_berezin_number, refine_t_norm, SymbolMatrix};
use crate::harness::{
    mutation_self_test, run_campaign, run_lemma_suite, CampaignConfig, Lemma, DEFAULT_SEED,
};
use crate::model::{
    default_hardy_model, standard_model, KernelModel, ModelKind, ModelSpec, Operator,
    OperatorSpec, PointPayload,
};
use crate::{C64, CMatrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "berezin",
    version,
    about = "Berezin-type norms of operators on finite RKHS models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Berezin number, Berezin norm, t-Berezin norm and its minimum over t
    /// for one operator on one model.
    Norms {
        /// JSON model spec, e.g. {"kind":"standard","n":2}.
        #[arg(long)]
        model: PathBuf,
        /// JSON operator spec with a "matrix" of [re, im] pairs or nested "blocks".
        #[arg(long)]
        operator: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Tolerance of the golden-section search over t.
        #[arg(long, default_value_t = 1e-6)]
        tol_t: f64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Tabulate t ↦ ‖A‖_{t-ber} over [0, 1].
    SweepT {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        operator: PathBuf,
        /// Number of evenly spaced samples of t.
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the randomized inequality campaign over the bound catalog.
    Verify {
        /// Campaign config JSON; flags below override nothing when given.
        #[arg(long, conflicts_with_all = ["seed", "cases_per", "bounds", "tol_ineq"])]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Cases per (bound, class) combination.
        #[arg(long, default_value_t = crate::harness::DEFAULT_CASES_PER)]
        cases_per: usize,
        /// Comma-separated bound ids; default is the whole catalog.
        #[arg(long, value_delimiter = ',')]
        bounds: Vec<String>,
        /// Relative tolerance coefficient for inequality checks.
        #[arg(long, default_value_t = 1e-9)]
        tol_ineq: f64,
        /// Also verify that a deliberate right-side miscaling (×0.9) is
        /// caught for every bound.
        #[arg(long)]
        self_test_mutation: bool,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Re-run the built-in worked examples and compare against their
    /// closed-form values.
    Reproduce {
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run the scalar lemma suites (Buzano, generalized Cauchy-Schwarz,
    /// mixed Schwarz with a commuting factor).
    Lemmas {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Trials for the two vector lemmas.
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        /// Trials for the operator-valued mixed Schwarz lemma.
        #[arg(long, default_value_t = 10_000)]
        matrix_trials: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OutputOpts {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// 12 significant digits, the precision of all text reports.
fn sig(v: f64) -> String {
    format!("{v:.11e}")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&data).map_err(|e| format!("cannot parse {}: {e}", path.display()))
}

fn load_model_operator(
    model: &Path,
    operator: &Path,
) -> Result<(KernelModel, Operator), String> {
    let mspec: ModelSpec = read_json(model)?;
    let ospec: OperatorSpec = read_json(operator)?;
    let m = mspec.build().map_err(|e| e.to_string())?;
    let a = ospec.build().map_err(|e| e.to_string())?;
    m.check_operator(&a).map_err(|e| e.to_string())?;
    Ok((m, a))
}

fn emit(output: &OutputOpts, text: &str, jsonv: &Value) -> Result<(), String> {
    let body = match output.format {
        Format::Text => text.to_string(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(jsonv).unwrap()),
    };
    match &output.out {
        None => {
            std::io::stdout().write_all(body.as_bytes()).map_err(|e| e.to_string())
        }
        Some(path) => std::fs::write(path, body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

/// Parses arguments from the process environment and runs; returns the
/// process exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version exit cleanly, true parse errors are input errors
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

/// Runs one parsed command; `Err` means an input problem (exit 2).
pub fn execute(command: &Command) -> Result<i32, String> {
    match command {
        Command::Norms { model, operator, t, tol_t, output } => {
            run_norms(model, operator, *t, *tol_t, output)
        }
        Command::SweepT { model, operator, steps, output } => {
            run_sweep(model, operator, *steps, output)
        }
        Command::Verify {
            config,
            seed,
            cases_per,
            bounds,
            tol_ineq,
            self_test_mutation,
            output,
        } => {
            let cfg = match config {
                Some(path) => read_json::<CampaignConfig>(path)?,
                None => CampaignConfig {
                    seed: *seed,
                    cases_per: *cases_per,
                    bounds: bounds.clone(),
                    tol_coeff: *tol_ineq,
                    ..CampaignConfig::default()
                },
            };
            run_verify(&cfg, *self_test_mutation, output)
        }
        Command::Reproduce { output } => run_reproduce(output),
        Command::Lemmas { seed, trials, matrix_trials, output } => {
            run_lemmas(*seed, *trials, *matrix_trials, output)
        }
    }
}

fn run_norms(
    model: &Path,
    operator: &Path,
    t: f64,
    tol_t: f64,
    output: &OutputOpts,
) -> Result<i32, String> {
    let (m, a) = load_model_operator(model, operator)?;
    let sym = SymbolMatrix::new(&m, &a).map_err(|e| e.to_string())?;
    if !(0.0..=1.0).contains(&t) {
        return Err(format!("t must lie in [0, 1], got {t}"));
    }
    let ber = sym.berezin_number();
    let norm = sym.berezin_norm();
    let tn = sym.t_norm(t);
    let min_t = sym.min_t(tol_t).map_err(|e| e.to_string())?;
    let refined = if matches!(m.kind(), ModelKind::Hardy { .. }) {
        let rn = refine_berezin_number(&m, &a, 3).map_err(|e| e.to_string())?;
        let rt = refine_t_norm(&m, &a, t, 3).map_err(|e| e.to_string())?;
        Some((rn, rt))
    } else {
        None
    };
    let mut text = String::new();
    text += &format!("model: dim {}, {} sampled points\n", m.dim(), m.len());
    text += &format!("berezin number : {}  (witness point {})\n", sig(ber.value), ber.witness);
    text += &format!(
        "berezin norm   : {}  (witness pair ({}, {}))\n",
        sig(norm.value),
        norm.witness.0,
        norm.witness.1
    );
    text += &format!(
        "t-berezin norm : {}  at t = {}  (witness pair ({}, {}))\n",
        sig(tn.value),
        t,
        tn.witness.0,
        tn.witness.1
    );
    text += &format!("min over t     : {}  at t* = {}\n", sig(min_t.value), sig(min_t.t_star));
    if let Some((rn, rt)) = &refined {
        text += &format!("refined number : {}  (off-grid search)\n", sig(rn.value));
        text += &format!("refined t-norm : {}  (off-grid search)\n", sig(rt.value));
    }
    let jsonv = json!({
        "model": { "dim": m.dim(), "points": m.len() },
        "t": t,
        "berezin_number": { "value": ber.value, "witness": ber.witness },
        "berezin_norm": { "value": norm.value, "witness": norm.witness },
        "t_berezin_norm": { "value": tn.value, "witness": tn.witness },
        "min_t": { "t_star": min_t.t_star, "value": min_t.value },
        "refined": refined.as_ref().map(|(rn, rt)| json!({
            "berezin_number": rn.value,
            "t_berezin_norm": rt.value,
        })),
    });
    emit(output, &text, &jsonv)?;
    Ok(EXIT_OK)
}

fn run_sweep(
    model: &Path,
    operator: &Path,
    steps: usize,
    output: &OutputOpts,
) -> Result<i32, String> {
    if steps < 2 {
        return Err(format!("steps must be at least 2, got {steps}"));
    }
    let (m, a) = load_model_operator(model, operator)?;
    let sym = SymbolMatrix::new(&m, &a).map_err(|e| e.to_string())?;
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let t = k as f64 / (steps - 1) as f64;
        rows.push((t, sym.t_norm(t).value));
    }
    let min_t = sym.min_t(1e-8).map_err(|e| e.to_string())?;
    let mut text = String::from("t\tnorm\n");
    for (t, v) in &rows {
        text += &format!("{t:.6}\t{}\n", sig(*v));
    }
    text += &format!("# minimum {} at t* = {}\n", sig(min_t.value), sig(min_t.t_star));
    let jsonv = json!({
        "sweep": rows.iter().map(|(t, v)| json!({ "t": t, "value": v })).collect::<Vec<_>>(),
        "min_t": { "t_star": min_t.t_star, "value": min_t.value },
    });
    emit(output, &text, &jsonv)?;
    Ok(EXIT_OK)
}

fn run_verify(
    cfg: &CampaignConfig,
    self_test_mutation: bool,
    output: &OutputOpts,
) -> Result<i32, String> {
    let report = run_campaign(cfg).map_err(|e| e.to_string())?;
    let mutation = if self_test_mutation {
        Some(mutation_self_test(cfg.seed, 2).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let mut text = String::new();
    text += &format!(
        "campaign: seed {}, {} bounds, {} cases per (bound, class)\n",
        report.seed,
        report.bounds_run.len(),
        report.cases_per
    );
    text += &format!(
        "checked {} inequality lines over {} cases: {} failures, {} warnings\n",
        report.total_checks, report.total_cases, report.failure_count, report.warning_count
    );
    for f in &report.failures {
        text += &format!(
            "FAIL {}{} [{} case {}]: lhs {} > rhs {}\n",
            f.bound_id,
            f.part.as_deref().map(|p| format!(":{p}")).unwrap_or_default(),
            f.class,
            f.case_index,
            sig(f.lhs),
            sig(f.rhs)
        );
    }
    if let Some(t) = &report.tightness {
        text += &format!(
            "tightness: min_t improves the classical bound in {:.1}% of {} samples (mean {:.3e}, max {:.3e})\n",
            100.0 * t.min_t_improved_frac,
            t.min_t_cases,
            t.min_t_mean_improvement,
            t.min_t_max_improvement
        );
        text += &format!(
            "tightness: refined product bound beats the lambda-weighted one in {:.1}% of {} samples\n",
            100.0 * t.th7_tighter_frac,
            t.th7_vs_dcds_cases
        );
    }
    let mut violation = report.failure_count > 0;
    if let Some(outcomes) = &mutation {
        for o in outcomes {
            let status = if o.detected { "detected" } else { "NOT DETECTED" };
            text += &format!("mutation {}: {} ({} failures)\n", o.bound_id, status, o.failures);
            if !o.detected {
                violation = true;
            }
        }
    }
    let jsonv = json!({ "config": cfg, "report": report, "mutation": mutation });
    emit(output, &text, &jsonv)?;
    Ok(if violation { EXIT_VIOLATION } else { EXIT_OK })
}

fn run_lemmas(
    seed: u64,
    trials: usize,
    matrix_trials: usize,
    output: &OutputOpts,
) -> Result<i32, String> {
    let mut reports = Vec::new();
    for &lemma in Lemma::ALL {
        let n = if lemma == Lemma::MixedSchwarz { matrix_trials } else { trials };
        reports.push(run_lemma_suite(lemma, n, seed).map_err(|e| e.to_string())?);
    }
    let mut text = String::new();
    let mut violation = false;
    for r in &reports {
        text += &format!(
            "{}: {} trials, {} failures, worst margin {}\n",
            r.lemma,
            r.trials,
            r.failures,
            sig(r.worst_margin)
        );
        if r.failures > 0 {
            violation = true;
        }
    }
    let jsonv = json!({ "seed": seed, "lemmas": reports });
    emit(output, &text, &jsonv)?;
    Ok(if violation { EXIT_VIOLATION } else { EXIT_OK })
}

/// One worked example: expected versus computed, with a pass flag.
#[derive(Debug, Clone, Serialize)]
pub struct ExampleReport {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

fn example(name: &str, pass: bool, details: String) -> ExampleReport {
    ExampleReport { name: name.to_string(), pass, details }
}

/// Runs the built-in worked examples.  Exposed as a library function so
/// tests can assert on the same values the CLI prints.
pub fn worked_examples() -> crate::Result<Vec<ExampleReport>> {
    let mut out = Vec::new();

    // 2x2 nilpotent: ‖A‖_{t-ber} = max{t, 1-t}, minimized at t* = 1/2
    // with value 1/2.
    let m2 = standard_model(2)?;
    let nil = Operator::from_real(&[&[0.0, 1.0], &[0.0, 0.0]]);
    let sym = SymbolMatrix::new(&m2, &nil)?;
    let mut worst = 0.0f64;
    for k in 0..=10 {
        let t = k as f64 / 10.0;
        worst = worst.max((sym.t_norm(t).value - t.max(1.0 - t)).abs());
    }
    let min_t = sym.min_t(1e-8)?;
    let pass = worst < 1e-12 && (min_t.t_star - 0.5).abs() < 1e-6 && (min_t.value - 0.5).abs() < 1e-9;
    out.push(example(
        "nilpotent-tnorm",
        pass,
        format!(
            "max |computed - max(t,1-t)| = {}, min at (t*, value) = ({}, {})",
            sig(worst),
            sig(min_t.t_star),
            sig(min_t.value)
        ),
    ));

    // Non-submultiplicativity: with A the upper and B the lower 2x2 shift,
    // ‖AB‖_{t-ber} = 1 while ‖A‖_{t-ber}·‖B‖_{t-ber} = max{t,1-t}² < 1
    // for every t strictly inside (0, 1).
    let b = Operator::from_real(&[&[0.0, 0.0], &[1.0, 0.0]]);
    let t = 0.3;
    let ab = Operator::new(&nil.entries * &b.entries);
    let lhs = SymbolMatrix::new(&m2, &ab)?.t_norm(t).value;
    let prod =
        SymbolMatrix::new(&m2, &nil)?.t_norm(t).value * SymbolMatrix::new(&m2, &b)?.t_norm(t).value;
    let pass = (lhs - 1.0).abs() < 1e-12 && (prod - 0.49).abs() < 1e-12 && lhs > prod;
    out.push(example(
        "non-submultiplicative",
        pass,
        format!("‖AB‖ = {} exceeds ‖A‖·‖B‖ = {} at t = {t}", sig(lhs), sig(prod)),
    ));

    // All-ones 2x2 matrix: min_t ‖A‖_{t-ber} = 1, strictly below the
    // classical value √(½‖|A|²+|A*|²‖_ber) = √2.
    let ones = Operator::from_real(&[&[1.0, 1.0], &[1.0, 1.0]]);
    let min_t = min_t_berezin(&m2, &ones, 1e-8)?;
    // ½(|A|²+|A*|²) = A² here since A is PSD
    let gram2 = &ones.entries * &ones.entries;
    let classical = SymbolMatrix::new(&m2, &Operator::new(gram2))?.berezin_norm().value.sqrt();
    let pass = (min_t.value - 1.0).abs() < 1e-9
        && (classical - std::f64::consts::SQRT_2).abs() < 1e-12
        && min_t.value < classical;
    out.push(example(
        "ones-min-t",
        pass,
        format!("min_t = {} vs classical {}", sig(min_t.value), sig(classical)),
    ));

    // Truncated Hardy shift on the default grid: the Berezin symbol has
    // the closed form λ(1-|λ|^{2N})/(1-|λ|^{2(N+1)}) and the Berezin
    // number approaches 1 near the boundary.
    let start = Instant::now();
    let hardy = default_hardy_model();
    let dim = hardy.dim();
    let shift = Operator::new(CMatrix::from_fn(dim, dim, |i, j| {
        if i == j + 1 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
    }));
    let trunc = dim - 1;
    let sym = SymbolMatrix::new(&hardy, &shift)?;
    let mut worst = 0.0f64;
    for p in hardy.points() {
        let PointPayload::Disk(lam) = p.payload else { continue };
        let rho2 = lam.norm_sqr();
        let expect = if rho2 == 0.0 {
            C64::new(0.0, 0.0)
        } else {
            lam * ((1.0 - rho2.powi(trunc as i32)) / (1.0 - rho2.powi(trunc as i32 + 1)))
        };
        let got = sym.pair(p.id, p.id);
        worst = worst.max((got - expect).norm());
    }
    let ber = sym.berezin_number().value;
    let elapsed = start.elapsed().as_secs_f64();
    let pass = worst <= 1e-10 && ber >= 0.98 && elapsed < 5.0;
    out.push(example(
        "hardy-shift",
        pass,
        format!(
            "symbol deviation {} (tol 1e-10), ber = {} (needs >= 0.98), {:.2}s",
            sig(worst),
            sig(ber),
            elapsed
        ),
    ));

    Ok(out)
}

fn run_reproduce(output: &OutputOpts) -> Result<i32, String> {
    let examples = worked_examples().map_err(|e| e.to_string())?;
    let mut text = String::new();
    let mut violation = false;
    for e in &examples {
        let status = if e.pass { "ok " } else { "FAIL" };
        text += &format!("{status} {}: {}\n", e.name, e.details);
        if !e.pass {
            violation = true;
        }
    }
    let jsonv = json!({ "examples": examples });
    emit(output, &text, &jsonv)?;
    Ok(if violation { EXIT_VIOLATION } else { EXIT_OK })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmp(name: &str, contents: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("berezin-cli-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    fn quiet_json(out: &Path) -> OutputOpts {
        OutputOpts { out: Some(out.to_path_buf()), format: Format::Json }
    }

    #[test]
    fn norms_command_round_trip() {
        let model = tmp("m.json", r#"{"kind":"standard","n":2}"#);
        let op = tmp("a.json", r#"{"matrix":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#);
        let out = tmp("norms.json", "");
        let code = execute(&Command::Norms {
            model,
            operator: op,
            t: 0.3,
            tol_t: 1e-6,
            output: quiet_json(&out),
        })
        .unwrap();
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert!((v["t_berezin_norm"]["value"].as_f64().unwrap() - 0.7).abs() < 1e-12);
        assert!((v["min_t"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn norms_rejects_shape_mismatch() {
        let model = tmp("m3.json", r#"{"kind":"standard","n":3}"#);
        let op = tmp("a2.json", r#"{"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#);
        let out = tmp("mismatch.json", "");
        let err = execute(&Command::Norms {
            model,
            operator: op,
            t: 0.5,
            tol_t: 1e-6,
            output: quiet_json(&out),
        });
        assert!(err.is_err());
    }

    #[test]
    fn sweep_is_symmetric() {
        let model = tmp("ms.json", r#"{"kind":"standard","n":2}"#);
        let op = tmp("as.json", r#"{"matrix":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#);
        let out = tmp("sweep.json", "");
        let code = execute(&Command::SweepT {
            model,
            operator: op,
            steps: 11,
            output: quiet_json(&out),
        })
        .unwrap();
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        let sweep = v["sweep"].as_array().unwrap();
        assert_eq!(sweep.len(), 11);
        for k in 0..11 {
            let a = sweep[k]["value"].as_f64().unwrap();
            let b = sweep[10 - k]["value"].as_f64().unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn verify_small_campaign_exits_zero() {
        let out = std::env::temp_dir().join(format!("berezin-verify-{}.json", std::process::id()));
        let code = execute(&Command::Verify {
            config: None,
            seed: 7,
            cases_per: 1,
            bounds: vec!["mixed".into(), "sandwich".into()],
            tol_ineq: 1e-9,
            self_test_mutation: false,
            output: quiet_json(&out),
        })
        .unwrap();
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(v["report"]["failure_count"], 0);
        assert_eq!(v["config"]["seed"], 7);
    }

    #[test]
    fn verify_rejects_unknown_bound() {
        let out = std::env::temp_dir().join("berezin-verify-bad.json");
        let err = execute(&Command::Verify {
            config: None,
            seed: 7,
            cases_per: 1,
            bounds: vec!["bogus".into()],
            tol_ineq: 1e-9,
            self_test_mutation: false,
            output: quiet_json(&out),
        });
        assert!(err.is_err());
    }

    #[test]
    fn worked_examples_all_pass() {
        for e in worked_examples().unwrap() {
            assert!(e.pass, "{}: {}", e.name, e.details);
        }
    }

    #[test]
    fn lemmas_small_run_exits_zero() {
        let out = std::env::temp_dir().join(format!("berezin-lemmas-{}.json", std::process::id()));
        let code = run_lemmas(3, 200, 50, &quiet_json(&out)).unwrap();
        assert_eq!(code, EXIT_OK);
    }
}
