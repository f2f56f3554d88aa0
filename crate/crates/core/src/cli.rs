//! `steklov` command-line front end.
//!
//! Exit codes: `0` success, `2` usage or configuration error, `3` numerical
//! failure (including an unconverged spectrum), `4` a failed bound.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Number, Value};

use crate::config::RunConfig;
use crate::dtn_solver::{steklov_spectrum, DomainSpectrum};
use crate::geometry::StarDomain;
use crate::radial::ball_spectrum;
use crate::verify::{
    random_domain_suite, sharpness_study, verify_cases, BoundReport, VerificationCase,
};
use crate::Error;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// CSV header of `verify` output.
pub const VERIFY_COLUMNS: [&str; 7] = ["formula", "l", "mu", "bound", "ratio", "pass", "est_error"];

#[derive(Debug, Parser)]
#[command(
    name = "steklov",
    version,
    about = "Steklov spectra and lower bounds on surfaces of revolution"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Steklov eigenvalues of a coordinate ball.
    BallSpectrum(CommonArgs),
    /// Steklov eigenvalues of the configured star domain.
    Spectrum(CommonArgs),
    /// Check every applicable bound against the computed spectrum.
    Verify(CommonArgs),
    /// Bound/eigenvalue ratios along a family shrinking to a ball.
    Sweep(CommonArgs),
}

#[derive(Debug, Args, Clone)]
pub struct CommonArgs {
    /// Configuration file (key = value).
    #[arg(long)]
    pub config: PathBuf,
    /// Write JSON output here (overrides output.json).
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    /// Write CSV output here (overrides output.csv).
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
    /// Worker threads, 0 = all cores (overrides run.jobs).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Seed for random suites (overrides suite.seed).
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_)
            | Error::Io(_)
            | Error::InvalidArgument(_)
            | Error::BoundNotApplicable { .. } => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Finite floats with 17 significant digits; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Number::from_str(&format!("{x:.16e}"))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn csv_f64(x: f64) -> String {
    format!("{x:.16e}")
}

struct Outputs {
    json: Option<PathBuf>,
    csv: Option<PathBuf>,
}

fn header(cfg: &RunConfig, command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("artifact".into(), json!("steklov"));
    m.insert("version".into(), json!(VERSION));
    m.insert("config_hash".into(), json!(cfg.hash()));
    m.insert("command".into(), json!(command));
    m
}

fn csv_header(cfg: &RunConfig, command: &str) -> String {
    format!("# steklov {VERSION} {command} config_hash={}\n", cfg.hash())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &Outputs, body: Map<String, Value>, csv: String) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&Value::Object(body)).expect("serializable") + "\n";
    match &out.json {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &out.csv {
        write_file(p, &csv)?;
    }
    Ok(())
}

fn domain_json(d: &StarDomain) -> Value {
    json!({ "cos": nums(d.cos_coeffs()), "sin": nums(d.sin_coeffs()) })
}

fn spectrum_json(s: &DomainSpectrum) -> Value {
    json!({
        "eigenvalues": nums(&s.eigenvalues),
        "k_used": s.k_used,
        "quad_points": s.quad_points,
        "regularization_drop": s.regularization_drop,
        "converged": s.converged,
        "est_error": num(s.est_error),
    })
}

fn eigen_csv(values: &[f64]) -> String {
    let mut s = String::from("l,mu\n");
    for (i, v) in values.iter().enumerate() {
        s += &format!("{},{}\n", i + 1, csv_f64(*v));
    }
    s
}

fn load(args: &CommonArgs) -> Result<(RunConfig, Outputs), CliError> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", args.config.display())))?;
    let mut cfg = RunConfig::parse(&text)?;
    if let Some(j) = args.jobs {
        cfg.jobs = j;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let out = Outputs {
        json: args
            .out_json
            .clone()
            .or_else(|| cfg.output_json.clone().map(PathBuf::from)),
        csv: args
            .out_csv
            .clone()
            .or_else(|| cfg.output_csv.clone().map(PathBuf::from)),
    };
    Ok((cfg, out))
}

fn cmd_ball_spectrum(cfg: &RunConfig, out: &Outputs) -> Result<i32, CliError> {
    let surface = cfg.surface_metric()?;
    let radius = match (cfg.ball_radius, &cfg.domain) {
        (Some(r), _) => r,
        (None, crate::config::DomainSpec::Constant(r)) => *r,
        _ => {
            return Err(CliError::usage(
                "ball.radius is required when the domain is not a constant radius",
            ))
        }
    };
    let ball = ball_spectrum(&surface, radius, cfg.ball_count, cfg.ball_n)?;
    let mut body = header(cfg, "ball-spectrum");
    body.insert("surface".into(), json!(surface.name()));
    body.insert("R".into(), num(radius));
    body.insert("n".into(), json!(cfg.ball_n));
    body.insert("eigenvalues".into(), nums(&ball.eigenvalues));
    emit(
        out,
        body,
        csv_header(cfg, "ball-spectrum") + &eigen_csv(&ball.eigenvalues),
    )?;
    Ok(EXIT_OK)
}

fn cmd_spectrum(cfg: &RunConfig, out: &Outputs) -> Result<i32, CliError> {
    let surface = cfg.surface_metric()?;
    let domain = cfg.star_domain()?;
    let spec = steklov_spectrum(&surface, &domain, cfg.spectrum_l_max, &cfg.solver)?;
    let mut body = header(cfg, "spectrum");
    body.insert("surface".into(), json!(surface.name()));
    body.insert("domain".into(), domain_json(&domain));
    if let Value::Object(m) = spectrum_json(&spec) {
        body.extend(m);
    }
    emit(
        out,
        body,
        csv_header(cfg, "spectrum") + &eigen_csv(&spec.eigenvalues),
    )?;
    Ok(if spec.converged {
        EXIT_OK
    } else {
        EXIT_NUMERIC
    })
}

fn report_json(index: usize, r: &BoundReport) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            json!({
                "formula": e.formula.name(),
                "l": e.l,
                "mu": num(e.mu),
                "bound": num(e.bound),
                "ratio": e.ratio.map_or(Value::Null, num),
                "verdict": e.verdict.name(),
                "pass": e.verdict.passed(),
                "est_error": num(e.est_error),
            })
        })
        .collect();
    let c = &r.constants;
    json!({
        "case": index,
        "domain": domain_json(&r.domain),
        "constants": { "r_min": num(c.r_min), "r_max": num(c.r_max), "a": num(c.a), "alpha": num(c.alpha) },
        "spectrum": spectrum_json(&r.spectrum),
        "entries": entries,
        "summary": {
            "pass": r.summary.pass,
            "inconclusive": r.summary.inconclusive,
            "fail": r.summary.fail,
            "undefined": r.summary.undefined,
        },
    })
}

/// Verify rows in the fixed column order of [`VERIFY_COLUMNS`].
pub fn verify_csv_rows(r: &BoundReport) -> Vec<String> {
    r.entries
        .iter()
        .map(|e| {
            let pass = match e.verdict.passed() {
                Some(p) => p.to_string(),
                None => "undefined".into(),
            };
            format!(
                "{},{},{},{},{},{},{}",
                e.formula.name(),
                e.l,
                csv_f64(e.mu),
                csv_f64(e.bound),
                e.ratio.map(csv_f64).unwrap_or_default(),
                pass,
                csv_f64(e.est_error)
            )
        })
        .collect()
}

fn cmd_verify(cfg: &RunConfig, out: &Outputs) -> Result<i32, CliError> {
    let surface = cfg.surface_metric()?;
    let domains = if cfg.suite_count > 0 {
        random_domain_suite(
            &surface,
            cfg.suite_count,
            cfg.suite_max_mode,
            cfg.suite_max_eps,
            cfg.seed,
        )?
        .domains
    } else {
        vec![cfg.star_domain()?]
    };
    let cases: Vec<VerificationCase> = domains
        .into_iter()
        .map(|d| {
            let mut c = VerificationCase::new(surface.clone(), d, cfg.l_range());
            if let Some(fs) = &cfg.verify_formulas {
                c.formulas = fs.clone();
            }
            c.rel_slack = cfg.verify_rel_slack;
            c.solver = cfg.solver;
            c
        })
        .collect();
    let results = verify_cases(&cases, cfg.jobs)?;
    let reports = results.into_iter().collect::<Result<Vec<_>, Error>>()?;

    let (mut fail, mut undefined) = (0, 0);
    let mut csv = csv_header(cfg, "verify") + &VERIFY_COLUMNS.join(",") + "\n";
    let mut cases_json = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        fail += r.summary.fail;
        undefined += r.summary.undefined;
        for row in verify_csv_rows(r) {
            csv += &row;
            csv.push('\n');
        }
        cases_json.push(report_json(i, r));
    }
    let mut body = header(cfg, "verify");
    body.insert("surface".into(), json!(surface.name()));
    body.insert("cases".into(), Value::Array(cases_json));
    body.insert("failed".into(), json!(fail));
    body.insert("undefined".into(), json!(undefined));
    emit(out, body, csv)?;
    Ok(if fail > 0 {
        EXIT_VERIFY
    } else if undefined > 0 {
        EXIT_NUMERIC
    } else {
        EXIT_OK
    })
}

fn cmd_sweep(cfg: &RunConfig, out: &Outputs) -> Result<i32, CliError> {
    let surface = cfg.surface_metric()?;
    let study = sharpness_study(
        &surface,
        cfg.sweep_base_radius,
        (&cfg.sweep_cos, &cfg.sweep_sin),
        &cfg.sweep_eps,
        cfg.sweep_l,
        &cfg.solver,
    )?;
    let mut csv = csv_header(cfg, "sweep") + "kind,eps,ratio,mu,bound\n";
    let mut points = Vec::new();
    for p in &study.points {
        csv += &format!(
            "computed,{},{},{},{}\n",
            csv_f64(p.eps),
            csv_f64(p.ratio),
            csv_f64(p.mu),
            csv_f64(p.bound)
        );
        points.push(json!({
            "eps": num(p.eps), "ratio": num(p.ratio), "mu": num(p.mu), "bound": num(p.bound), "converged": p.converged,
        }));
    }
    csv += &format!("extrapolated,{},{},,\n", csv_f64(0.0), csv_f64(study.limit));
    let mut body = header(cfg, "sweep");
    body.insert("surface".into(), json!(surface.name()));
    body.insert("l".into(), json!(study.l));
    body.insert("points".into(), Value::Array(points));
    body.insert("extrapolated_ratio".into(), num(study.limit));
    body.insert("monotone".into(), json!(study.is_monotone(1e-6)));
    emit(out, body, csv)?;
    let converged = study.points.iter().all(|p| p.converged);
    Ok(if converged { EXIT_OK } else { EXIT_NUMERIC })
}

/// Runs a parsed command line and returns the exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    let (name, args) = match &cli.command {
        Command::BallSpectrum(a) => ("ball-spectrum", a),
        Command::Spectrum(a) => ("spectrum", a),
        Command::Verify(a) => ("verify", a),
        Command::Sweep(a) => ("sweep", a),
    };
    let (cfg, out) = load(args)?;
    match name {
        "ball-spectrum" => cmd_ball_spectrum(&cfg, &out),
        "spectrum" => cmd_spectrum(&cfg, &out),
        "verify" => cmd_verify(&cfg, &out),
        _ => cmd_sweep(&cfg, &out),
    }
}

/// Parses `args` and runs; usage errors map to exit code 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
