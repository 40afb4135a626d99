//! Command-line front end: `phase`, `sweep`, `find-tc` and `verify`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::analysis::{
    evaluate, find_tc, scan_bracket, sweep, temperature_grid, Method, PhaseKind, PhaseResult, Spacing, SweepRow,
};
use crate::error::Error;
use crate::models::{LoopKind, ModelConfig, ModelKind};
use crate::verify::{run_checks, Bound, DEFAULT_VERIFY_STEPS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
/// Smallest `--n-steps` accepted on the command line.
pub const MIN_CLI_STEPS: usize = 8;
/// Largest accepted difference between closed-form and numeric amplitudes.
pub const METHOD_AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseSel {
    Interferometric,
    Uhlmann,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodSel {
    Closed,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelSel {
    TwoLevel,
    ThreeLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopSel {
    Equator,
    Meridian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpacingSel {
    Linear,
    Log,
}

#[derive(Debug, Parser)]
#[command(name = "mixphase", version, about = "Interferometric and Uhlmann phases of thermal states on parameter loops")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Phase and amplitude at one temperature, as JSON.
    Phase(PhaseArgs),
    /// Temperature sweep, as CSV or JSON.
    Sweep(SweepArgs),
    /// Critical temperature by bisection on Re G.
    FindTc(FindTcArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Default, Args)]
struct Common {
    #[arg(long, value_enum)]
    model: Option<ModelSel>,
    #[arg(long, value_enum)]
    phase: Option<PhaseSel>,
    #[arg(long = "loop", value_enum)]
    loop_kind: Option<LoopSel>,
    #[arg(long, allow_negative_numbers = true)]
    phi0: Option<f64>,
    #[arg(long)]
    omega: Option<u32>,
    #[arg(long = "R", allow_negative_numbers = true)]
    r: Option<f64>,
    #[arg(long, value_enum)]
    method: Option<MethodSel>,
    #[arg(long)]
    n_steps: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct PhaseArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long = "T", allow_negative_numbers = true)]
    t: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_negative_numbers = true)]
    t_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_max: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long, value_enum)]
    spacing: Option<SpacingSel>,
}

#[derive(Debug, Args)]
struct FindTcArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_negative_numbers = true)]
    t_lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t_hi: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Run only the named check; repeatable.
    #[arg(long)]
    check: Vec<String>,
}

/// Values read from `--config`; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    model: Option<ModelSel>,
    phase: Option<PhaseSel>,
    #[serde(rename = "loop")]
    loop_kind: Option<LoopSel>,
    phi0: Option<f64>,
    omega: Option<u32>,
    #[serde(rename = "R")]
    r: Option<f64>,
    method: Option<MethodSel>,
    n_steps: Option<usize>,
    threads: Option<usize>,
    output: Option<PathBuf>,
    format: Option<Format>,
    strict: Option<bool>,
    #[serde(rename = "T")]
    t: Option<f64>,
    t_min: Option<f64>,
    t_max: Option<f64>,
    n_points: Option<usize>,
    spacing: Option<SpacingSel>,
    t_lo: Option<f64>,
    t_hi: Option<f64>,
    tol: Option<f64>,
    check: Option<Vec<String>>,
}

/// Outcome of a command: exit code, stdout payload.
struct Failure {
    code: i32,
    error: Value,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, error: json!({ "code": "usage", "message": message.into() }) }
    }

    fn numeric(e: &Error) -> Self {
        Self { code: EXIT_NUMERIC, error: json!({ "code": e.code(), "message": e.to_string() }) }
    }

    fn config(e: &Error) -> Self {
        Self { code: EXIT_USAGE, error: json!({ "code": e.code(), "message": e.to_string() }) }
    }
}

struct Resolved {
    model: ModelConfig,
    phase: PhaseSel,
    method: MethodSel,
    n_steps: usize,
    threads: Option<usize>,
    output: Option<PathBuf>,
    format: Option<Format>,
    strict: bool,
}

fn load_file(path: &Option<PathBuf>) -> Result<FileConfig, Failure> {
    let Some(path) = path else { return Ok(FileConfig::default()) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::usage(format!("invalid config {}: {e}", path.display())))
}

fn resolve(c: &Common, f: &FileConfig, default_steps: usize) -> Result<Resolved, Failure> {
    let kind = match c.model.or(f.model).unwrap_or(ModelSel::ThreeLevel) {
        ModelSel::TwoLevel => ModelKind::TwoLevel,
        ModelSel::ThreeLevel => ModelKind::ThreeLevel,
    };
    let loop_kind = match c.loop_kind.or(f.loop_kind).unwrap_or(LoopSel::Meridian) {
        LoopSel::Equator => LoopKind::Equator,
        LoopSel::Meridian => LoopKind::Meridian,
    };
    let model = ModelConfig {
        kind,
        r: c.r.or(f.r).unwrap_or(1.0),
        omega: c.omega.or(f.omega).unwrap_or(1),
        loop_kind,
        phi0: c.phi0.or(f.phi0).unwrap_or(0.0),
    };
    model.validate().map_err(|e| Failure::config(&e))?;
    let n_steps = c.n_steps.or(f.n_steps).unwrap_or(default_steps);
    if n_steps < MIN_CLI_STEPS {
        return Err(Failure::usage(format!("--n-steps must be >= {MIN_CLI_STEPS}, got {n_steps}")));
    }
    let threads = c.threads.or(f.threads);
    if threads == Some(0) {
        return Err(Failure::usage("--threads must be >= 1"));
    }
    Ok(Resolved {
        model,
        phase: c.phase.or(f.phase).unwrap_or(PhaseSel::Interferometric),
        method: c.method.or(f.method).unwrap_or(MethodSel::Closed),
        n_steps,
        threads,
        output: c.output.clone().or_else(|| f.output.clone()),
        format: c.format.or(f.format),
        strict: c.strict || f.strict.unwrap_or(false),
    })
}

fn kinds(sel: PhaseSel) -> Vec<PhaseKind> {
    match sel {
        PhaseSel::Interferometric => vec![PhaseKind::Interferometric],
        PhaseSel::Uhlmann => vec![PhaseKind::Uhlmann],
        PhaseSel::Both => vec![PhaseKind::Interferometric, PhaseKind::Uhlmann],
    }
}

fn methods(sel: MethodSel) -> Vec<Method> {
    match sel {
        MethodSel::Closed => vec![Method::Closed],
        MethodSel::Numeric => vec![Method::Numeric],
        MethodSel::Both => vec![Method::Closed, Method::Numeric],
    }
}

fn single<T: Copy>(items: &[T], what: &str) -> Result<T, Failure> {
    match items {
        [one] => Ok(*one),
        _ => Err(Failure::usage(format!("this command takes a single {what}"))),
    }
}

fn kind_name(k: PhaseKind) -> &'static str {
    match k {
        PhaseKind::Interferometric => "interferometric",
        PhaseKind::Uhlmann => "uhlmann",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Closed => "closed",
        Method::Numeric => "numeric",
    }
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn result_json(r: &PhaseResult) -> Value {
    let residuals: Map<String, Value> = r.residuals.iter().map(|(k, v)| (k.clone(), number(*v))).collect();
    json!({
        "re_g": number(r.amplitude.re),
        "im_g": number(r.amplitude.im),
        "phase": r.phase.map(number).unwrap_or(Value::Null),
        "visibility": number(r.visibility),
        "g": number(r.g),
        "residuals": Value::Object(residuals),
    })
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match threads {
        None => Ok(f()),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Failure::usage(format!("cannot start {n} threads: {e}"))),
    }
}

fn emit(out: &mut dyn Write, output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::usage(format!("cannot write output: {e}"))),
    }
}

fn cmd_phase(args: &PhaseArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = load_file(&args.common.config)?;
    let r = resolve(&args.common, &file, crate::loops::DEFAULT_STEPS)?;
    let t = args.t.or(file.t).ok_or_else(|| Failure::usage("--T is required"))?;
    if !(t.is_finite() && t > 0.0) {
        return Err(Failure::usage(format!("--T must be positive, got {t}")));
    }
    let kinds = kinds(r.phase);
    let methods = methods(r.method);
    let mut by_kind = Map::new();
    let mut code = EXIT_OK;
    for &kind in &kinds {
        let mut results = Vec::new();
        for &method in &methods {
            let res = with_pool(r.threads, || evaluate(&r.model, kind, method, t, r.n_steps))?
                .map_err(|e| Failure::numeric(&e))?;
            if res.phase.is_none() {
                return Err(Failure::numeric(&Error::ZeroAmplitude { amplitude: res.amplitude }));
            }
            results.push((method, res));
        }
        let value = if let [(_, only)] = results.as_slice() {
            result_json(only)
        } else {
            let diff_g = (results[0].1.amplitude - results[1].1.amplitude).norm();
            let diff_phase = crate::linalg::wrap_angle(results[0].1.phase_or_nan() - results[1].1.phase_or_nan()).abs();
            if r.strict && diff_g > METHOD_AGREEMENT_TOL {
                code = EXIT_NUMERIC;
            }
            let mut m = Map::new();
            for (method, res) in &results {
                m.insert(method_name(*method).to_string(), result_json(res));
            }
            m.insert("abs_diff_g".into(), number(diff_g));
            m.insert("abs_diff_phase".into(), number(diff_phase));
            Value::Object(m)
        };
        by_kind.insert(kind_name(kind).to_string(), value);
    }
    let value = if kinds.len() == 1 { by_kind.into_iter().next().expect("one kind").1 } else { Value::Object(by_kind) };
    emit(out, &r.output, &format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))?;
    Ok(code)
}

fn csv_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// CSV rendering of sweep rows, header `T,re_g,im_g,visibility,g,phase`.
pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("T,re_g,im_g,visibility,g,phase\n");
    for r in rows {
        let fields = [r.t, r.re_g, r.im_g, r.visibility, r.g, r.phase].map(csv_number);
        s.push_str(&fields.join(","));
        s.push('\n');
    }
    s
}

fn rows_to_json(rows: &[SweepRow]) -> String {
    let items: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "t": number(r.t),
                "re_g": number(r.re_g),
                "im_g": number(r.im_g),
                "visibility": number(r.visibility),
                "g": number(r.g),
                "phase": number(r.phase),
                "error": r.error,
            })
        })
        .collect();
    format!("{}\n", serde_json::to_string_pretty(&items).expect("serializable"))
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = load_file(&args.common.config)?;
    let r = resolve(&args.common, &file, crate::loops::DEFAULT_STEPS)?;
    let kind = single(&kinds(r.phase), "--phase")?;
    let method = single(&methods(r.method), "--method")?;
    let spacing = match args.spacing.or(file.spacing).unwrap_or(SpacingSel::Linear) {
        SpacingSel::Linear => Spacing::Linear,
        SpacingSel::Log => Spacing::Log,
    };
    let grid = temperature_grid(
        args.t_min.or(file.t_min).unwrap_or(0.2) * r.model.r,
        args.t_max.or(file.t_max).unwrap_or(6.0) * r.model.r,
        args.n_points.or(file.n_points).unwrap_or(400),
        spacing,
    )
    .map_err(|e| Failure::config(&e))?;
    let rows = with_pool(r.threads, || sweep(&r.model, kind, method, &grid, r.n_steps))?
        .map_err(|e| Failure::numeric(&e))?;
    let text = match r.format.unwrap_or(Format::Csv) {
        Format::Csv => rows_to_csv(&rows),
        Format::Json => rows_to_json(&rows),
    };
    emit(out, &r.output, &text)?;
    let failed = rows.iter().filter(|row| row.error.is_some()).count();
    Ok(if r.strict && failed > 0 { EXIT_NUMERIC } else { EXIT_OK })
}

fn cmd_find_tc(args: &FindTcArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = load_file(&args.common.config)?;
    let r = resolve(&args.common, &file, crate::loops::DEFAULT_STEPS)?;
    let kind = single(&kinds(r.phase), "--phase")?;
    let method = single(&methods(r.method), "--method")?;
    let tol = args.tol.or(file.tol).unwrap_or(1e-10);
    let lo = args.t_lo.or(file.t_lo);
    let hi = args.t_hi.or(file.t_hi);
    let result = with_pool(r.threads, || {
        let bracket = match (lo, hi) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            (None, None) => scan_bracket(&r.model, kind, method, 0.05 * r.model.r, 10.0 * r.model.r, 400, r.n_steps),
            _ => Err(Error::InvalidArgument("give both --t-lo and --t-hi or neither".into())),
        }?;
        find_tc(&r.model, kind, method, bracket, tol, r.n_steps)
    })?;
    let tc = match result {
        Ok(tc) => tc,
        Err(e @ Error::InvalidArgument(_)) => return Err(Failure::config(&e)),
        Err(e) => return Err(Failure::numeric(&e)),
    };
    let value = json!({ "tc": number(tc.tc), "iterations": tc.iterations, "visibility_at_tc": number(tc.visibility) });
    emit(out, &r.output, &format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")))?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = load_file(&args.common.config)?;
    let r = resolve(&args.common, &file, DEFAULT_VERIFY_STEPS)?;
    let checks = if args.check.is_empty() { file.check.clone().unwrap_or_default() } else { args.check.clone() };
    let outcomes = with_pool(r.threads, || run_checks(r.n_steps, &checks))?.ok_or_else(|| {
        Failure::usage(format!("unknown check; available: {}", crate::verify::check_names().join(", ")))
    })?;
    let mut text = String::new();
    for o in &outcomes {
        let op = match o.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        text.push_str(&format!(
            "{:<32} {}  {:>12.4e} {} {:<10.3e} {}\n",
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.value,
            op,
            o.threshold,
            o.detail
        ));
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    if failed.is_empty() {
        text.push_str(&format!("all {} checks passed\n", outcomes.len()));
    } else {
        text.push_str(&format!("{} of {} checks failed: {}\n", failed.len(), outcomes.len(), failed.join(", ")));
    }
    emit(out, &r.output, &text)?;
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_NUMERIC })
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Phase(a) => cmd_phase(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::FindTc(a) => cmd_find_tc(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(out, "{}", json!({ "error": f.error }));
            f.code
        }
    }
}
