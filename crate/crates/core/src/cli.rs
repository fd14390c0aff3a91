//! The `conefix` command line.
//!
//! Every run prints one JSON document holding the resolved configuration,
//! the report of the verb and a status. Exit codes: 0 when the check passed,
//! the iteration converged or the degree is reliable; 1 when a property is
//! violated, an iteration diverged or a degree is unreliable; 2 on usage or
//! spec errors.
//!
//! Map, cone and region arguments take a file path or inline JSON; maps may
//! also be given as a builtin name. Vectors are comma separated.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certify::{
    check_guiding_g, check_guiding_g2, check_monotone, check_norm_monotone, check_scalable, check_subhomogeneous,
    check_sup_monotone, estimate_contraction, find_feasible, find_invariant_icecream, PropertyReport, SampleConfig,
    Strength,
};
use crate::cone::Cone;
use crate::degree::{check_theorem, degree, locate_fixed_points, LocateOptions, TheoremKind, TheoremOptions, POINT_NAMES};
use crate::error::{Error, Result};
use crate::map::{parse_map_spec, MapHandle, BUILTIN_NAMES};
use crate::region::Region;
use crate::solve::{contraction_solve, iterate_in, monotone_descent, SolveResult};
use crate::vector::Vector;

pub const SEED_ENV: &str = "CONEFIX_SEED";

pub const DEMO_NAMES: [&str; 4] = ["example3", "piecewise_contraction", "zigzag", "unimodal_sigmoid_layer"];

#[derive(Debug, Parser)]
#[command(name = "conefix", version, about = "Fixed points of cone-ordered mappings")]
struct Cli {
    /// Sampling seed; falls back to CONEFIX_SEED, then 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cap on worker threads. Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify a mapping property by sampling.
    Check(CheckArgs),
    /// Iterate to a fixed point.
    Solve(SolveArgs),
    /// Degree of I - f over a region.
    Degree(DegreeArgs),
    /// Localise fixed points by subdivision.
    Locate(LocateArgs),
    /// Sample feasible points x >=_K 0 with f(x) <=_K x.
    Feasible(FeasibleArgs),
    /// Check the hypotheses of an existence theorem and search for its fixed points.
    Theorem(TheoremArgs),
    /// Run a worked example.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
struct MapArgs {
    /// Map spec: file, inline JSON or builtin name.
    #[arg(long)]
    map: String,
    /// Cone spec: file or inline JSON. Defaults to the orthant.
    #[arg(long)]
    cone: Option<String>,
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Sample count.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Sampling region (file or inline JSON); its bounding box is sampled.
    /// Defaults to the unit cube.
    #[arg(long)]
    region: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PropertyName {
    Monotone,
    SupMonotone,
    Scalable,
    Subhomogeneous,
    Contractive,
    NormMonotone,
    GuidingG,
    GuidingG2,
    InvariantCone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrengthArg {
    Weak,
    Strict,
    Strong,
}

impl From<StrengthArg> for Strength {
    fn from(s: StrengthArg) -> Self {
        match s {
            StrengthArg::Weak => Strength::Weak,
            StrengthArg::Strict => Strength::Strict,
            StrengthArg::Strong => Strength::Strong,
        }
    }
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    map: MapArgs,
    #[command(flatten)]
    sampling: SampleArgs,
    #[arg(long, value_enum)]
    property: PropertyName,
    #[arg(long, value_enum, default_value = "weak")]
    strength: StrengthArg,
    /// Direction for `contractive` (interior of K) or weights for `norm_monotone`.
    #[arg(long)]
    w: Option<String>,
    /// Angle for `guiding_g2`.
    #[arg(long)]
    gamma: Option<f64>,
    /// Axis for `invariant_cone`; defaults to all ones.
    #[arg(long)]
    axis: Option<String>,
    /// Candidate half-angle cosines for `invariant_cone`, tried largest first.
    #[arg(long)]
    betas: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TraceFormat {
    /// Tab-separated columns `k`, `x`, `residual_w`, `order_flag`, `bound`.
    Table,
    /// The full result as JSON.
    Json,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Contraction solver with a priori bounds; needs --w and --c.
    #[arg(long, conflicts_with = "monotone_descent")]
    contraction: bool,
    /// Order-monotone descent from the feasible point --from.
    #[arg(long)]
    monotone_descent: bool,
    /// Interior direction (contraction) or norm weights (plain iteration).
    #[arg(long)]
    w: Option<String>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    x0: Option<String>,
    #[arg(long, requires = "monotone_descent")]
    from: Option<String>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Also write the iteration trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    trace_format: TraceFormat,
}

#[derive(Debug, Args)]
struct DegreeArgs {
    #[arg(long)]
    map: String,
    #[arg(long)]
    region: String,
    /// Initial boundary samples in 2-D.
    #[arg(long, default_value_t = 256)]
    boundary_samples: usize,
    #[arg(long, default_value_t = crate::degree::DEFAULT_RESIDUAL_TOLERANCE)]
    tol: f64,
}

#[derive(Debug, Args)]
struct LocateArgs {
    #[arg(long)]
    map: String,
    #[arg(long)]
    region: String,
    #[arg(long, default_value_t = LocateOptions::default().max_depth)]
    depth: usize,
    #[arg(long, default_value_t = LocateOptions::default().boundary_samples)]
    boundary_samples: usize,
}

#[derive(Debug, Args)]
struct FeasibleArgs {
    #[command(flatten)]
    map: MapArgs,
    #[command(flatten)]
    sampling: SampleArgs,
}

#[derive(Debug, Args)]
struct TheoremArgs {
    #[command(flatten)]
    map: MapArgs,
    #[command(flatten)]
    sampling: SampleArgs,
    /// degreerzero, three_fixed_points, thm5, thm6, thm8, thm9, guiding_G or guiding_G2.
    #[arg(long)]
    name: String,
    /// All points as JSON, e.g. `{"x_prime":[0.3],"x_double_prime":[0.6]}`.
    #[arg(long)]
    points: Option<String>,
    /// A single point, `name=v1,v2`; repeatable.
    #[arg(long = "point")]
    point: Vec<String>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, default_value_t = LocateOptions::default().max_depth)]
    depth: usize,
}

#[derive(Debug, Args)]
struct DemoArgs {
    /// example3, piecewise_contraction, zigzag or unimodal_sigmoid_layer.
    name: String,
}

/// Outcome of a verb, mapped onto the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Pass,
    Violated,
    Converged,
    Diverged,
    Reliable,
    Unreliable,
}

impl Status {
    fn exit_code(self) -> i32 {
        match self {
            Self::Pass | Self::Converged | Self::Reliable => 0,
            Self::Violated | Self::Diverged | Self::Unreliable => 1,
        }
    }

    fn pass_if(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Violated
        }
    }
}

struct Outcome {
    status: Status,
    config: Value,
    report: Value,
    summary: Vec<String>,
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and diagnostics to standard error. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("conefix: {e}");
            2
        }
    }
}

/// [`run_with`] on the process arguments and standard output.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let seed = resolve_seed(cli.seed, std::env::var(SEED_ENV).ok().as_deref())?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::InvalidArgument("--threads must be positive".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let verb = verb_name(&cli.command);
    let outcome = pool.install(|| dispatch(&cli.command, seed))?;
    let mut config = outcome.config;
    config["verb"] = json!(verb);
    config["seed"] = json!(seed);
    let document = json!({
        "config": config,
        "status": outcome.status,
        "summary": outcome.summary,
        "report": outcome.report,
    });
    let text = serde_json::to_string_pretty(&document)? + "\n";
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(outcome.status.exit_code())
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64> {
    match (flag, env) {
        (Some(seed), _) => Ok(seed),
        (None, Some(text)) => text
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{SEED_ENV}={text} is not an unsigned integer"))),
        (None, None) => Ok(0),
    }
}

fn verb_name(command: &Command) -> &'static str {
    match command {
        Command::Check(_) => "check",
        Command::Solve(_) => "solve",
        Command::Degree(_) => "degree",
        Command::Locate(_) => "locate",
        Command::Feasible(_) => "feasible",
        Command::Theorem(_) => "theorem",
        Command::Demo(_) => "demo",
    }
}

fn dispatch(command: &Command, seed: u64) -> Result<Outcome> {
    match command {
        Command::Check(a) => check(a, seed),
        Command::Solve(a) => solve(a),
        Command::Degree(a) => degree_verb(a),
        Command::Locate(a) => locate(a),
        Command::Feasible(a) => feasible(a, seed),
        Command::Theorem(a) => theorem(a, seed),
        Command::Demo(a) => demo(&a.name, seed),
    }
}

/// Inline JSON when the argument starts with `{`, a file otherwise.
fn read_document(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg))
        .map_err(|e| Error::InvalidArgument(format!("cannot read `{arg}`: {e}")))
}

fn load_map(arg: &str) -> Result<MapHandle> {
    if BUILTIN_NAMES.contains(&arg) {
        return MapHandle::builtin(arg);
    }
    parse_map_spec(&read_document(arg)?)
}

fn load_cone(arg: Option<&str>, dim: usize) -> Result<Cone> {
    let cone = match arg {
        Some(a) => Cone::from_json(&read_document(a)?)?,
        None => Cone::orthant(dim)?,
    };
    if cone.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: cone.dim() });
    }
    Ok(cone)
}

fn load_region(arg: &str, dim: usize) -> Result<Region> {
    let region = Region::from_json(&read_document(arg)?)?;
    if region.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: region.dim() });
    }
    Ok(region)
}

/// Comma-separated finite reals.
pub fn parse_vector(text: &str) -> Result<Vector> {
    let entries = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("`{s}` is not a number in `{text}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Vector::new(entries)
}

fn parse_vector_dim(text: &str, dim: usize) -> Result<Vector> {
    let v = parse_vector(text)?;
    v.check_dim(dim)?;
    Ok(v)
}

fn self_map_dim(map: &MapHandle) -> Result<usize> {
    crate::map::require_self_map(map)
}

fn sample_config(args: &SampleArgs, dim: usize, seed: u64) -> Result<(SampleConfig, Value)> {
    let (low, high) = match &args.region {
        Some(r) => load_region(r, dim)?.bounding_box()?,
        None => (vec![0.0; dim], vec![1.0; dim]),
    };
    let cfg = SampleConfig::new(seed, args.samples, Vector::new(low)?, Vector::new(high)?)?;
    let echo = serde_json::to_value(&cfg)?;
    Ok((cfg, echo))
}

fn base_config(map: &MapHandle, cone: Option<&Cone>) -> Result<Value> {
    let mut v = json!({ "map": map.to_spec() });
    if let Some(k) = cone {
        v["cone"] = serde_json::to_value(k)?;
    }
    Ok(v)
}

fn property_outcome(report: &PropertyReport, config: Value) -> Result<Outcome> {
    let mut summary = vec![format!(
        "{}: {} violations in {} samples",
        property_label(report),
        report.violations,
        report.samples_tested
    )];
    if let Some(w) = &report.witness {
        summary.push(match &w.x_prime {
            Some(xp) => format!("witness x = {}, x' = {}", w.x, xp),
            None => format!("witness x = {}", w.x),
        });
    }
    Ok(Outcome { status: Status::pass_if(report.passed()), config, report: serde_json::to_value(report)?, summary })
}

fn property_label(report: &PropertyReport) -> String {
    serde_json::to_value(&report.property)
        .ok()
        .and_then(|v| v.get("kind").and_then(Value::as_str).map(str::to_string))
        .unwrap_or_default()
}

fn check(a: &CheckArgs, seed: u64) -> Result<Outcome> {
    let map = load_map(&a.map.map)?;
    let dim = self_map_dim(&map)?;
    let cone = load_cone(a.map.cone.as_deref(), dim)?;
    let (cfg, echo) = sample_config(&a.sampling, dim, seed)?;
    let mut config = base_config(&map, Some(&cone))?;
    config["sampling"] = echo;
    config["property"] = json!(format!("{:?}", a.property).to_lowercase());
    config["strength"] = json!(format!("{:?}", a.strength).to_lowercase());
    let strength = Strength::from(a.strength);
    let need = |flag: &Option<String>, name: &str| -> Result<Vector> {
        let text = flag.as_deref().ok_or_else(|| Error::InvalidArgument(format!("--{name} is required")))?;
        parse_vector_dim(text, dim)
    };
    let report = match a.property {
        PropertyName::Monotone => check_monotone(&map, &cone, &cfg, strength)?,
        PropertyName::SupMonotone => check_sup_monotone(&map, &cone, &cfg, strength)?,
        PropertyName::Scalable => check_scalable(&map, &cone, &cfg, strength)?,
        PropertyName::Subhomogeneous => check_subhomogeneous(&map, &cone, &cfg, strength)?,
        PropertyName::NormMonotone => {
            let v = need(&a.w, "w")?;
            config["w"] = json!(v);
            check_norm_monotone(&map, &cone, &v, &cfg)?
        }
        PropertyName::Contractive => {
            let w = need(&a.w, "w")?;
            config["w"] = json!(w);
            let (c_hat, report) = estimate_contraction(&map, &cone, &w, &cfg)?;
            let mut outcome = property_outcome(&report, config)?;
            outcome.summary.push(format!("estimated c = {c_hat}"));
            return Ok(outcome);
        }
        PropertyName::GuidingG => check_guiding_g(&map, &cfg)?,
        PropertyName::GuidingG2 => {
            let gamma = a.gamma.ok_or_else(|| Error::InvalidArgument("--gamma is required".into()))?;
            config["gamma"] = json!(gamma);
            check_guiding_g2(&map, gamma, &cfg)?
        }
        PropertyName::InvariantCone => {
            let axis = match &a.axis {
                Some(t) => parse_vector_dim(t, dim)?,
                None => Vector::ones(dim),
            };
            let betas = match &a.betas {
                Some(t) => parse_vector(t)?.into_inner(),
                None => (1..=19).rev().map(|k| f64::from(k) / 20.0).collect(),
            };
            config["axis"] = json!(axis);
            config["betas"] = json!(betas);
            let report = find_invariant_icecream(&map, &axis, &betas, &cfg)?;
            let summary = vec![match report.beta_star {
                Some(b) => format!("C({axis}, {b}) passed invariance and monotonicity sampling"),
                None => format!("no candidate beta passed for axis {axis}"),
            }];
            return Ok(Outcome {
                status: Status::pass_if(report.beta_star.is_some()),
                config,
                report: serde_json::to_value(&report)?,
                summary,
            });
        }
    };
    property_outcome(&report, config)
}

/// The trace of `result` as a table or as the JSON result document.
pub fn emit_trace(result: &SolveResult, format: TraceFormat) -> String {
    match format {
        TraceFormat::Table => result.trace.to_table(),
        TraceFormat::Json => result.to_json(),
    }
}

fn solve(a: &SolveArgs) -> Result<Outcome> {
    let map = load_map(&a.map.map)?;
    let dim = self_map_dim(&map)?;
    let cone = load_cone(a.map.cone.as_deref(), dim)?;
    let mut config = base_config(&map, Some(&cone))?;
    config["tol"] = json!(a.tol);
    config["max_iter"] = json!(a.max_iter);
    let result = if a.contraction {
        let w = parse_vector_dim(a.w.as_deref().ok_or_else(|| Error::InvalidArgument("--w is required".into()))?, dim)?;
        let c = a.c.ok_or_else(|| Error::InvalidArgument("--c is required".into()))?;
        let x0 = parse_vector_dim(a.x0.as_deref().ok_or_else(|| Error::InvalidArgument("--x0 is required".into()))?, dim)?;
        config["method"] = json!("contraction");
        config["w"] = json!(w);
        config["c"] = json!(c);
        config["x0"] = json!(x0);
        contraction_solve(&map, &cone, &w, c, &x0, a.tol, a.max_iter)
    } else if a.monotone_descent {
        let from = a.from.as_deref().or(a.x0.as_deref());
        let p = parse_vector_dim(from.ok_or_else(|| Error::InvalidArgument("--from is required".into()))?, dim)?;
        config["method"] = json!("monotone_descent");
        config["from"] = json!(p);
        monotone_descent(&map, &cone, &p, a.tol, a.max_iter)
    } else {
        let x0 = parse_vector_dim(a.x0.as_deref().ok_or_else(|| Error::InvalidArgument("--x0 is required".into()))?, dim)?;
        let w = match &a.w {
            Some(t) => parse_vector_dim(t, dim)?,
            None => Vector::ones(dim),
        };
        config["method"] = json!("iterate");
        config["x0"] = json!(x0);
        config["w"] = json!(w);
        iterate_in(&map, &cone, &x0, a.tol, a.max_iter, &w)
    };
    let result = match result {
        Ok(r) => r,
        Err(e) if is_run_failure(&e) => {
            return Ok(Outcome {
                status: Status::Diverged,
                config,
                report: json!({ "error": e.to_string() }),
                summary: vec![format!("aborted: {e}")],
            })
        }
        Err(e) => return Err(e),
    };
    if let Some(path) = &a.trace {
        std::fs::write(path, emit_trace(&result, a.trace_format))?;
        config["trace"] = json!(path);
        config["trace_format"] = json!(format!("{:?}", a.trace_format).to_lowercase());
    }
    let status = if result.converged() { Status::Converged } else { Status::Diverged };
    let summary = vec![format!(
        "{:?} after {} steps at {} (residual {})",
        result.trace.status,
        result.trace.steps(),
        result.fixed_point,
        result.residual_inf
    )];
    Ok(Outcome { status, config, report: serde_json::to_value(&result)?, summary })
}

/// Errors that describe a failed run rather than a bad invocation.
fn is_run_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::OrderViolation { .. }
            | Error::ContractionViolation { .. }
            | Error::RateTooLarge(_)
            | Error::NotFeasible
            | Error::MaxIterations(_)
            | Error::Unsupported(_)
            | Error::NonFinite { .. }
    )
}

fn degree_verb(a: &DegreeArgs) -> Result<Outcome> {
    let map = load_map(&a.map)?;
    let dim = self_map_dim(&map)?;
    let region = load_region(&a.region, dim)?;
    let mut config = base_config(&map, None)?;
    config["region"] = serde_json::to_value(&region)?;
    config["boundary_samples"] = json!(a.boundary_samples);
    config["tol"] = json!(a.tol);
    let report = degree(&map, &region, a.boundary_samples, a.tol)?;
    let summary = vec![match report.degree {
        Some(d) => format!("degree {d}"),
        None => format!("unreliable: boundary residual {}", report.boundary_min_residual),
    }];
    let status = if report.reliable { Status::Reliable } else { Status::Unreliable };
    Ok(Outcome { status, config, report: serde_json::to_value(&report)?, summary })
}

fn locate(a: &LocateArgs) -> Result<Outcome> {
    let map = load_map(&a.map)?;
    let dim = self_map_dim(&map)?;
    let region = load_region(&a.region, dim)?;
    let opts = LocateOptions { max_depth: a.depth, boundary_samples: a.boundary_samples, ..LocateOptions::default() };
    let mut config = base_config(&map, None)?;
    config["region"] = serde_json::to_value(&region)?;
    config["locate"] = serde_json::to_value(&opts)?;
    let report = locate_fixed_points(&map, &region, &opts)?;
    let summary = located_summary(&report);
    let reliable = report.region_degree.reliable && report.unresolved.is_empty() && !report.truncated;
    let status = if reliable { Status::Reliable } else { Status::Unreliable };
    Ok(Outcome { status, config, report: serde_json::to_value(&report)?, summary })
}

fn located_summary(report: &crate::degree::LocateReport) -> Vec<String> {
    let mut lines: Vec<String> = report
        .boxes
        .iter()
        .map(|b| {
            let x = b.estimate.as_ref().map_or_else(|| "?".to_string(), ToString::to_string);
            let d = b.degree.map_or_else(|| "?".to_string(), |d| d.to_string());
            format!("fixed point {x} degree {d}")
        })
        .collect();
    if !report.unresolved.is_empty() {
        lines.push(format!("{} unresolved boxes", report.unresolved.len()));
    }
    lines
}

fn feasible(a: &FeasibleArgs, seed: u64) -> Result<Outcome> {
    let map = load_map(&a.map.map)?;
    let dim = self_map_dim(&map)?;
    let cone = load_cone(a.map.cone.as_deref(), dim)?;
    let (cfg, echo) = sample_config(&a.sampling, dim, seed)?;
    let mut config = base_config(&map, Some(&cone))?;
    config["sampling"] = echo;
    let points = find_feasible(&map, &cone, &cfg)?;
    let summary = vec![format!("{} feasible points in {} samples", points.len(), cfg.count)];
    Ok(Outcome {
        status: Status::pass_if(!points.is_empty()),
        config,
        report: json!({ "points": points }),
        summary,
    })
}

fn parse_points(a: &TheoremArgs, dim: usize) -> Result<BTreeMap<String, Vector>> {
    let mut points: BTreeMap<String, Vector> = match &a.points {
        Some(text) => serde_json::from_str(&read_document(text)?).map_err(|e| Error::Schema(e.to_string()))?,
        None => BTreeMap::new(),
    };
    for item in &a.point {
        let (name, values) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("--point expects name=v1,v2, got `{item}`")))?;
        if !POINT_NAMES.contains(&name) {
            return Err(Error::InvalidArgument(format!("unknown point name `{name}`")));
        }
        points.insert(name.to_string(), parse_vector(values)?);
    }
    for p in points.values() {
        p.check_dim(dim)?;
    }
    Ok(points)
}

fn theorem(a: &TheoremArgs, seed: u64) -> Result<Outcome> {
    let map = load_map(&a.map.map)?;
    let dim = self_map_dim(&map)?;
    let cone = load_cone(a.map.cone.as_deref(), dim)?;
    let kind = TheoremKind::from_name(&a.name)?;
    let points = parse_points(a, dim)?;
    let (cfg, echo) = sample_config(&a.sampling, dim, seed)?;
    let opts = TheoremOptions { gamma: a.gamma, locate: LocateOptions::default().with_depth(a.depth), ..TheoremOptions::default() };
    let mut config = base_config(&map, Some(&cone))?;
    config["sampling"] = echo;
    config["theorem"] = json!(kind);
    config["points"] = json!(points);
    config["options"] = serde_json::to_value(&opts)?;
    let report = check_theorem(&map, &cone, kind, &points, &cfg, &opts)?;
    let mut summary: Vec<String> = report
        .hypotheses
        .iter()
        .map(|h| format!("{}: {:?}", h.name, h.verified))
        .collect();
    if let Some(c) = &report.conclusion_check {
        summary.push(format!("located {} of {} promised fixed points", c.located.len(), c.promised));
        summary.extend(c.located.iter().map(|p| format!("fixed point {}", p.x)));
    }
    Ok(Outcome { status: Status::pass_if(report.passed()), config, report: serde_json::to_value(&report)?, summary })
}

fn demo(name: &str, seed: u64) -> Result<Outcome> {
    match name {
        "example3" => {
            let map = MapHandle::builtin("example3")?;
            let region = Region::interval(0.0, 1.0)?;
            let opts = LocateOptions::default();
            let report = locate_fixed_points(&map, &region, &opts)?;
            let mut config = base_config(&map, None)?;
            config["region"] = serde_json::to_value(&region)?;
            config["locate"] = serde_json::to_value(&opts)?;
            let ok = report.boxes.len() == 3 && report.unresolved.is_empty();
            Ok(Outcome {
                status: if ok { Status::Reliable } else { Status::Unreliable },
                config,
                summary: located_summary(&report),
                report: serde_json::to_value(&report)?,
            })
        }
        "piecewise_contraction" => {
            let map = MapHandle::builtin("piecewise_contraction")?;
            let cone = Cone::orthant(1)?;
            let (w, x0) = (Vector::ones(1), Vector::ones(1));
            let mut config = base_config(&map, Some(&cone))?;
            config["method"] = json!("contraction");
            config["w"] = json!(w);
            config["c"] = json!(0.5);
            config["x0"] = json!(x0);
            config["tol"] = json!(1e-10);
            let result = contraction_solve(&map, &cone, &w, 0.5, &x0, 1e-10, 1_000)?;
            let summary = vec![format!("fixed point {} after {} steps", result.fixed_point, result.trace.steps())];
            let status = if result.converged() { Status::Converged } else { Status::Diverged };
            Ok(Outcome { status, config, report: serde_json::to_value(&result)?, summary })
        }
        "zigzag" => {
            let map = MapHandle::builtin("zigzag")?;
            let cone = Cone::orthant(2)?;
            let cfg = SampleConfig::cube(seed, 100_000, 2, 0.0, 5.0)?;
            let report = check_monotone(&map, &cone, &cfg, Strength::Weak)?;
            let mut config = base_config(&map, Some(&cone))?;
            config["sampling"] = serde_json::to_value(&cfg)?;
            config["property"] = json!("monotone");
            property_outcome(&report, config)
        }
        "unimodal_sigmoid_layer" => {
            let map = MapHandle::builtin("unimodal_sigmoid_layer")?;
            let cfg = SampleConfig::cube(seed, 100_000, 2, -1.0, 2.0)?;
            let axis = Vector::ones(2);
            let betas: Vec<f64> = (1..=19).rev().map(|k| f64::from(k) / 20.0).collect();
            let report = find_invariant_icecream(&map, &axis, &betas, &cfg)?;
            let mut config = base_config(&map, None)?;
            config["sampling"] = serde_json::to_value(&cfg)?;
            config["axis"] = json!(axis);
            config["betas"] = json!(betas);
            let summary = vec![match report.beta_star {
                Some(b) => format!("largest invariant beta {b}"),
                None => "no candidate beta passed".to_string(),
            }];
            Ok(Outcome {
                status: Status::pass_if(report.beta_star.is_some()),
                config,
                report: serde_json::to_value(&report)?,
                summary,
            })
        }
        other => Err(Error::InvalidArgument(format!("unknown demo `{other}` (expected one of {})", DEMO_NAMES.join(", ")))),
    }
}
