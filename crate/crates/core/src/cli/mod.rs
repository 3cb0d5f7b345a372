//! Command-line front end.
//!
//! Every subcommand is a thin wrapper over the library. Failures print one
//! line, `error: <kind>: <detail>`, and exit nonzero. JSON outputs embed the
//! full configuration; wall-clock values only appear under `timing`.

mod bench;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::baselines::{chamfer, emd_exact, hausdorff};
use crate::eval::{flow_error, registration_error, FLOW_THRESHOLDS};
use crate::io::results::{read_json, write_json, FlowDoc, Prediction, RegistrationDoc, TraceDoc, TransformDoc};
use crate::io::{load_cloud, random_rigid_spec, save_cloud, synth_scene, CloudFormat, GroundTruth, SceneSpec, ShapeKind};
use crate::metric::{CalibratedField, ClgdParams, DEFAULT_EPSILON};
use crate::reference::{generate_references, ReferenceParams};
use crate::solvers::{estimate_flow, register_rigid, FlowConfig, Metric, OptimizerConfig};
use crate::{Error, Vec3};

pub use bench::Suite;

#[derive(Debug, Parser)]
#[command(name = "clgd", version, about = "Calibrated local geometry distance for 3D point clouds")]
pub struct Cli {
    /// Worker threads for metric evaluation; 0 uses every logical core.
    #[arg(long, global = true, env = "CLGD_THREADS", default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two clouds.
    Dist(DistArgs),
    /// Rigid registration of --src onto --tgt.
    Register(RegisterArgs),
    /// Scene flow from --src to --tgt.
    Flow(FlowArgs),
    /// Write a synthetic scene (src.xyz, tgt.xyz, gt.json).
    Synth(SynthArgs),
    /// Score a register/flow output against ground truth.
    Eval(EvalArgs),
    /// Parameter sweeps on synthetic scenes, written as CSV.
    Bench(bench::BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MetricName {
    Clgd,
    Cd,
    Hd,
    Emd,
}

/// CLGD knobs shared by every subcommand that can use the metric.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ClgdArgs {
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    /// Noisy reference copies per point of the seeding cloud.
    #[arg(long, default_value_t = 10)]
    pub ref_r: usize,
    /// Reference noise, in units of each point's nearest-neighbor distance.
    #[arg(long, default_value_t = 3.0)]
    pub ref_t: f64,
    /// Append the other cloud to the reference set.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub ref_include_other: bool,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Seed for reference-point noise.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl ClgdArgs {
    fn params(&self, beta: f64) -> ClgdParams {
        ClgdParams {
            k: self.k,
            beta,
            epsilon: self.epsilon,
            reference: ReferenceParams {
                repetitions: self.ref_r,
                noise_scale: self.ref_t,
                include_other: self.ref_include_other,
                seed: self.seed,
            },
            symmetrize: false,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DistArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricName::Clgd)]
    pub metric: MetricName,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Average both directions, each cloud seeding its own reference set.
    #[arg(long)]
    pub symmetric: bool,
    #[command(flatten)]
    pub clgd: ClgdArgs,
    /// Force the input format instead of detecting it from the extension.
    #[arg(long, value_enum)]
    pub format: Option<CloudFormat>,
    /// Per-reference CSV (`ref_x,ref_y,ref_z,d,score`); CLGD only.
    #[arg(long)]
    #[serde(skip)]
    pub per_ref_out: Option<PathBuf>,
    /// JSON report.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

/// Optimizer flags; defaults differ per solver so they stay optional here.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SolverArgs {
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub lr: Option<f64>,
    #[arg(long, default_value_t = 0.9)]
    pub adam_beta1: f64,
    #[arg(long, default_value_t = 0.999)]
    pub adam_beta2: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub adam_eps: f64,
    /// Regenerate references every iteration (seed + iteration).
    #[arg(long)]
    pub resample_refs: bool,
    /// Stop after this many iterations without improvement.
    #[arg(long)]
    pub patience: Option<usize>,
    /// Progress to stderr every N iterations; 0 is silent.
    #[arg(long, default_value_t = 0)]
    #[serde(skip)]
    pub log_every: usize,
}

impl SolverArgs {
    /// Copy with the per-solver defaults filled in, for the config echo.
    fn resolved(&self, base: OptimizerConfig) -> Self {
        Self {
            iters: Some(self.iters.unwrap_or(base.iterations)),
            lr: Some(self.lr.unwrap_or(base.learning_rate)),
            ..self.clone()
        }
    }

    fn optimizer(&self, base: OptimizerConfig) -> OptimizerConfig {
        OptimizerConfig {
            iterations: self.iters.unwrap_or(base.iterations),
            learning_rate: self.lr.unwrap_or(base.learning_rate),
            beta1: self.adam_beta1,
            beta2: self.adam_beta2,
            epsilon: self.adam_eps,
            log_every: self.log_every,
            resample_references: self.resample_refs,
            early_stop_patience: self.patience,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RegisterArgs {
    #[arg(long)]
    pub src: PathBuf,
    #[arg(long)]
    pub tgt: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricName::Clgd)]
    pub metric: MetricName,
    #[arg(long, default_value_t = 3.0)]
    pub beta: f64,
    #[command(flatten)]
    pub clgd: ClgdArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Ground truth (`gt.json` from `clgd synth`) to score the result.
    #[arg(long)]
    pub gt: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FlowArgs {
    #[arg(long)]
    pub src: PathBuf,
    #[arg(long)]
    pub tgt: PathBuf,
    #[arg(long, value_enum, default_value_t = MetricName::Clgd)]
    pub metric: MetricName,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Smoothness weight.
    #[arg(long, default_value_t = 50.0)]
    pub alpha: f64,
    /// Neighbors per point in the smoothness term.
    #[arg(long, default_value_t = 30)]
    pub ks: usize,
    #[command(flatten)]
    pub clgd: ClgdArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub gt: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, value_enum, default_value_t = ShapeKind::Sphere)]
    pub kind: ShapeKind,
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0)]
    pub rotation_deg: f64,
    /// Rotation axis `x,y,z`; random when omitted.
    #[arg(long, value_parser = parse_vec3)]
    pub axis: Option<[f64; 3]>,
    #[arg(long, value_parser = parse_vec3, default_value = "0,0,0")]
    pub translation: [f64; 3],
    /// Draw rotation angle, axis and translation at random (overrides the
    /// explicit transform): angle up to this many degrees.
    #[arg(long)]
    pub random_rotation: Option<f64>,
    /// With --random-rotation: translation norm up to this value.
    #[arg(long, default_value_t = 0.0)]
    pub random_translation: f64,
    /// Flow `x,y,z`; repeat once per object for two-object scenes.
    #[arg(long, value_parser = parse_vec3)]
    pub flow: Vec<[f64; 3]>,
    #[arg(long, default_value_t = 0.0)]
    pub crop: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// Sample the target surface independently of the source.
    #[arg(long)]
    pub independent: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    /// Output JSON of `clgd register` or `clgd flow`.
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long)]
    pub gt: PathBuf,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn parse_vec3(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z but got `{s}`"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        let v: f64 = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
        *o = v;
        if !v.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(out)
}

/// A failure reported as a single machine-parsable line.
#[derive(Debug)]
pub struct CliError {
    pub kind: &'static str,
    pub flag: Option<String>,
    pub message: String,
}

impl CliError {
    fn invalid(flag: &str, message: impl Into<String>) -> Self {
        Self {
            kind: "invalid-argument",
            flag: Some(flag.to_string()),
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.flag {
            Some(flag) => write!(f, "error: {}: {}: {}", self.kind, flag, self.message),
            None => write!(f, "error: {}: {}", self.kind, self.message),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = e.to_string().replace('\n', " ");
        match &e {
            Error::InvalidParam { name, reason } => {
                let flag = match *name {
                    "transform" => "--translation".to_string(),
                    "weights" => "--k".to_string(),
                    other => format!("--{other}"),
                };
                CliError::invalid(&flag, reason.clone())
            }
            Error::InvalidK { .. } => CliError::invalid("--k", message),
            Error::Io(_) => Self {
                kind: "io",
                flag: None,
                message,
            },
            Error::Parse { .. } | Error::Format { .. } | Error::Json(_) | Error::Csv(_) => Self {
                kind: "parse",
                flag: None,
                message,
            },
            _ => Self {
                kind: "failed",
                flag: None,
                message,
            },
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn clap_error(err: &clap::Error) -> CliError {
    let flag = match err.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => s.split_whitespace().next().map(str::to_string),
        Some(ContextValue::Strings(v)) => v.first().and_then(|s| s.split_whitespace().next()).map(str::to_string),
        _ => None,
    };
    let text = err.render().to_string();
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut message = lines.next().unwrap_or("").trim_start_matches("error: ").to_string();
    if message.ends_with(':') {
        if let Some(next) = lines.next() {
            message = format!("{message} {next}");
        }
    }
    CliError {
        kind: "invalid-argument",
        flag: flag.or_else(|| matches!(err.kind(), ErrorKind::InvalidSubcommand).then(|| "<command>".into())),
        message,
    }
}

/// Entry point used by the `clgd` binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) if err.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = err.print();
            return ExitCode::from(2);
        }
        Err(err) => {
            eprintln!("{}", clap_error(&err));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::FAILURE
        }
    }
}

/// Runs a parsed command inside a thread pool of the requested size.
pub fn run(cli: Cli) -> CliResult<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::invalid("--threads", e.to_string()))?;
    pool.install(|| match cli.command {
        Command::Dist(a) => cmd_dist(&a),
        Command::Register(a) => cmd_register(&a),
        Command::Flow(a) => cmd_flow(&a),
        Command::Synth(a) => cmd_synth(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Bench(a) => bench::cmd_bench(&a),
    })
}

/// Rounds to 6 significant digits for console output.
pub fn display6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{}", if x == 0.0 { 0.0 } else { x });
    }
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    format!("{rounded}")
}

fn with_path<T>(path: &Path, r: crate::Result<T>) -> CliResult<T> {
    r.map_err(|e| match e {
        Error::Io(io) => CliError {
            kind: "io",
            flag: None,
            message: format!("{}: {io}", path.display()),
        },
        Error::Json(j) => CliError {
            kind: "parse",
            flag: None,
            message: format!("{}: {j}", path.display()),
        },
        other => other.into(),
    })
}

fn solver_metric(name: MetricName, clgd: &ClgdArgs, beta: f64) -> CliResult<Metric> {
    match name {
        MetricName::Clgd => {
            let params = clgd.params(beta);
            params.validate()?;
            Ok(Metric::Clgd(params))
        }
        MetricName::Cd => Ok(Metric::Chamfer),
        MetricName::Emd => Ok(Metric::Emd),
        MetricName::Hd => Err(CliError::invalid(
            "--metric",
            "hd has no useful gradient; solvers accept clgd, cd or emd",
        )),
    }
}

fn config_echo<T: Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).expect("argument structs serialize")
}

const CD_CONVENTION: &str = "cd = mean nearest distance a->b + mean nearest distance b->a (unsquared)";

pub fn cmd_dist(args: &DistArgs) -> CliResult<()> {
    let a = with_path(&args.a, load_cloud(&args.a, args.format))?;
    let b = with_path(&args.b, load_cloud(&args.b, args.format))?;
    if args.per_ref_out.is_some() && args.metric != MetricName::Clgd {
        return Err(CliError::invalid("--per-ref-out", "per-reference output needs --metric clgd"));
    }
    if args.per_ref_out.is_some() && args.symmetric {
        return Err(CliError::invalid("--per-ref-out", "not available with --symmetric"));
    }
    let started = Instant::now();
    let (value, convention) = match args.metric {
        MetricName::Clgd => {
            let mut params = args.clgd.params(args.beta);
            params.symmetrize = args.symmetric;
            params.validate()?;
            let value = if args.symmetric {
                crate::metric::symmetric_clgd(&a, &b, &params)?.value
            } else {
                let refs = generate_references(&a, Some(&b), &params.reference)?;
                let report = CalibratedField::new(&a, &refs, &params)?.report(&b)?;
                if let Some(path) = &args.per_ref_out {
                    with_path(path, write_per_reference(path, refs.points(), &report))?;
                }
                report.value
            };
            (value, "clgd: references seeded by --a, mean of s*d over references")
        }
        MetricName::Cd => (chamfer(&a, &b).value, CD_CONVENTION),
        MetricName::Hd => (hausdorff(&a, &b), "hd = max of both directed maxima of nearest distances"),
        MetricName::Emd => (emd_exact(&a, &b)?.value, "emd = mean matched distance of the optimal bijection"),
    };
    let elapsed = started.elapsed().as_secs_f64();
    if let Some(out) = &args.out {
        let doc = json!({
            "command": "dist",
            "config": config_echo(args),
            "metric": args.metric,
            "convention": convention,
            "value": value,
            "timing": { "wall_clock_s": elapsed },
        });
        with_path(out, write_json(&doc, out))?;
    }
    if args.metric == MetricName::Cd {
        eprintln!("# {CD_CONVENTION}");
    }
    println!("{}", display6(value));
    Ok(())
}

fn write_per_reference(path: &Path, refs: &[Vec3], report: &crate::metric::ClgdReport) -> crate::Result<()> {
    let d = report.per_reference.as_deref().unwrap_or_default();
    let s = report.scores.as_deref().unwrap_or_default();
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["ref_x", "ref_y", "ref_z", "d", "score"])?;
    for ((q, d), s) in refs.iter().zip(d).zip(s) {
        w.serialize((q.x, q.y, q.z, d, s))?;
    }
    w.flush()?;
    Ok(())
}

fn load_truth(path: &Path) -> CliResult<GroundTruth> {
    with_path(path, read_json(path))
}

pub fn cmd_register(args: &RegisterArgs) -> CliResult<()> {
    let src = with_path(&args.src, load_cloud(&args.src, None))?;
    let tgt = with_path(&args.tgt, load_cloud(&args.tgt, None))?;
    let metric = solver_metric(args.metric, &args.clgd, args.beta)?;
    let opt = args.solver.optimizer(OptimizerConfig::registration());
    let truth = args.gt.as_deref().map(load_truth).transpose()?;
    let (tf, trace) = register_rigid(&src, &tgt, &metric, &opt)?;
    let transform = TransformDoc::from_transform(&tf);
    let eval = match &truth {
        Some(gt) => Some(registration_error(
            &transform.rotation_matrix(),
            &transform.translation_vector(),
            &gt.rotation_matrix(),
            &gt.translation_vector(),
        )?),
        None => None,
    };
    let (trace, timing) = TraceDoc::split(trace);
    let echo = RegisterArgs {
        solver: args.solver.resolved(OptimizerConfig::registration()),
        ..args.clone()
    };
    let doc = RegistrationDoc {
        command: "register".into(),
        config: config_echo(&echo),
        transform,
        trace,
        eval,
        timing,
    };
    with_path(&args.out, write_json(&doc, &args.out))?;
    println!("objective {}", display6(doc.trace.best_objective));
    if let Some(e) = eval {
        println!("re_degrees {}", display6(e.re_degrees));
        println!("te {}", display6(e.te));
    }
    Ok(())
}

pub fn cmd_flow(args: &FlowArgs) -> CliResult<()> {
    let src = with_path(&args.src, load_cloud(&args.src, None))?;
    let tgt = with_path(&args.tgt, load_cloud(&args.tgt, None))?;
    let cfg = FlowConfig {
        metric: solver_metric(args.metric, &args.clgd, args.beta)?,
        alpha: args.alpha,
        ks: args.ks,
        optimizer: args.solver.optimizer(OptimizerConfig::flow()),
    };
    let truth = args.gt.as_deref().map(load_truth).transpose()?;
    if let Some(gt) = &truth {
        if gt.flow.len() != src.len() {
            return Err(CliError::invalid(
                "--gt",
                format!("ground truth has {} flow vectors for {} source points", gt.flow.len(), src.len()),
            ));
        }
    }
    let (flow, trace) = estimate_flow(&src, &tgt, &cfg)?;
    let eval = match &truth {
        Some(gt) => Some(flow_error(&flow, &gt.flow_vectors())?),
        None => None,
    };
    let (trace, timing) = TraceDoc::split(trace);
    let echo = FlowArgs {
        solver: args.solver.resolved(OptimizerConfig::flow()),
        ..args.clone()
    };
    let doc = FlowDoc {
        command: "flow".into(),
        config: config_echo(&echo),
        flow: flow.iter().map(|f| [f.x, f.y, f.z]).collect(),
        trace,
        eval,
        thresholds: eval.map(|_| FLOW_THRESHOLDS.to_string()),
        timing,
    };
    with_path(&args.out, write_json(&doc, &args.out))?;
    println!("objective {}", display6(doc.trace.best_objective));
    if let Some(e) = eval {
        print_flow_error(&e);
    }
    Ok(())
}

fn print_flow_error(e: &crate::eval::FlowError) {
    println!("epe3d {}", display6(e.epe3d));
    println!("acc_005 {}", display6(e.acc_005));
    println!("acc_01 {}", display6(e.acc_01));
    println!("outliers {}", display6(e.outliers));
    println!("# {FLOW_THRESHOLDS}");
}

pub fn cmd_synth(args: &SynthArgs) -> CliResult<()> {
    let spec = match args.random_rotation {
        Some(max_deg) => SceneSpec {
            flows: args.flow.clone(),
            noise: args.noise,
            independent: args.independent,
            ..random_rigid_spec(args.kind, args.n, args.seed, max_deg, args.random_translation, args.crop)
        },
        None => SceneSpec {
            kind: args.kind,
            n: args.n,
            seed: args.seed,
            rotation_deg: args.rotation_deg,
            axis: args.axis,
            translation: args.translation,
            flows: args.flow.clone(),
            crop: args.crop,
            noise: args.noise,
            independent: args.independent,
        },
    };
    let scene = synth_scene(&spec)?;
    let dir = &args.out_dir;
    with_path(dir, std::fs::create_dir_all(dir).map_err(Error::from))?;
    let src = dir.join("src.xyz");
    let tgt = dir.join("tgt.xyz");
    let gt = dir.join("gt.json");
    with_path(&src, save_cloud(&scene.src, &src, None))?;
    with_path(&tgt, save_cloud(&scene.tgt, &tgt, None))?;
    with_path(&gt, write_json(&scene.truth, &gt))?;
    println!("src {} points, tgt {} points", scene.src.len(), scene.tgt.len());
    Ok(())
}

pub fn cmd_eval(args: &EvalArgs) -> CliResult<()> {
    let pred: Prediction = with_path(&args.pred, read_json(&args.pred))?;
    let gt = load_truth(&args.gt)?;
    let doc = match pred {
        Prediction::Registration(r) => {
            let e = registration_error(
                &r.transform.rotation_matrix(),
                &r.transform.translation_vector(),
                &gt.rotation_matrix(),
                &gt.translation_vector(),
            )?;
            println!("re_degrees {}", display6(e.re_degrees));
            println!("te {}", display6(e.te));
            json!({ "command": "eval", "task": "register", "eval": e })
        }
        Prediction::Flow(f) => {
            let pred: Vec<Vec3> = f.flow.iter().map(|v| Vec3::from(*v)).collect();
            let e = flow_error(&pred, &gt.flow_vectors())
                .map_err(|e| CliError::invalid("--gt", e.to_string()))?;
            print_flow_error(&e);
            json!({ "command": "eval", "task": "flow", "eval": e, "thresholds": FLOW_THRESHOLDS })
        }
    };
    if let Some(out) = &args.out {
        with_path(out, write_json(&doc, out))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(display6(0.0), "0");
        assert_eq!(display6(0.123456789), "0.123457");
        assert_eq!(display6(1234567.0), "1234570");
        assert_eq!(display6(-2.5e-9), "-0.0000000025");
    }

    #[test]
    fn vec3_flag() {
        assert_eq!(parse_vec3("0.2, 0,-1").unwrap(), [0.2, 0.0, -1.0]);
        assert!(parse_vec3("1,2").is_err());
        assert!(parse_vec3("1,x,2").is_err());
    }

    #[test]
    fn unknown_metric_names_the_flag() {
        let err = Cli::try_parse_from(["clgd", "dist", "--a", "x", "--b", "y", "--metric", "nope"]).unwrap_err();
        let line = clap_error(&err).to_string();
        assert!(line.starts_with("error: invalid-argument: --metric"), "{line}");
        assert!(!line.contains('\n'));
    }
}
