//! `clgd bench`: seeded parameter sweeps written as CSV.
//!
//! Ablations register cropped two-object scenes whose target is sampled
//! independently of the source. The scaling suite times single metric
//! evaluations. Wall-clock values sit in columns ending in `_wall_clock_s`;
//! every other column is deterministic. The run configuration goes to a
//! sidecar `<out>.config.json`.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;

use super::{config_echo, with_path, CliError, CliResult};
use crate::baselines::{chamfer, hausdorff};
use crate::eval::registration_error;
use crate::io::results::write_json;
use crate::io::{random_rigid_spec, synth_scene, ShapeKind};
use crate::metric::{CalibratedField, ClgdParams};
use crate::reference::generate_references;
use crate::solvers::{register_rigid, Metric, OptimizerConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
pub enum Suite {
    #[value(name = "scaling")]
    #[serde(rename = "scaling")]
    Scaling,
    #[value(name = "ablation-K")]
    #[serde(rename = "ablation-K")]
    AblationK,
    #[value(name = "ablation-R")]
    #[serde(rename = "ablation-R")]
    AblationR,
    #[value(name = "ablation-T")]
    #[serde(rename = "ablation-T")]
    AblationT,
    #[value(name = "ablation-beta")]
    #[serde(rename = "ablation-beta")]
    AblationBeta,
}

impl Suite {
    fn default_values(self) -> Vec<f64> {
        match self {
            Suite::Scaling => vec![1024.0, 2048.0, 4096.0, 8192.0],
            Suite::AblationK => vec![1.0, 3.0, 5.0, 10.0],
            Suite::AblationR => vec![1.0, 5.0, 10.0, 20.0],
            Suite::AblationT => vec![0.5, 1.0, 3.0, 5.0],
            Suite::AblationBeta => vec![0.0, 1.0, 3.0, 5.0, 10.0],
        }
    }

    fn param(self) -> &'static str {
        match self {
            Suite::Scaling => "n",
            Suite::AblationK => "k",
            Suite::AblationR => "ref_r",
            Suite::AblationT => "ref_t",
            Suite::AblationBeta => "beta",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Override the swept values (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub values: Option<Vec<f64>>,
    /// Seeded scenes per value (ablations) or timing repeats (scaling).
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Points per scene for ablations.
    #[arg(long, default_value_t = 1024)]
    pub n: usize,
    #[arg(long, default_value_t = 1000)]
    pub iters: usize,
    #[arg(long, default_value_t = 0.02)]
    pub lr: f64,
    /// Fraction of each ablation target removed.
    #[arg(long, default_value_t = 0.4)]
    pub crop: f64,
    /// Maximum rotation of ablation scenes, degrees.
    #[arg(long, default_value_t = 45.0)]
    pub max_rotation: f64,
    #[arg(long, default_value_t = 0.5)]
    pub max_translation: f64,
    /// β used by the K, R and T ablations.
    #[arg(long, default_value_t = 3.0)]
    pub beta: f64,
    /// First scene seed; trial `i` uses `seed + i`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Serialize)]
struct AblationRow {
    param: &'static str,
    value: f64,
    trials: usize,
    median_re_deg: f64,
    median_te: f64,
    mean_re_deg: f64,
    max_re_deg: f64,
    median_objective: f64,
    median_solve_wall_clock_s: f64,
}

#[derive(Debug, Serialize)]
struct ScalingRow {
    n: usize,
    references: usize,
    clgd: f64,
    cd: f64,
    hd: f64,
    clgd_wall_clock_s: f64,
    cd_wall_clock_s: f64,
    hd_wall_clock_s: f64,
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn to_count(flag: &str, v: f64) -> CliResult<usize> {
    if v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64 {
        Ok(v as usize)
    } else {
        Err(CliError::invalid(flag, format!("{v} is not a positive integer")))
    }
}

pub fn cmd_bench(args: &BenchArgs) -> CliResult<()> {
    if args.trials == 0 {
        return Err(CliError::invalid("--trials", "must be at least 1"));
    }
    let values = args.values.clone().unwrap_or_else(|| args.suite.default_values());
    if values.is_empty() {
        return Err(CliError::invalid("--values", "no values to sweep"));
    }
    match args.suite {
        Suite::Scaling => scaling(args, &values)?,
        _ => ablation(args, &values)?,
    }
    let sidecar = sidecar_path(&args.out);
    let doc = json!({ "command": "bench", "config": config_echo(args), "values": values });
    with_path(&sidecar, write_json(&doc, &sidecar))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".config.json");
    out.with_file_name(name)
}

fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> CliResult<()> {
    let write = || -> crate::Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    };
    with_path(path, write())
}

fn ablation(args: &BenchArgs, values: &[f64]) -> CliResult<()> {
    let opt = OptimizerConfig {
        iterations: args.iters,
        learning_rate: args.lr,
        ..OptimizerConfig::registration()
    };
    let flag = match args.suite {
        Suite::AblationK => "--values (k)",
        Suite::AblationR => "--values (ref-r)",
        _ => "--values",
    };
    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let mut params = ClgdParams {
            beta: args.beta,
            ..ClgdParams::default()
        };
        match args.suite {
            Suite::AblationK => params.k = to_count(flag, value)?,
            Suite::AblationR => params.reference.repetitions = to_count(flag, value)?,
            Suite::AblationT => params.reference.noise_scale = value,
            Suite::AblationBeta => params.beta = value,
            Suite::Scaling => unreachable!(),
        }
        params.validate()?;
        let (mut re, mut te, mut obj, mut secs) = (vec![], vec![], vec![], vec![]);
        for trial in 0..args.trials {
            let mut spec = random_rigid_spec(
                ShapeKind::TwoObjects,
                args.n,
                args.seed + trial as u64,
                args.max_rotation,
                args.max_translation,
                args.crop,
            );
            spec.independent = true;
            let scene = synth_scene(&spec)?;
            let (tf, trace) = register_rigid(&scene.src, &scene.tgt, &Metric::Clgd(params), &opt)?;
            let (r, t) = tf.rt();
            let e = registration_error(&r, &t, &scene.truth.rotation_matrix(), &scene.truth.translation_vector())?;
            re.push(e.re_degrees);
            te.push(e.te);
            obj.push(trace.best_objective);
            secs.push(trace.wall_clock_s);
        }
        let row = AblationRow {
            param: args.suite.param(),
            value,
            trials: args.trials,
            median_re_deg: median(re.clone()),
            median_te: median(te),
            mean_re_deg: re.iter().sum::<f64>() / re.len() as f64,
            max_re_deg: re.iter().copied().fold(0.0, f64::max),
            median_objective: median(obj),
            median_solve_wall_clock_s: median(secs),
        };
        eprintln!("{} = {}: median RE {} deg", row.param, value, super::display6(row.median_re_deg));
        rows.push(row);
    }
    write_rows(&args.out, &rows)
}

fn scaling(args: &BenchArgs, values: &[f64]) -> CliResult<()> {
    let params = ClgdParams::default();
    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let n = to_count("--values (n)", value)?;
        let mut spec = random_rigid_spec(ShapeKind::Torus, n, args.seed, 10.0, 0.1, 0.0);
        spec.independent = true;
        let scene = synth_scene(&spec)?;
        let (a, b) = (&scene.src, &scene.tgt);
        let (mut t_clgd, mut t_cd, mut t_hd) = (vec![], vec![], vec![]);
        let (mut clgd, mut cd, mut hd, mut m) = (0.0, 0.0, 0.0, 0);
        for _ in 0..args.trials {
            let t0 = Instant::now();
            let refs = generate_references(a, Some(b), &params.reference)?;
            clgd = CalibratedField::new(a, &refs, &params)?.value(b)?;
            t_clgd.push(t0.elapsed().as_secs_f64());
            m = refs.len();
            let t0 = Instant::now();
            cd = chamfer(a, b).value;
            t_cd.push(t0.elapsed().as_secs_f64());
            let t0 = Instant::now();
            hd = hausdorff(a, b);
            t_hd.push(t0.elapsed().as_secs_f64());
        }
        let row = ScalingRow {
            n,
            references: m,
            clgd,
            cd,
            hd,
            clgd_wall_clock_s: median(t_clgd),
            cd_wall_clock_s: median(t_cd),
            hd_wall_clock_s: median(t_hd),
        };
        eprintln!("n = {n}: clgd {} s", super::display6(row.clgd_wall_clock_s));
        rows.push(row);
    }
    write_rows(&args.out, &rows)
}
