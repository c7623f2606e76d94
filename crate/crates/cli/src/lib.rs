//! Argument parsing and dispatch for the `aquasynth` binary.
//!
//! Data goes to stdout as JSON, diagnostics to stderr. Exit codes: 0 on
//! success, 1 on runtime failure (including per-item failures in batch
//! commands), 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use aquasynth::ambient::{ambient_light_bounded, ambient_ratio_bg, ambient_ratio_rg};
use aquasynth::formation::synthesize_with_ambient;
use aquasynth::image::{load_depth, load_rgb, save_depth_png, save_rgb_png};
use aquasynth::metrics::evaluate_dirs;
use aquasynth::pipeline::{
    generate_dataset, read_manifest, rescale_depth, resize_bilinear, resize_nearest, sample_params, DatasetConfig,
};
use aquasynth::water::{bundled_table, load_coefficient_table};
use aquasynth::{Channel, Table, WaterType};

#[derive(Debug, Parser)]
#[command(name = "aquasynth", version, about = "Synthesize and score underwater images from RGB-D data")]
pub struct Cli {
    /// Coefficient table JSON; the bundled table is used when absent.
    #[arg(long, global = true, env = "AQUA_COEFFS")]
    pub coeffs: Option<PathBuf>,
    /// Master seed; overrides `master_seed` in a dataset config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for batch commands (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, global = true, default_value = "warn")]
    pub log_level: log::LevelFilter,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize one underwater image from a clean image and its depth map.
    Synth(SynthArgs),
    /// Generate a full dataset from a JSON config.
    Dataset {
        #[arg(long)]
        config: PathBuf,
    },
    /// Score predicted images, optionally against references.
    Eval(EvalArgs),
    /// Print the ambient light triple and channel ratios.
    Ambient {
        #[arg(long = "type")]
        water_type: WaterType,
        /// Surface-object distance in meters.
        #[arg(long = "D", allow_negative_numbers = true)]
        surface_depth: f64,
        /// Green ambient anchor in (0, 1].
        #[arg(long = "Bg")]
        green: f64,
    },
    /// Validate a manifest and print it back as JSON.
    Inspect { manifest: PathBuf },
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long)]
    pub clean: PathBuf,
    #[arg(long)]
    pub depth: PathBuf,
    #[arg(long = "type")]
    pub water_type: WaterType,
    /// Output PNG path.
    #[arg(long, default_value = "synth.png")]
    pub out: PathBuf,
    /// Also write the rescaled depth as a 16-bit millimetre PNG.
    #[arg(long)]
    pub depth_out: Option<PathBuf>,
    /// Fix D instead of sampling it.
    #[arg(long = "D", allow_negative_numbers = true)]
    pub surface_depth: Option<f64>,
    /// Fix B_g instead of sampling it.
    #[arg(long = "Bg")]
    pub green: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [0.25, 20.0])]
    pub depth_range: Vec<f64>,
    /// Meters per raw depth code.
    #[arg(long, default_value_t = 1e-3)]
    pub depth_scale: f64,
    /// Resize both inputs to WIDTH HEIGHT first.
    #[arg(long, num_args = 2, value_names = ["WIDTH", "HEIGHT"])]
    pub size: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub pred: PathBuf,
    #[arg(long = "ref", required_unless_present = "no_ref", conflicts_with = "no_ref")]
    pub reference: Option<PathBuf>,
    /// Only compute the no-reference score.
    #[arg(long)]
    pub no_ref: bool,
    /// Also write per-image scores as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Parses `argv` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let _ = env_logger::Builder::new().filter_level(cli.log_level).target(env_logger::Target::Stderr).try_init();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn load_table(path: Option<&Path>) -> Result<Table> {
    match path {
        Some(p) => load_coefficient_table(p).with_context(|| format!("loading coefficients from {}", p.display())),
        None => Ok(bundled_table()),
    }
}

fn emit(value: &serde_json::Value) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let table = load_table(cli.coeffs.as_deref())?;
    match &cli.command {
        Command::Ambient { water_type, surface_depth, green } => {
            let coeffs = table.get(*water_type);
            let ambient = ambient_light_bounded(coeffs, *surface_depth, *green, f64::INFINITY)?;
            emit(&json!({
                "water_type": water_type,
                "D": surface_depth,
                "B_g": green,
                "ambient": ambient.as_array(),
                "clamped": ambient.clamped,
                "ratio_rg": ambient_ratio_rg(coeffs, *surface_depth),
                "ratio_bg": ambient_ratio_bg(coeffs, *surface_depth),
                "beta": Channel::ALL.map(|c| coeffs.beta(c)),
            }))?;
            Ok(0)
        }
        Command::Synth(args) => synth(args, &table, cli.seed.unwrap_or(0)),
        Command::Dataset { config } => {
            let mut cfg = DatasetConfig::load(config)?;
            if let Some(seed) = cli.seed {
                cfg.master_seed = seed;
            }
            let outcome = generate_dataset(&cfg, &table, cli.workers)?;
            emit(&json!({
                "manifest": outcome.manifest_path,
                "records": outcome.records.len(),
                "failures": outcome.failures,
            }))?;
            Ok(if outcome.failures.is_empty() { 0 } else { 1 })
        }
        Command::Eval(args) => {
            let reference = if args.no_ref { None } else { args.reference.as_deref() };
            let report = evaluate_dirs(&args.pred, reference)?;
            if let Some(csv) = &args.csv {
                std::fs::write(csv, report.to_csv()).with_context(|| format!("writing {}", csv.display()))?;
            }
            emit(&serde_json::to_value(&report)?)?;
            for f in &report.failures {
                log::error!("{}: {}", f.name, f.error);
            }
            Ok(if report.failures.is_empty() { 0 } else { 1 })
        }
        Command::Inspect { manifest } => {
            let m = read_manifest(manifest)?;
            let mut out = std::io::stdout().lock();
            out.write_all(m.to_json().as_bytes())?;
            Ok(0)
        }
    }
}

fn synth(args: &SynthArgs, table: &Table, seed: u64) -> Result<i32> {
    let [lo, hi] = args.depth_range[..] else { bail!("--depth-range takes two values") };
    let mut clean = load_rgb(&args.clean)?;
    let mut raw = load_depth(&args.depth, args.depth_scale)?;
    if let Some(size) = &args.size {
        clean = resize_bilinear(&clean, size[0], size[1]);
        raw = resize_nearest(&raw, size[0], size[1]);
    } else if raw.dimensions() != clean.dimensions() {
        log::warn!("depth is {:?} but image is {:?}; resizing depth", raw.dimensions(), clean.dimensions());
        raw = resize_nearest(&raw, clean.width(), clean.height());
    }
    let depth = rescale_depth(&raw, lo, hi)?;

    let config = DatasetConfig { depth_range: (lo, hi), ..DatasetConfig::default() };
    let mut params = sample_params(seed, 0, args.water_type, &config);
    if let Some(d) = args.surface_depth {
        params.surface_depth = d;
    }
    if let Some(g) = args.green {
        params.green = g;
    }
    let coeffs = table.get(args.water_type);
    let ambient = params.ambient(coeffs)?;
    let observed = synthesize_with_ambient(&clean, &depth, coeffs, params.surface_depth, &ambient);

    save_rgb_png(&observed, &args.out)?;
    if let Some(p) = &args.depth_out {
        save_depth_png(&depth, p)?;
    }
    emit(&json!({
        "water_type": params.water_type,
        "D": params.surface_depth,
        "B_g": params.green,
        "ambient": ambient.as_array(),
        "clamped": ambient.clamped,
        "depth_range": params.depth_range,
        "seed": params.seed,
        "size": [clean.width(), clean.height()],
        "output": args.out,
    }))?;
    Ok(0)
}
