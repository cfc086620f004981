use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use slweno_harness::config::{preset, Preset, RunConfig};
use slweno_harness::output::{ensure_dir, write_text};
use slweno_harness::run::execute_to_dir;
use slweno_harness::study::{convergence_study, format_csv, format_table, StudyOptions};
use slweno_harness::HarnessError;

/// Conservative semi-Lagrangian WENO solver for 1D-1V kinetic problems.
#[derive(Debug, Parser)]
#[command(name = "slweno", version)]
struct Cli {
    /// Worker threads for the line sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a preset and write series.csv, manifest.txt and snapshots.
    Run(RunArgs),
    /// Error table over a doubling list of meshes.
    Converge(ConvergeArgs),
    /// Print the preset names.
    ListPresets,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Preset name; optional when --config names one.
    preset: Option<String>,
    /// `key=value`, applied after the preset and config file.
    #[arg(long = "override", short = 'o', value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Manifest file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (default: $SLWENO_OUTPUT_DIR/<preset> or output/<preset>).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ConvergeArgs {
    preset: String,
    /// Comma-separated mesh sizes, each twice the previous.
    #[arg(long, value_delimiter = ',', default_value = "40,80,160,320")]
    meshes: Vec<usize>,
    #[arg(long, default_value_t = 0.8)]
    cfl: f64,
    /// Turn the bound-preserving limiter off.
    #[arg(long)]
    no_limiter: bool,
    /// `key=value` overrides of the preset.
    #[arg(long = "override", short = 'o', value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Also write convergence.csv into this directory.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn resolve(args: &RunArgs) -> Result<RunConfig, HarnessError> {
    let named = args.preset.as_deref().map(str::parse::<Preset>).transpose()?;
    let mut cfg = match &args.config {
        Some(path) => RunConfig::from_manifest_file(path, named)?,
        None => preset(named.ok_or_else(|| HarnessError::BadValue {
            key: "preset".into(),
            value: String::new(),
            reason: "name a preset or pass --config".into(),
        })?),
    };
    if let (Some(p), Some(_)) = (named, &args.config) {
        if p != cfg.preset {
            return Err(HarnessError::BadValue {
                key: "preset".into(),
                value: p.name().into(),
                reason: format!("config file names {}", cfg.preset),
            });
        }
    }
    cfg.apply_overrides(&args.overrides)?;
    if let Some(dir) = &args.output {
        cfg.output_dir = dir.clone();
    }
    Ok(cfg)
}

fn run(args: RunArgs) -> Result<(), HarnessError> {
    let cfg = resolve(&args)?;
    let (res, art) = execute_to_dir(&cfg)?;
    let last = res.records().last().expect("at least one record");
    println!(
        "{}: {} steps to t = {}, f_min = {:e}, wrote {}",
        cfg.preset,
        res.output.steps,
        res.sim.t,
        last.f_min(),
        art.dir.display()
    );
    Ok(())
}

fn converge(args: ConvergeArgs) -> Result<(), HarnessError> {
    let mut cfg = preset(args.preset.parse()?);
    cfg.apply_overrides(&args.overrides)?;
    let opts = StudyOptions {
        cfl: args.cfl,
        limiter: !args.no_limiter,
    };
    let rows = convergence_study(&cfg, &args.meshes, opts)?;
    print!("{}", format_table(&rows));
    if let Some(dir) = args.output {
        ensure_dir(&dir)?;
        write_text(&dir.join("convergence.csv"), &format_csv(&rows))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let res = match cli.command {
        Command::Run(a) => run(a),
        Command::Converge(a) => converge(a),
        Command::ListPresets => {
            for p in Preset::ALL {
                println!("{:<20} {}", p.name(), p.description());
            }
            Ok(())
        }
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
