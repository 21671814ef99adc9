//! Command line harness: run one named experiment, write its sample table to
//! stdout or a file, and print the summary and checks on stderr.
//!
//! Exit codes: 0 on success, 2 on a configuration error, 3 when `--check` is
//! set and at least one built-in check failed.

use bump_core::experiments::{self, Experiment, ExperimentConfig, OutputFormat};
use bump_core::parallel::configure_threads;
use clap::Parser;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "bump",
    version,
    about = "Monte Carlo experiments on bumping routes of the Plancherel growth process",
    after_help = "Run `bump list` to see the available experiments and their defaults."
)]
struct Cli {
    /// Experiment id, or `list` to enumerate them
    experiment: String,

    /// Probe level (or window start / word budget, depending on the experiment)
    #[arg(long)]
    m: Option<u64>,

    /// Number of independent trials
    #[arg(long)]
    trials: Option<u64>,

    /// Master seed; together with the trial index it fixes every sample
    #[arg(long)]
    seed: Option<u64>,

    /// Hard cap on insertions per trial (runs past it are censored)
    #[arg(long = "t-max")]
    t_max: Option<u64>,

    /// Largest tracked column (or row cutoff)
    #[arg(long = "x-max")]
    x_max: Option<usize>,

    /// Comma-separated increasing grid of thresholds / levels
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    grid: Option<Vec<f64>>,

    /// Growth-window factor for the window experiments
    #[arg(long)]
    window: Option<f64>,

    /// Write the sample table here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format
    #[arg(long, default_value = "csv")]
    format: String,

    /// Bound the worker pool (defaults to all cores)
    #[arg(long)]
    threads: Option<usize>,

    /// Exit with status 3 if any built-in check fails
    #[arg(long)]
    check: bool,
}

fn list_experiments() {
    println!("{:<22} {:>8} {:>8} {:>12} {:>6}  default grid", "experiment", "m", "trials", "t_max", "x_max");
    for e in Experiment::ALL {
        let d = ExperimentConfig::default_for(e);
        let grid: Vec<String> = d.grid.iter().map(|g| g.to_string()).collect();
        println!(
            "{:<22} {:>8} {:>8} {:>12} {:>6}  [{}]",
            e.id(),
            d.m,
            d.trials,
            d.t_max,
            d.x_max,
            grid.join(",")
        );
    }
}

fn build_config(cli: &Cli, experiment: Experiment) -> Result<ExperimentConfig, String> {
    let mut cfg = ExperimentConfig::default_for(experiment);
    if let Some(m) = cli.m {
        cfg.m = m;
        // keep the horizon consistent unless the user pins it too
        if cli.t_max.is_none() {
            cfg.t_max = cfg.t_max.max(m);
        }
    }
    if let Some(trials) = cli.trials {
        cfg.trials = trials;
    }
    if let Some(seed) = cli.seed {
        cfg.master_seed = seed;
    }
    if let Some(t_max) = cli.t_max {
        cfg.t_max = t_max;
    }
    if let Some(x_max) = cli.x_max {
        cfg.x_max = x_max;
    }
    if let Some(grid) = &cli.grid {
        cfg.grid = grid.clone();
    }
    if let Some(window) = cli.window {
        cfg.window = window;
    }
    cfg.format = cli.format.parse::<OutputFormat>().map_err(|e| e.to_string())?;
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    if cli.experiment == "list" {
        list_experiments();
        return Ok(true);
    }
    let experiment = cli
        .experiment
        .parse::<Experiment>()
        .map_err(|e| e.to_string())?;
    let cfg = build_config(&cli, experiment)?;
    if let Some(threads) = cli.threads {
        configure_threads(threads);
    }
    let report = experiments::run(&cfg).map_err(|e| e.to_string())?;
    let io_err = |e: io::Error| format!("writing output: {e}");
    match &cli.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| format!("creating {}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            report.write(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            report.write(&mut w).map_err(io_err)?;
            w.flush().map_err(io_err)?;
        }
    }
    eprint!("{}", report.summary_text());
    Ok(!cli.check || report.passed())
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
