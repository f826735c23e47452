//! Experiment runner: config-driven batteries plus the timing harness. The
//! library's `examples/` directory demonstrates the programmatic API; this
//! binary only loads a config, applies flag overrides and runs it.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use dogfight::experiment::{self, ExperimentConfig, ProblemSelector};

#[derive(Parser, Debug)]
#[command(
    name = "dogfight",
    about = "Run optimizer batteries from a TOML experiment config"
)]
struct Cli {
    /// Experiment config path (TOML). Required unless --timing is given.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Override the config's root seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Override the number of independent runs per algorithm.
    #[arg(long)]
    runs: Option<usize>,

    /// Override the evaluation budget.
    #[arg(long)]
    budget: Option<u64>,

    /// Override the parallel worker count.
    #[arg(long)]
    workers: Option<usize>,

    /// Override the output directory.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Record position histories and emit per-run diversity traces.
    #[arg(long)]
    diversity: bool,

    /// Run the computational time-cost harness instead of a battery.
    #[arg(long)]
    timing: bool,

    /// Benchmark evaluated by the timing harness.
    #[arg(long, default_value = "rastrigin")]
    timing_function: String,

    /// Dimension used by the timing harness.
    #[arg(long, default_value_t = 30)]
    timing_dimension: usize,

    /// Override the path-planning terrain seed.
    #[arg(long)]
    terrain_seed: Option<u64>,

    /// Override the path-planning zone set: `none` or `preset:table45`.
    #[arg(long)]
    zones: Option<String>,
}

fn run(cli: Cli) -> Result<(), String> {
    if cli.timing {
        let report = experiment::timing_harness(&cli.timing_function, cli.timing_dimension)
            .map_err(|e| e.to_string())?;
        println!(
            "timing on {} ({}d):",
            cli.timing_function, cli.timing_dimension
        );
        println!(
            "  T0      = {:.7} s  (1e6 arithmetic chain repetitions)",
            report.t0
        );
        println!("  T1      = {:.7} s  (2e5 bare evaluations)", report.t1);
        println!(
            "  T2_mean = {:.7} s  (mean of 5 full runs at 2e5 evaluations)",
            report.t2_mean
        );
        println!("  (T2_mean - T1)/T0 = {:.6}", report.overhead);
        return Ok(());
    }

    let path = cli
        .config
        .ok_or_else(|| "either --config or --timing is required".to_string())?;
    let mut config = ExperimentConfig::load(&path).map_err(|e| e.to_string())?;
    if let Some(seed) = cli.seed {
        config.root_seed = seed;
    }
    if let Some(runs) = cli.runs {
        config.runs = runs;
    }
    if cli.budget.is_some() {
        config.budget = cli.budget;
    }
    if let Some(workers) = cli.workers {
        config.workers = workers;
    }
    if let Some(out) = cli.out {
        config.out_dir = out;
    }
    if cli.diversity {
        config.diversity = true;
    }
    if cli.terrain_seed.is_some() || cli.zones.is_some() {
        match &mut config.problem {
            ProblemSelector::Pathplan { terrain_seed, zones } => {
                if let Some(s) = cli.terrain_seed {
                    *terrain_seed = s;
                }
                if let Some(z) = cli.zones {
                    *zones = z;
                }
            }
            _ => {
                return Err(
                    "--terrain-seed/--zones only apply to path-planning configs".to_string(),
                )
            }
        }
    }

    let outcome = experiment::run_battery(&config).map_err(|e| e.to_string())?;
    println!(
        "{}: {} algorithms x {} runs",
        outcome.problem_label,
        outcome.records.len(),
        config.runs
    );
    for (name, runs) in &outcome.records {
        let s = dogfight::stats::summarize(runs);
        println!(
            "  {:<8} best {}  mean {}  success {:.2}",
            name,
            s.best
                .map(|v| format!("{v:.6e}"))
                .unwrap_or_else(|| "NaN".into()),
            s.mean
                .map(|v| format!("{v:.6e}"))
                .unwrap_or_else(|| "NaN".into()),
            s.success,
        );
    }
    println!("summary: {}", outcome.summary_file.display());
    println!("report:  {}", outcome.report_file.display());
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
