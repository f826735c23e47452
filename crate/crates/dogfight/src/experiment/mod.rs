//! Config-driven experiment batteries: (algorithm x seed) cells over one
//! problem, convergence-curve and summary emission, comparison reports, the
//! timing harness and diversity traces.

pub mod config;
pub mod csvio;
pub mod report;
pub mod timing;

pub use config::{AlgorithmConfig, AlgorithmSpec, ExperimentConfig, ProblemSelector};
pub use report::{build_report, AlgorithmResults, StatReport};
pub use timing::{timing_harness, TimingReport};

use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::baselines::{pso_optimize, pso_optimize_observed, random_search};
use crate::diversity::diversity_trace;
use crate::dos::{dos_optimize, dos_optimize_observed};
use crate::engineering::{constrained, PenaltyConfig, ProblemId};
use crate::pathplan::{self, zone_preset_table45, PathConfig};
use crate::problem::{budget_for_dimension, Budget, Problem, RunRecord};
use crate::rng::derive_run_seed;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("run failed: {0}")]
    Run(String),
}

/// A resolved problem instance plus its default budget and display label.
pub struct ResolvedProblem {
    pub label: String,
    pub problem: Problem,
    pub default_budget: Budget,
}

pub fn resolve_problem(selector: &ProblemSelector) -> Result<ResolvedProblem, ExperimentError> {
    match selector {
        ProblemSelector::Benchmark { name, dimension } => {
            let bench = crate::benchmarks::make_function(name, *dimension)
                .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
            Ok(ResolvedProblem {
                label: format!("{}_{}d", bench.name, dimension),
                problem: bench.to_problem(),
                default_budget: budget_for_dimension(*dimension),
            })
        }
        ProblemSelector::Engineering { id } => {
            let id: ProblemId = id
                .parse()
                .map_err(|e: crate::engineering::EngineeringError| {
                    ExperimentError::InvalidConfig(e.to_string())
                })?;
            let cp = constrained(id);
            Ok(ResolvedProblem {
                label: id.to_string(),
                problem: cp.to_problem(PenaltyConfig::default()),
                default_budget: cp.budget(),
            })
        }
        ProblemSelector::Pathplan { terrain_seed, zones } => {
            let terrain = Arc::new(pathplan::generate_terrain(*terrain_seed, 101, 12, (2.0, 8.0)));
            let zone_list = match zones.as_str() {
                "none" => Vec::new(),
                "preset:table45" => zone_preset_table45(),
                other => {
                    return Err(ExperimentError::InvalidConfig(format!(
                        "zones must be `none` or `preset:table45`, got `{other}`"
                    )))
                }
            };
            let label = if zone_list.is_empty() {
                format!("pathplan_terrain{terrain_seed}")
            } else {
                format!("pathplan_terrain{terrain_seed}_zones")
            };
            Ok(ResolvedProblem {
                label,
                problem: pathplan::to_problem(terrain, PathConfig::default(), zone_list),
                default_budget: Budget::new(10_000),
            })
        }
    }
}

/// Everything one battery produced, in (algorithm, run) order.
#[derive(Debug)]
pub struct BatteryOutcome {
    pub problem_label: String,
    pub records: Vec<(String, Vec<RunRecord>)>,
    pub curve_files: Vec<PathBuf>,
    pub diversity_files: Vec<PathBuf>,
    pub summary_file: PathBuf,
    pub report_file: PathBuf,
}

/// Renders one recorded position history as a diversity CSV.
pub fn emit_diversity(history: &[Vec<Vec<f64>>]) -> Result<String, ExperimentError> {
    if history.is_empty() {
        return Err(ExperimentError::Run(
            "no position history was recorded; run with diversity capture enabled".into(),
        ));
    }
    let trace = diversity_trace(history);
    let mut out = String::from("iteration,exploration_pct,exploitation_pct\n");
    for (i, &(xpl, xpt)) in trace.rows.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            i,
            csvio::fmt_f64(xpl),
            csvio::fmt_f64(xpt)
        ));
    }
    Ok(out)
}

struct CellResult {
    record: RunRecord,
    history: Option<Vec<Vec<Vec<f64>>>>,
}

fn run_cell(
    spec: &AlgorithmSpec,
    problem: &Problem,
    budget: Budget,
    seed: u64,
    capture_history: bool,
) -> Result<CellResult, ExperimentError> {
    let run = |e: crate::problem::ProblemError| ExperimentError::Run(e.to_string());
    if capture_history {
        let mut history: Vec<Vec<Vec<f64>>> = Vec::new();
        let record = match spec {
            AlgorithmSpec::Dos(params) => {
                dos_optimize_observed(problem, params, budget, seed, |state| {
                    history.push(state.all_positions());
                })
                .map_err(run)?
            }
            AlgorithmSpec::Pso(params) => {
                pso_optimize_observed(problem, params, budget, seed, |positions| {
                    history.push(positions.to_vec());
                })
                .map_err(run)?
            }
            AlgorithmSpec::RandomSearch => {
                return Err(ExperimentError::InvalidConfig(
                    "random search has no population history to record".into(),
                ))
            }
        };
        Ok(CellResult {
            record,
            history: Some(history),
        })
    } else {
        let record = match spec {
            AlgorithmSpec::Dos(params) => dos_optimize(problem, params, budget, seed).map_err(run)?,
            AlgorithmSpec::Pso(params) => pso_optimize(problem, params, budget, seed).map_err(run)?,
            AlgorithmSpec::RandomSearch => random_search(problem, budget, seed).map_err(run)?,
        };
        Ok(CellResult {
            record,
            history: None,
        })
    }
}

/// Executes every (algorithm, seed) cell, writes per-run curve CSVs, a
/// summary CSV and a statistics report into the output directory.
///
/// Cells run in parallel up to `workers`; results are merged by (algorithm,
/// run) index so output is byte-identical regardless of scheduling.
pub fn run_battery(config: &ExperimentConfig) -> Result<BatteryOutcome, ExperimentError> {
    config.validate()?;
    let resolved = resolve_problem(&config.problem)?;
    let specs: Vec<AlgorithmSpec> = config
        .algorithms
        .iter()
        .map(|a| a.resolve())
        .collect::<Result<_, _>>()?;
    if config.diversity {
        if let Some(bad) = specs.iter().find(|s| !s.supports_diversity()) {
            return Err(ExperimentError::InvalidConfig(format!(
                "diversity capture is unavailable for `{}`",
                bad.label()
            )));
        }
    }
    let budget = match config.budget {
        Some(evals) => Budget::new(evals),
        None => resolved.default_budget,
    };

    std::fs::create_dir_all(&config.out_dir)?;

    let cells: Vec<(usize, usize)> = (0..specs.len())
        .flat_map(|a| (0..config.runs).map(move |r| (a, r)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| ExperimentError::Run(e.to_string()))?;
    let problem = &resolved.problem;
    let results: Vec<CellResult> = pool.install(|| {
        cells
            .par_iter()
            .map(|&(algo_idx, run_idx)| {
                let algo_seed = derive_run_seed(config.root_seed, algo_idx as u64);
                let seed = derive_run_seed(algo_seed, run_idx as u64);
                run_cell(&specs[algo_idx], problem, budget, seed, config.diversity)
            })
            .collect::<Result<Vec<_>, _>>()
    })?;

    let mut curve_files = Vec::new();
    let mut diversity_files = Vec::new();
    let mut records: Vec<(String, Vec<RunRecord>)> = Vec::new();
    for (algo_idx, spec) in specs.iter().enumerate() {
        let mut runs = Vec::with_capacity(config.runs);
        for run_idx in 0..config.runs {
            let cell = &results[algo_idx * config.runs + run_idx];
            let path = config
                .out_dir
                .join(format!("{}_run{:02}_curve.csv", spec.label(), run_idx));
            csvio::write_csv(
                &path,
                "evaluations,best_so_far",
                cell.record
                    .curve
                    .iter()
                    .map(|&(e, v)| format!("{},{}", e, csvio::fmt_f64(v))),
            )?;
            curve_files.push(path);
            if let Some(history) = &cell.history {
                let path = config
                    .out_dir
                    .join(format!("{}_run{:02}_diversity.csv", spec.label(), run_idx));
                std::fs::write(&path, emit_diversity(history)?)?;
                diversity_files.push(path);
            }
            runs.push(cell.record.clone());
        }
        records.push((spec.label().to_string(), runs));
    }

    let summary_file = config.out_dir.join("summary.csv");
    csvio::write_csv(
        &summary_file,
        "algorithm,mean,std,best,success",
        records.iter().map(|(name, runs)| {
            let s = crate::stats::summarize(runs);
            format!(
                "{},{},{},{},{}",
                name,
                s.mean.map(csvio::fmt_f64).unwrap_or_else(|| "NaN".into()),
                s.std.map(csvio::fmt_f64).unwrap_or_else(|| "NaN".into()),
                s.best.map(csvio::fmt_f64).unwrap_or_else(|| "NaN".into()),
                csvio::fmt_f64(s.success),
            )
        }),
    )?;

    let report_file = config.out_dir.join("report.txt");
    if records.len() >= 2 {
        let algo_results: Vec<AlgorithmResults> = records
            .iter()
            .map(|(name, runs)| AlgorithmResults {
                name: name.clone(),
                outcomes: runs.iter().map(|r| (r.best_value, r.feasible)).collect(),
            })
            .collect();
        let report = build_report(&[resolved.label.clone()], &[algo_results]);
        std::fs::write(&report_file, report.to_text())?;
    } else {
        std::fs::write(
            &report_file,
            format!(
                "{}: single algorithm, no comparison statistics\n",
                resolved.label
            ),
        )?;
    }

    Ok(BatteryOutcome {
        problem_label: resolved.label,
        records,
        curve_files,
        diversity_files,
        summary_file,
        report_file,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_config(dir: &std::path::Path) -> ExperimentConfig {
        ExperimentConfig::from_toml(&format!(
            r#"
root_seed = 7
runs = 3
workers = 2
out_dir = "{}"
budget = 2000

[problem]
kind = "benchmark"
name = "sphere"
dimension = 3

[[algorithms]]
name = "dos"

[[algorithms]]
name = "random"
"#,
            dir.display()
        ))
        .unwrap()
    }

    #[test]
    fn battery_emits_expected_file_counts() {
        let dir = tempfile::tempdir().unwrap();
        let outcome = run_battery(&demo_config(dir.path())).unwrap();
        assert_eq!(outcome.curve_files.len(), 6);
        assert!(outcome.summary_file.exists());
        assert!(outcome.report_file.exists());
        for f in &outcome.curve_files {
            assert!(f.exists());
        }
    }

    #[test]
    fn battery_reruns_byte_identical() {
        let dir_a = tempfile::tempdir().unwrap();
        let dir_b = tempfile::tempdir().unwrap();
        run_battery(&demo_config(dir_a.path())).unwrap();
        run_battery(&demo_config(dir_b.path())).unwrap();
        let a = std::fs::read(dir_a.path().join("summary.csv")).unwrap();
        let b = std::fs::read(dir_b.path().join("summary.csv")).unwrap();
        assert_eq!(a, b);
        let a = std::fs::read(dir_a.path().join("dos_run00_curve.csv")).unwrap();
        let b = std::fs::read(dir_b.path().join("dos_run00_curve.csv")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parallel_battery_matches_serial() {
        let dir_serial = tempfile::tempdir().unwrap();
        let dir_parallel = tempfile::tempdir().unwrap();
        let mut serial = demo_config(dir_serial.path());
        serial.workers = 1;
        let mut parallel = demo_config(dir_parallel.path());
        parallel.workers = 4;
        run_battery(&serial).unwrap();
        run_battery(&parallel).unwrap();
        let a = std::fs::read(dir_serial.path().join("summary.csv")).unwrap();
        let b = std::fs::read(dir_parallel.path().join("summary.csv")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn diversity_flag_emits_traces_that_sum_to_hundred() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = demo_config(dir.path());
        config.diversity = true;
        config.algorithms.retain(|a| a.name == "dos");
        let outcome = run_battery(&config).unwrap();
        assert_eq!(outcome.diversity_files.len(), 3);
        let (header, rows) = csvio::read_csv(&outcome.diversity_files[0]).unwrap();
        assert_eq!(header, "iteration,exploration_pct,exploitation_pct");
        for row in rows {
            let xpl = csvio::parse_f64(&row[1]).unwrap();
            let xpt = csvio::parse_f64(&row[2]).unwrap();
            assert!((xpl + xpt - 100.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn diversity_with_random_search_rejected_before_running() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = demo_config(dir.path());
        config.diversity = true;
        let err = run_battery(&config).unwrap_err();
        assert!(err.to_string().contains("random"));
        assert!(!dir.path().join("summary.csv").exists());
    }

    #[test]
    fn unresolvable_problem_fails_before_running() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = demo_config(dir.path());
        config.problem = ProblemSelector::Benchmark {
            name: "nope".into(),
            dimension: 5,
        };
        assert!(run_battery(&config).is_err());
        assert!(!dir.path().join("summary.csv").exists());
    }

    #[test]
    fn engineering_and_pathplan_selectors_resolve() {
        let eng = resolve_problem(&ProblemSelector::Engineering { id: "R4".into() }).unwrap();
        assert_eq!(eng.label, "R4");
        assert_eq!(eng.default_budget.max_evaluations, 50_000);
        let pp = resolve_problem(&ProblemSelector::Pathplan {
            terrain_seed: 7,
            zones: "preset:table45".into(),
        })
        .unwrap();
        assert!(pp.label.contains("zones"));
        assert_eq!(pp.problem.dimension(), 21);
    }

    #[test]
    fn emit_diversity_requires_history() {
        assert!(emit_diversity(&[]).is_err());
    }
}
