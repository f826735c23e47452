//! Computational time-cost harness: a scalar arithmetic baseline, raw
//! evaluation cost, and full-algorithm cost as a multiple of the baseline.

use std::hint::black_box;
use std::time::Instant;

use crate::benchmarks::make_function;
use crate::dos::{dos_optimize, DosParams};
use crate::problem::Budget;
use crate::rng::RunRng;

use super::ExperimentError;

#[derive(Clone, Copy, Debug)]
pub struct TimingReport {
    /// Wall time of one million repetitions of the arithmetic chain.
    pub t0: f64,
    /// Wall time of 200k bare evaluations of the designated benchmark.
    pub t1: f64,
    /// Mean wall time of five full optimizer runs of 200k evaluations.
    pub t2_mean: f64,
    /// `(t2_mean - t1) / t0`.
    pub overhead: f64,
}

const CHAIN_REPETITIONS: u64 = 1_000_000;
const EVALUATIONS: u64 = 200_000;
const RUNS: usize = 5;

/// One pass of the reference arithmetic chain.
#[inline]
fn chain_step(mut x: f64) -> f64 {
    x = x + x;
    x = x / 2.0;
    x = x * x;
    x = x.sqrt();
    x = x.ln();
    x = x.exp();
    x / (x + 2.0)
}

pub fn timing_harness(function: &str, dimension: usize) -> Result<TimingReport, ExperimentError> {
    let bench = make_function(function, dimension)
        .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
    let problem = bench.to_problem();

    let start = Instant::now();
    let mut x = 0.55_f64;
    for _ in 0..CHAIN_REPETITIONS {
        x = black_box(chain_step(black_box(x)));
    }
    let t0 = start.elapsed().as_secs_f64();

    let mut rng = RunRng::new(0xD05);
    let point = problem.bounds().sample(&mut rng);
    let start = Instant::now();
    let mut acc = 0.0;
    for _ in 0..EVALUATIONS {
        acc += black_box(problem.evaluate(black_box(&point)));
    }
    black_box(acc);
    let t1 = start.elapsed().as_secs_f64();

    let params = DosParams::default();
    let mut total = 0.0;
    for seed in 0..RUNS as u64 {
        let start = Instant::now();
        let record = dos_optimize(&problem, &params, Budget::new(EVALUATIONS), seed)
            .map_err(|e| ExperimentError::InvalidConfig(e.to_string()))?;
        black_box(record.best_value);
        total += start.elapsed().as_secs_f64();
    }
    let t2_mean = total / RUNS as f64;

    Ok(TimingReport {
        t0,
        t1,
        t2_mean,
        overhead: (t2_mean - t1) / t0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_survives_one_million_steps() {
        // the sequence decays toward zero but never becomes NaN
        let mut x = 0.55_f64;
        for _ in 0..10_000 {
            x = chain_step(x);
            assert!(!x.is_nan());
        }
    }

    #[test]
    fn unknown_function_is_rejected() {
        assert!(timing_harness("nope", 30).is_err());
    }
}
