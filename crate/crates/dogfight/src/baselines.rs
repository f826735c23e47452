//! Reference optimizers for the comparison harness: canonical global-best
//! particle swarm and uniform random search. Both honor the same budget
//! accounting and determinism contracts as the main optimizer.

use crate::problem::{Budget, Problem, ProblemError, RunRecord, RunTracker};
use crate::rng::RunRng;

#[derive(Clone, Copy, Debug)]
pub struct PsoParams {
    pub swarm_size: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity clamp as a fraction of the box width per dimension.
    pub velocity_clamp_fraction: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        // standard constriction-equivalent values
        Self {
            swarm_size: 50,
            inertia: 0.7298,
            cognitive: 1.49618,
            social: 1.49618,
            velocity_clamp_fraction: 0.5,
        }
    }
}

/// Canonical global-best PSO with velocity clamping and boundary clamping.
pub fn pso_optimize(
    problem: &Problem,
    params: &PsoParams,
    budget: Budget,
    seed: u64,
) -> Result<RunRecord, ProblemError> {
    pso_optimize_observed(problem, params, budget, seed, |_| {})
}

/// As [`pso_optimize`], invoking `observer` with the position matrix after
/// initialization and after every sweep.
pub fn pso_optimize_observed<F>(
    problem: &Problem,
    params: &PsoParams,
    budget: Budget,
    seed: u64,
    mut observer: F,
) -> Result<RunRecord, ProblemError>
where
    F: FnMut(&[Vec<f64>]),
{
    assert!(params.swarm_size >= 2, "swarm_size must be at least 2");
    assert!(
        params.velocity_clamp_fraction > 0.0 && params.velocity_clamp_fraction <= 1.0,
        "velocity_clamp_fraction must lie in (0, 1]"
    );
    let n = params.swarm_size as u64;
    if budget.max_evaluations < n {
        return Err(ProblemError::BudgetTooSmall {
            budget: budget.max_evaluations,
            population: params.swarm_size,
        });
    }
    let stride = if budget.checkpoint_stride > 0 {
        budget.checkpoint_stride
    } else {
        n
    };
    let dim = problem.dimension();
    let bounds = problem.bounds();
    let v_max: Vec<f64> = bounds
        .lower()
        .iter()
        .zip(bounds.upper())
        .map(|(&lo, &hi)| params.velocity_clamp_fraction * (hi - lo))
        .collect();

    let mut rng = RunRng::new(seed);
    let mut tracker = RunTracker::new(seed, stride);

    let mut positions: Vec<Vec<f64>> = (0..params.swarm_size)
        .map(|_| bounds.sample(&mut rng))
        .collect();
    let mut velocities = vec![vec![0.0; dim]; params.swarm_size];
    let mut best_positions = positions.clone();
    let mut best_values: Vec<f64> = positions
        .iter()
        .map(|p| tracker.record(p, problem.evaluate(p)))
        .collect();
    let mut global_best = 0;
    for i in 1..params.swarm_size {
        if best_values[i] < best_values[global_best] {
            global_best = i;
        }
    }
    observer(&positions);

    while tracker.evaluations + n <= budget.max_evaluations {
        for i in 0..params.swarm_size {
            let gbest = best_positions[global_best].clone();
            for j in 0..dim {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let v = params.inertia * velocities[i][j]
                    + params.cognitive * r1 * (best_positions[i][j] - positions[i][j])
                    + params.social * r2 * (gbest[j] - positions[i][j]);
                velocities[i][j] = v.clamp(-v_max[j], v_max[j]);
                positions[i][j] = (positions[i][j] + velocities[i][j])
                    .clamp(bounds.lower()[j], bounds.upper()[j]);
            }
            let value = tracker.record(&positions[i], problem.evaluate(&positions[i]));
            if value < best_values[i] {
                best_values[i] = value;
                best_positions[i] = positions[i].clone();
                if value < best_values[global_best] {
                    global_best = i;
                }
            }
        }
        observer(&positions);
    }
    let feasible = !tracker.best_point.is_empty() && problem.is_feasible(&tracker.best_point);
    Ok(tracker.finish(feasible))
}

/// Uniform sampling in the box with best-so-far tracking.
pub fn random_search(
    problem: &Problem,
    budget: Budget,
    seed: u64,
) -> Result<RunRecord, ProblemError> {
    if budget.max_evaluations < 1 {
        return Err(ProblemError::BudgetTooSmall {
            budget: budget.max_evaluations,
            population: 1,
        });
    }
    let stride = if budget.checkpoint_stride > 0 {
        budget.checkpoint_stride
    } else {
        1
    };
    let mut rng = RunRng::new(seed);
    let mut tracker = RunTracker::new(seed, stride);
    let bounds = problem.bounds();
    for _ in 0..budget.max_evaluations {
        let point = bounds.sample(&mut rng);
        tracker.record(&point, problem.evaluate(&point));
    }
    let feasible = !tracker.best_point.is_empty() && problem.is_feasible(&tracker.best_point);
    Ok(tracker.finish(feasible))
}
