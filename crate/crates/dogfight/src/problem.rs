//! Problem abstraction, box bounds, evaluation budgets and run bookkeeping
//! shared by every optimizer and problem suite in the crate.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("bounds dimension mismatch: lower has {lower}, upper has {upper}")]
    BoundsDimensionMismatch { lower: usize, upper: usize },
    #[error("lower[{index}] = {lower} is not below upper[{index}] = {upper}")]
    EmptyInterval {
        index: usize,
        lower: f64,
        upper: f64,
    },
    #[error("point has dimension {point}, problem expects {expected}")]
    DimensionMismatch { point: usize, expected: usize },
    #[error("coordinate {index} = {value} outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("budget {budget} is smaller than the population size {population}")]
    BudgetTooSmall { budget: u64, population: usize },
}

/// Per-dimension box constraints.
#[derive(Clone, Debug)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, ProblemError> {
        if lower.len() != upper.len() {
            return Err(ProblemError::BoundsDimensionMismatch {
                lower: lower.len(),
                upper: upper.len(),
            });
        }
        for (j, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) {
                return Err(ProblemError::EmptyInterval {
                    index: j,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// Symmetric box `[-half_width, half_width]^dimension`.
    pub fn symmetric(dimension: usize, half_width: f64) -> Self {
        Self::new(vec![-half_width; dimension], vec![half_width; dimension])
            .expect("half_width must be positive")
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        point.len() == self.dimension()
            && point
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&lo, &hi))| x >= lo && x <= hi)
    }

    /// Uniform point in the box, one draw per dimension.
    pub fn sample(&self, rng: &mut crate::rng::RunRng) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
            .collect()
    }
}

/// Clamps every coordinate into the box; coordinates already inside are
/// untouched. Panics on dimension mismatch.
pub fn clamp_to_bounds(point: &[f64], bounds: &Bounds) -> Vec<f64> {
    assert_eq!(
        point.len(),
        bounds.dimension(),
        "clamp_to_bounds: point dimension {} != bounds dimension {}",
        point.len(),
        bounds.dimension()
    );
    point
        .iter()
        .zip(bounds.lower.iter().zip(&bounds.upper))
        .map(|(&x, (&lo, &hi))| x.clamp(lo, hi))
        .collect()
}

type ObjectiveFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type ConstraintFn = dyn Fn(&[f64]) -> (Vec<f64>, Vec<f64>) + Send + Sync;

/// A black-box minimization target: objective, box bounds and optionally a
/// constraint evaluator returning signed inequality and equality values.
///
/// The objective must be deterministic for a fixed point, and evaluation is
/// the single budget currency: when constraints exist they are computed by
/// the same closures and never counted separately.
#[derive(Clone)]
pub struct Problem {
    dimension: usize,
    bounds: Bounds,
    objective: Arc<ObjectiveFn>,
    inequality_count: usize,
    equality_count: usize,
    constraints: Option<Arc<ConstraintFn>>,
    equality_tolerance: f64,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("dimension", &self.dimension)
            .field("inequality_count", &self.inequality_count)
            .field("equality_count", &self.equality_count)
            .finish()
    }
}

impl Problem {
    pub fn new<F>(bounds: Bounds, objective: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            dimension: bounds.dimension(),
            bounds,
            objective: Arc::new(objective),
            inequality_count: 0,
            equality_count: 0,
            constraints: None,
            equality_tolerance: 1e-4,
        }
    }

    pub fn with_constraints<C>(
        mut self,
        inequality_count: usize,
        equality_count: usize,
        constraints: C,
    ) -> Self
    where
        C: Fn(&[f64]) -> (Vec<f64>, Vec<f64>) + Send + Sync + 'static,
    {
        self.inequality_count = inequality_count;
        self.equality_count = equality_count;
        self.constraints = Some(Arc::new(constraints));
        self
    }

    pub fn with_equality_tolerance(mut self, tolerance: f64) -> Self {
        self.equality_tolerance = tolerance;
        self
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn inequality_count(&self) -> usize {
        self.inequality_count
    }

    pub fn equality_count(&self) -> usize {
        self.equality_count
    }

    pub fn equality_tolerance(&self) -> f64 {
        self.equality_tolerance
    }

    /// Raw objective value; may be non-finite for pathological points.
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        debug_assert_eq!(point.len(), self.dimension);
        (self.objective)(point)
    }

    /// Signed constraint values `(g, h)`; empty for unconstrained problems.
    pub fn constraint_values(&self, point: &[f64]) -> (Vec<f64>, Vec<f64>) {
        match &self.constraints {
            Some(c) => {
                let (g, h) = c(point);
                debug_assert_eq!(g.len(), self.inequality_count);
                debug_assert_eq!(h.len(), self.equality_count);
                (g, h)
            }
            None => (Vec::new(), Vec::new()),
        }
    }

    /// Feasibility: all `g_i <= 0` and `|h_j| <= equality_tolerance`.
    /// Unconstrained problems are feasible everywhere.
    pub fn is_feasible(&self, point: &[f64]) -> bool {
        match &self.constraints {
            None => true,
            Some(_) => {
                let (g, h) = self.constraint_values(point);
                g.iter().all(|&v| v <= 0.0)
                    && h.iter().all(|&v| v.abs() <= self.equality_tolerance)
            }
        }
    }
}

/// Evaluation budget plus the stride at which convergence checkpoints are
/// recorded (default: one checkpoint per population-sized block).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_evaluations: u64,
    pub checkpoint_stride: u64,
}

impl Budget {
    pub fn new(max_evaluations: u64) -> Self {
        Self {
            max_evaluations,
            checkpoint_stride: 0, // 0 = let the optimizer use its population size
        }
    }

    pub fn with_stride(mut self, stride: u64) -> Self {
        self.checkpoint_stride = stride;
        self
    }
}

/// Piecewise evaluation schedule by problem dimension.
pub fn budget_for_dimension(d: usize) -> Budget {
    assert!(d >= 1, "dimension must be at least 1");
    let evals = match d {
        0..=10 => 50_000,
        11..=30 => 100_000,
        31..=50 => 200_000,
        51..=150 => 400_000,
        _ => 500_000,
    };
    Budget::new(evals)
}

/// Outcome of one optimizer run.
#[derive(Clone, Debug)]
pub struct RunRecord {
    pub seed: u64,
    /// `(evaluation_count, best_so_far)` checkpoints, non-increasing in value.
    pub curve: Vec<(u64, f64)>,
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub feasible: bool,
    pub elapsed: f64,
}

/// Tracks best-so-far and emits curve checkpoints every `stride` evaluations.
#[derive(Debug)]
pub(crate) struct RunTracker {
    stride: u64,
    next_mark: u64,
    pub evaluations: u64,
    pub best_value: f64,
    pub best_point: Vec<f64>,
    curve: Vec<(u64, f64)>,
    started: std::time::Instant,
    seed: u64,
}

impl RunTracker {
    pub fn new(seed: u64, stride: u64) -> Self {
        let stride = stride.max(1);
        Self {
            stride,
            next_mark: stride,
            evaluations: 0,
            best_value: f64::INFINITY,
            best_point: Vec::new(),
            curve: Vec::new(),
            started: std::time::Instant::now(),
            seed,
        }
    }

    /// Counts one evaluation. Non-finite objective values are treated as
    /// +infinity so the run continues; returns the sanitized value.
    pub fn record(&mut self, point: &[f64], raw_value: f64) -> f64 {
        let value = if raw_value.is_finite() {
            raw_value
        } else {
            f64::INFINITY
        };
        self.evaluations += 1;
        if value < self.best_value {
            self.best_value = value;
            self.best_point = point.to_vec();
        }
        if self.evaluations >= self.next_mark {
            self.curve.push((self.evaluations, self.best_value));
            self.next_mark += self.stride;
        }
        value
    }

    pub fn finish(mut self, feasible: bool) -> RunRecord {
        if self.curve.last().map(|&(e, _)| e) != Some(self.evaluations) {
            self.curve.push((self.evaluations, self.best_value));
        }
        RunRecord {
            seed: self.seed,
            curve: self.curve,
            best_point: self.best_point,
            best_value: self.best_value,
            feasible,
            elapsed: self.started.elapsed().as_secs_f64(),
        }
    }
}
