//! Classical unconstrained test functions: unshifted, unrotated analogues of
//! the usual competition base functions, with an optional hook for
//! user-supplied shift vectors and rotation matrices.

use std::f64::consts::{E, PI};
use std::sync::Arc;

use thiserror::Error;

use crate::problem::{Bounds, Problem};

#[derive(Debug, Error)]
pub enum BenchmarkError {
    #[error("unknown benchmark function `{0}`; valid names: {1}")]
    UnknownName(String, String),
    #[error("benchmark functions need dimension >= 2, got {0}")]
    DimensionTooSmall(usize),
}

type BenchFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A registered test function with its analytic optimum.
#[derive(Clone)]
pub struct BenchmarkFunction {
    pub name: &'static str,
    pub dimension: usize,
    pub bounds: Bounds,
    pub known_optimum: f64,
    /// Optimizer location when analytically available.
    pub optimum_point: Option<Vec<f64>>,
    objective: BenchFn,
}

impl std::fmt::Debug for BenchmarkFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BenchmarkFunction")
            .field("name", &self.name)
            .field("dimension", &self.dimension)
            .finish()
    }
}

impl BenchmarkFunction {
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }

    pub fn to_problem(&self) -> Problem {
        let f = self.objective.clone();
        Problem::new(self.bounds.clone(), move |x: &[f64]| f(x))
    }

    /// Composes `f(M (x - shift))` for callers holding official shift and
    /// rotation data. `rotation` is row-major `dimension x dimension`.
    pub fn with_shift_rotation(&self, shift: Vec<f64>, rotation: Option<Vec<Vec<f64>>>) -> Problem {
        assert_eq!(shift.len(), self.dimension);
        if let Some(m) = &rotation {
            assert_eq!(m.len(), self.dimension);
            assert!(m.iter().all(|row| row.len() == self.dimension));
        }
        let f = self.objective.clone();
        let dim = self.dimension;
        Problem::new(self.bounds.clone(), move |x: &[f64]| {
            let centered: Vec<f64> = x.iter().zip(&shift).map(|(&a, &s)| a - s).collect();
            let transformed = match &rotation {
                None => centered,
                Some(m) => (0..dim)
                    .map(|i| m[i].iter().zip(&centered).map(|(&a, &b)| a * b).sum())
                    .collect(),
            };
            f(&transformed)
        })
    }
}

pub const FUNCTION_NAMES: [&str; 12] = [
    "sphere",
    "bent_cigar",
    "zakharov",
    "rosenbrock",
    "rastrigin",
    "expanded_schaffer_f6",
    "lunacek_bi_rastrigin",
    "non_continuous_rastrigin",
    "levy",
    "schwefel",
    "ackley",
    "griewank",
];

/// Builds a registered function at the requested dimension.
pub fn make_function(name: &str, dimension: usize) -> Result<BenchmarkFunction, BenchmarkError> {
    if dimension < 2 {
        return Err(BenchmarkError::DimensionTooSmall(dimension));
    }
    let d = dimension;
    let standard = |f: BenchFn, optimum_point: Option<Vec<f64>>| BenchmarkFunction {
        name: FUNCTION_NAMES
            .iter()
            .find(|&&n| n == name)
            .copied()
            .unwrap_or("unknown"),
        dimension: d,
        bounds: Bounds::symmetric(d, 100.0),
        known_optimum: 0.0,
        optimum_point,
        objective: f,
    };
    let func = match name {
        "sphere" => standard(Arc::new(sphere), Some(vec![0.0; d])),
        "bent_cigar" => standard(Arc::new(bent_cigar), Some(vec![0.0; d])),
        "zakharov" => standard(Arc::new(zakharov), Some(vec![0.0; d])),
        "rosenbrock" => standard(Arc::new(rosenbrock), Some(vec![1.0; d])),
        "rastrigin" => standard(Arc::new(rastrigin), Some(vec![0.0; d])),
        "expanded_schaffer_f6" => standard(Arc::new(expanded_schaffer_f6), Some(vec![0.0; d])),
        "lunacek_bi_rastrigin" => {
            let f: BenchFn = Arc::new(move |x: &[f64]| lunacek_bi_rastrigin(x));
            standard(f, Some(vec![2.5; d]))
        }
        "non_continuous_rastrigin" => standard(Arc::new(non_continuous_rastrigin), Some(vec![0.0; d])),
        "levy" => standard(Arc::new(levy), Some(vec![1.0; d])),
        "schwefel" => BenchmarkFunction {
            name: "schwefel",
            dimension: d,
            bounds: Bounds::symmetric(d, 500.0),
            known_optimum: 0.0,
            // the optimizer location 420.9687... is not representable to
            // analytic precision, so no point is published
            optimum_point: None,
            objective: Arc::new(schwefel),
        },
        "ackley" => standard(Arc::new(ackley), Some(vec![0.0; d])),
        "griewank" => standard(Arc::new(griewank), Some(vec![0.0; d])),
        other => {
            return Err(BenchmarkError::UnknownName(
                other.to_string(),
                FUNCTION_NAMES.join(", "),
            ))
        }
    };
    Ok(func)
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn bent_cigar(x: &[f64]) -> f64 {
    x[0] * x[0] + 1e6 * x[1..].iter().map(|v| v * v).sum::<f64>()
}

fn zakharov(x: &[f64]) -> f64 {
    let s1: f64 = x.iter().map(|v| v * v).sum();
    let s2: f64 = x
        .iter()
        .enumerate()
        .map(|(i, &v)| 0.5 * (i + 1) as f64 * v)
        .sum();
    s1 + s2.powi(2) + s2.powi(4)
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|&v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

fn schaffer_f6_pair(a: f64, b: f64) -> f64 {
    let ss = a * a + b * b;
    0.5 + (ss.sqrt().sin().powi(2) - 0.5) / (1.0 + 0.001 * ss).powi(2)
}

fn expanded_schaffer_f6(x: &[f64]) -> f64 {
    let d = x.len();
    (0..d).map(|i| schaffer_f6_pair(x[i], x[(i + 1) % d])).sum()
}

fn lunacek_bi_rastrigin(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let mu0 = 2.5;
    let depth = 1.0;
    let s = 1.0 - 1.0 / (2.0 * (d + 20.0).sqrt() - 8.2);
    let mu1 = -((mu0 * mu0 - depth) / s).sqrt();
    let sum1: f64 = x.iter().map(|&v| (v - mu0).powi(2)).sum();
    let sum2: f64 = x.iter().map(|&v| (v - mu1).powi(2)).sum();
    let cos_term: f64 = x.iter().map(|&v| (2.0 * PI * (v - mu0)).cos()).sum();
    sum1.min(depth * d + s * sum2) + 10.0 * (d - cos_term)
}

fn non_continuous_rastrigin(x: &[f64]) -> f64 {
    let y: Vec<f64> = x
        .iter()
        .map(|&v| {
            if v.abs() <= 0.5 {
                v
            } else {
                (2.0 * v).round() / 2.0
            }
        })
        .collect();
    rastrigin(&y)
}

fn levy(x: &[f64]) -> f64 {
    let w: Vec<f64> = x.iter().map(|&v| 1.0 + (v - 1.0) / 4.0).collect();
    let d = w.len();
    let first = (PI * w[0]).sin().powi(2);
    let middle: f64 = w[..d - 1]
        .iter()
        .map(|&wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2)))
        .sum();
    let last = (w[d - 1] - 1.0).powi(2) * (1.0 + (2.0 * PI * w[d - 1]).sin().powi(2));
    first + middle + last
}

fn schwefel(x: &[f64]) -> f64 {
    418.982_887_272_433_9 * x.len() as f64
        - x.iter().map(|&v| v * v.abs().sqrt().sin()).sum::<f64>()
}

fn ackley(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let sum_sq: f64 = x.iter().map(|v| v * v).sum();
    let sum_cos: f64 = x.iter().map(|&v| (2.0 * PI * v).cos()).sum();
    -20.0 * (-0.2 * (sum_sq / d).sqrt()).exp() - (sum_cos / d).exp() + 20.0 + E
}

fn griewank(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v * v / 4000.0).sum();
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, &v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}
