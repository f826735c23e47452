//! Black-box optimization toolkit built around the Dogfight Search
//! metaheuristic: dual-formation population, five kinematics-based search
//! strategies and dynamic strategy selection, together with baseline
//! optimizers, classical benchmark functions, ten constrained engineering
//! design problems, a mountainous-terrain UAV path planner and the
//! nonparametric statistics used to compare algorithms.
//!
//! Start from [`dos::dos_optimize`] for single runs, or
//! [`experiment::run_battery`] for config-driven comparisons. The
//! `examples/` directory contains one runnable example per capability.

pub mod baselines;
pub mod benchmarks;
pub mod diversity;
pub mod dos;
pub mod engineering;
pub mod experiment;
pub mod pathplan;
pub mod problem;
pub mod rng;
pub mod stats;

pub use problem::{budget_for_dimension, clamp_to_bounds, Bounds, Budget, Problem, RunRecord};
pub use rng::{derive_run_seed, seeded_rng, RunRng};
