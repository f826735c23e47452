//! Adaptive speed machinery: the shared (v_min, v_max, a) triple is rebuilt
//! each iteration from the speeds and fitness drops of promising solutions.

use std::f64::consts::PI;

use crate::dos::DosParams;
use crate::rng::RunRng;

/// Speeds are kept in this band; the heavy-tailed perturbation would
/// otherwise produce negative or unbounded step scales.
pub const SPEED_FLOOR: f64 = 1e-4;
pub const SPEED_CEILING: f64 = 2.0;

#[derive(Clone, Copy, Debug)]
pub struct VelocityTriple {
    pub v_min: f64,
    pub v_max: f64,
    pub accel: f64,
}

impl VelocityTriple {
    pub fn from_speed(speed: f64, k5: f64) -> Self {
        let scaled = k5 * speed;
        let v_min = scaled.min(speed);
        let v_max = scaled.max(speed);
        Self {
            v_min,
            v_max,
            accel: (v_max - v_min) / 1.2,
        }
    }
}

/// `(applied_speed, fitness_drop)` pairs for solutions that improved this
/// iteration; drops are strictly positive.
#[derive(Clone, Debug, Default)]
pub struct PromisingSet {
    pub records: Vec<(f64, f64)>,
}

impl PromisingSet {
    pub fn push(&mut self, applied_speed: f64, fitness_drop: f64) {
        debug_assert!(fitness_drop > 0.0);
        self.records.push((applied_speed, fitness_drop));
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Flight duration multiplier, uniform in `[0.8, 1.2]`.
pub fn flight_duration(rng: &mut RunRng) -> f64 {
    0.8 + 0.4 * rng.uniform()
}

/// Rebuilds the base speed from the promising set, perturbs it with a
/// Cauchy-tailed term, and derives the next velocity triple.
///
/// Returns the perturbed speed (the next iteration's base) and the triple.
pub fn update_velocity_bounds(
    current_speed: f64,
    promising: &PromisingSet,
    params: &DosParams,
    rng: &mut RunRng,
) -> (f64, VelocityTriple) {
    let base = weighted_speed(promising).unwrap_or(current_speed);
    let r5 = rng.uniform();
    let perturbed = base + (PI / 2.0 * (r5 - 0.5)).tan() / 10.0;
    let speed = perturbed.abs().clamp(SPEED_FLOOR, SPEED_CEILING);
    (speed, VelocityTriple::from_speed(speed, params.k5))
}

fn weighted_speed(promising: &PromisingSet) -> Option<f64> {
    if promising.is_empty() {
        return None;
    }
    let total_drop: f64 = promising.records.iter().map(|&(_, df)| df).sum();
    if total_drop <= 0.0 || !total_drop.is_finite() {
        return None;
    }
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for &(speed, drop) in &promising.records {
        let weight = drop / total_drop.abs();
        numerator += weight * speed * speed;
        denominator += weight * speed;
    }
    let ratio = numerator / denominator;
    (denominator != 0.0 && ratio.is_finite()).then_some(ratio)
}
