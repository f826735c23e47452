//! R10: wind farm layout. Fifteen turbines on a square site, pairwise
//! spacing constraints of five rotor radii over the first fourteen turbines
//! (91 constraints as published), and a pluggable expected-power model.

use std::sync::Arc;

use super::{ProblemParts, RawEvaluation, VarKind};
use crate::problem::Bounds;

pub const TURBINES: usize = 15;
/// Rotor radius in site units; the spacing floor is five radii.
pub const ROTOR_RADIUS: f64 = 40.0;

/// Expected power production per turbine for a candidate layout.
pub trait PowerModel: Send + Sync {
    fn expected_power(&self, positions: &[(f64, f64)]) -> Vec<f64>;
}

/// Single prevailing west wind, Weibull-distributed speeds, Jensen wake
/// deficits and a linear partial-power ramp between cut-in and rated speed.
///
/// All constants are plain fields so a configured variant can be built
/// directly; the defaults are stated here rather than inherited from any
/// published site.
#[derive(Clone, Copy, Debug)]
pub struct SimplifiedWeibullModel {
    pub rated_power: f64,
    pub cut_in_speed: f64,
    pub rated_speed: f64,
    pub cut_out_speed: f64,
    pub weibull_shape: f64,
    pub weibull_scale: f64,
    pub thrust_coefficient: f64,
    pub wake_decay: f64,
    pub speed_bands: usize,
}

impl Default for SimplifiedWeibullModel {
    fn default() -> Self {
        Self {
            rated_power: 1500.0,
            cut_in_speed: 3.5,
            rated_speed: 12.8,
            cut_out_speed: 25.0,
            weibull_shape: 2.0,
            weibull_scale: 8.0,
            thrust_coefficient: 0.8,
            wake_decay: 0.05,
            speed_bands: 16,
        }
    }
}

impl SimplifiedWeibullModel {
    fn weibull_cdf_complement(&self, v: f64, scale: f64) -> f64 {
        (-(v / scale).powf(self.weibull_shape)).exp()
    }

    /// Expected power of one turbine whose effective Weibull scale is
    /// `scale`: rated band plus a banded integral over the ramp.
    fn turbine_power(&self, scale: f64) -> f64 {
        let rated_band = self.weibull_cdf_complement(self.rated_speed, scale)
            - self.weibull_cdf_complement(self.cut_out_speed, scale);
        let mut partial = 0.0;
        let step = (self.rated_speed - self.cut_in_speed) / self.speed_bands as f64;
        for band in 0..self.speed_bands {
            let v0 = self.cut_in_speed + band as f64 * step;
            let v1 = v0 + step;
            let mass = self.weibull_cdf_complement(v0, scale)
                - self.weibull_cdf_complement(v1, scale);
            let mid = 0.5 * (v0 + v1);
            let ramp = (mid - self.cut_in_speed) / (self.rated_speed - self.cut_in_speed);
            partial += mass * ramp;
        }
        self.rated_power * (rated_band + partial)
    }
}

impl PowerModel for SimplifiedWeibullModel {
    fn expected_power(&self, positions: &[(f64, f64)]) -> Vec<f64> {
        let deficit_factor = 1.0 - (1.0 - self.thrust_coefficient).sqrt();
        positions
            .iter()
            .map(|&(xi, yi)| {
                // wind blows toward +x; upwind turbines shade downwind ones
                let mut deficit_sq = 0.0;
                for &(xj, yj) in positions {
                    let downstream = xi - xj;
                    if downstream <= 0.0 {
                        continue;
                    }
                    let wake_radius = ROTOR_RADIUS + self.wake_decay * downstream;
                    if (yi - yj).abs() <= wake_radius {
                        let d = deficit_factor
                            * (ROTOR_RADIUS / (ROTOR_RADIUS + self.wake_decay * downstream))
                                .powi(2);
                        deficit_sq += d * d;
                    }
                }
                let deficit = deficit_sq.sqrt().min(1.0);
                let scale = self.weibull_scale * (1.0 - deficit);
                if scale <= 0.0 {
                    0.0
                } else {
                    self.turbine_power(scale)
                }
            })
            .collect()
    }
}

/// Layout `[x1..x15, y1..y15]`; minimizes the negated total expected power.
pub(super) fn wind_farm(model: Arc<dyn PowerModel>) -> ProblemParts {
    let bounds = Bounds::new(vec![40.0; 30], vec![1960.0; 30]).unwrap();
    let kinds = vec![VarKind::Continuous; 30];
    let eval = move |x: &[f64]| -> RawEvaluation {
        let positions: Vec<(f64, f64)> = (0..TURBINES).map(|i| (x[i], x[TURBINES + i])).collect();
        let total: f64 = model.expected_power(&positions).iter().sum();
        // pairwise spacing over the first fourteen turbines, as published
        let mut inequalities = Vec::with_capacity(91);
        for i in 0..13 {
            for j in (i + 1)..14 {
                let dist = ((positions[i].0 - positions[j].0).powi(2)
                    + (positions[i].1 - positions[j].1).powi(2))
                .sqrt();
                inequalities.push(5.0 * ROTOR_RADIUS - dist);
            }
        }
        RawEvaluation {
            objective: -total,
            inequalities,
            equalities: Vec::new(),
        }
    };
    (bounds, kinds, 91, 0, Arc::new(eval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engineering::{constrained, ProblemId};

    #[test]
    fn spacing_constraint_count_and_indexing() {
        let p = constrained(ProblemId::R10);
        // all turbines stacked at one spot: every pair violates
        let stacked = vec![1000.0; 30];
        let eval = p.evaluate_raw(&stacked).unwrap();
        assert_eq!(eval.inequalities.len(), 91);
        assert!(eval.inequalities.iter().all(|&g| g > 0.0));
    }

    #[test]
    fn spread_layout_is_feasible_with_positive_power() {
        let p = constrained(ProblemId::R10);
        // 4x4 grid spacing 480 covers 15 turbines
        let mut x = Vec::new();
        let mut y = Vec::new();
        'outer: for row in 0..4 {
            for col in 0..4 {
                if x.len() == TURBINES {
                    break 'outer;
                }
                x.push(100.0 + 480.0 * col as f64);
                y.push(100.0 + 480.0 * row as f64);
            }
        }
        let layout: Vec<f64> = x.into_iter().chain(y).collect();
        let eval = p.evaluate_raw(&layout).unwrap();
        assert!(eval.inequalities.iter().all(|&g| g <= 0.0));
        assert!(eval.objective < 0.0, "objective {}", eval.objective);
    }

    #[test]
    fn wake_reduces_downwind_power() {
        let model = SimplifiedWeibullModel::default();
        let free = model.expected_power(&[(100.0, 100.0)])[0];
        let shaded = model.expected_power(&[(100.0, 100.0), (400.0, 100.0)])[1];
        assert!(shaded < free, "shaded {shaded} vs free {free}");
    }

    #[test]
    fn fifteenth_turbine_unconstrained_as_published() {
        let p = constrained(ProblemId::R10);
        // turbine 15 on top of turbine 1 is allowed by the printed set
        let mut layout = Vec::new();
        for i in 0..TURBINES {
            layout.push(100.0 + 300.0 * (i % 7) as f64);
        }
        for i in 0..TURBINES {
            layout.push(100.0 + 300.0 * (i / 7) as f64);
        }
        layout[14] = layout[0];
        layout[29] = layout[15];
        let eval = p.evaluate_raw(&layout).unwrap();
        assert!(eval.inequalities.iter().all(|&g| g <= 0.0));
    }
}
