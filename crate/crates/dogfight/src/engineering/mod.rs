//! Ten constrained real-world design problems with penalty-based constraint
//! handling, discrete-variable snapping and feasibility reporting.
//!
//! Problems are addressed by id `R1..R10`. Raw evaluators return the
//! objective and signed constraint values; [`ConstrainedProblem::to_problem`]
//! wraps them behind an additive penalty for the optimizers.

mod chemical;
mod gearbox;
mod mechanical;
mod windfarm;

pub use windfarm::{PowerModel, SimplifiedWeibullModel};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::problem::{budget_for_dimension, Bounds, Budget, Problem, RunRecord};

#[derive(Debug, Error)]
pub enum EngineeringError {
    #[error("unknown problem id `{0}`; valid ids are R1..R10")]
    UnknownId(String),
    #[error("point has dimension {got}, {id} expects {expected}")]
    DimensionMismatch {
        id: ProblemId,
        got: usize,
        expected: usize,
    },
    #[error("coordinate {index} = {value} outside [{lower}, {upper}] for {id}")]
    OutOfBounds {
        id: ProblemId,
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
}

impl ProblemId {
    pub const ALL: [ProblemId; 10] = [
        ProblemId::R1,
        ProblemId::R2,
        ProblemId::R3,
        ProblemId::R4,
        ProblemId::R5,
        ProblemId::R6,
        ProblemId::R7,
        ProblemId::R8,
        ProblemId::R9,
        ProblemId::R10,
    ];

    pub fn title(self) -> &'static str {
        match self {
            ProblemId::R1 => "optimal operation of alkylation unit",
            ProblemId::R2 => "process flow sheeting",
            ProblemId::R3 => "welded beam design",
            ProblemId::R4 => "pressure vessel design",
            ProblemId::R5 => "side impact design of automobiles",
            ProblemId::R6 => "optimal design of industrial refrigeration system",
            ProblemId::R7 => "step-cone pulley",
            ProblemId::R8 => "hydro-static thrust bearing design",
            ProblemId::R9 => "four-stage gear box",
            ProblemId::R10 => "wind farm layout",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", *self as usize + 1)
    }
}

impl FromStr for ProblemId {
    type Err = EngineeringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        ProblemId::ALL
            .iter()
            .copied()
            .find(|id| id.to_string() == t)
            .ok_or_else(|| EngineeringError::UnknownId(s.to_string()))
    }
}

/// Per-dimension variable kind; discrete dimensions are snapped before every
/// objective/constraint evaluation.
#[derive(Clone, Debug)]
pub enum VarKind {
    Continuous,
    Integer,
    /// Allowed values, sorted ascending.
    Values(&'static [f64]),
}

/// Objective plus signed constraint values at one (already snapped) point.
#[derive(Clone, Debug)]
pub struct RawEvaluation {
    pub objective: f64,
    pub inequalities: Vec<f64>,
    pub equalities: Vec<f64>,
}

impl RawEvaluation {
    /// Non-finite intermediates poison the whole evaluation: the objective
    /// becomes +infinity and every constraint is marked violated.
    fn sanitized(self, inequality_count: usize, equality_count: usize) -> Self {
        let poisoned = !self.objective.is_finite()
            || self.inequalities.iter().any(|v| v.is_nan())
            || self.equalities.iter().any(|v| v.is_nan());
        if poisoned {
            RawEvaluation {
                objective: f64::INFINITY,
                inequalities: vec![f64::INFINITY; inequality_count],
                equalities: vec![f64::INFINITY; equality_count],
            }
        } else {
            self
        }
    }
}

pub(crate) type RawFn = Arc<dyn Fn(&[f64]) -> RawEvaluation + Send + Sync>;
pub(crate) type ProblemParts = (Bounds, Vec<VarKind>, usize, usize, RawFn);

/// A constrained problem: relaxed box for the optimizer, discrete snapping at
/// evaluation time, and an equality tolerance for feasibility.
#[derive(Clone)]
pub struct ConstrainedProblem {
    pub id: ProblemId,
    pub bounds: Bounds,
    pub inequality_count: usize,
    pub equality_count: usize,
    pub equality_tolerance: f64,
    kinds: Vec<VarKind>,
    evaluator: RawFn,
}

impl fmt::Debug for ConstrainedProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConstrainedProblem")
            .field("id", &self.id)
            .field("dimension", &self.bounds.dimension())
            .field("g", &self.inequality_count)
            .field("h", &self.equality_count)
            .finish()
    }
}

/// Additive penalty: every violated constraint adds a fixed offset plus a
/// weighted violation magnitude.
#[derive(Clone, Copy, Debug)]
pub struct PenaltyConfig {
    pub offset: f64,
    pub weight: f64,
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        Self {
            offset: 1e4,
            weight: 1e4,
        }
    }
}

impl ConstrainedProblem {
    pub fn dimension(&self) -> usize {
        self.bounds.dimension()
    }

    /// Budget per the dimension schedule; equality-constrained R7 uses the
    /// flat 100k setting.
    pub fn budget(&self) -> Budget {
        match self.id {
            ProblemId::R7 => Budget::new(100_000),
            _ => budget_for_dimension(self.dimension()),
        }
    }

    /// Nearest allowed value per discrete dimension (ties to the smaller
    /// value); continuous dimensions pass through.
    pub fn snap(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.kinds)
            .map(|(&v, kind)| match kind {
                VarKind::Continuous => v,
                VarKind::Integer => snap_integer(v),
                VarKind::Values(allowed) => {
                    let mut best = allowed[0];
                    let mut dist = (v - best).abs();
                    for &candidate in &allowed[1..] {
                        let d = (v - candidate).abs();
                        if d < dist {
                            best = candidate;
                            dist = d;
                        }
                    }
                    best
                }
            })
            .collect()
    }

    /// Raw objective and constraints at `x` (after snapping). Errors when the
    /// point leaves the relaxed box.
    pub fn evaluate_raw(&self, x: &[f64]) -> Result<RawEvaluation, EngineeringError> {
        if x.len() != self.dimension() {
            return Err(EngineeringError::DimensionMismatch {
                id: self.id,
                got: x.len(),
                expected: self.dimension(),
            });
        }
        for (j, &v) in x.iter().enumerate() {
            let lo = self.bounds.lower()[j];
            let hi = self.bounds.upper()[j];
            if !(lo..=hi).contains(&v) {
                return Err(EngineeringError::OutOfBounds {
                    id: self.id,
                    index: j,
                    value: v,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(self.evaluate_snapped(&self.snap(x)))
    }

    fn evaluate_snapped(&self, snapped: &[f64]) -> RawEvaluation {
        (self.evaluator)(snapped).sanitized(self.inequality_count, self.equality_count)
    }

    /// Feasibility under `g_i <= 0` and `|h_j| <= equality_tolerance`.
    pub fn is_feasible(&self, x: &[f64]) -> bool {
        let eval = self.evaluate_snapped(&self.snap(x));
        eval.inequalities.iter().all(|&g| g <= 0.0)
            && eval
                .equalities
                .iter()
                .all(|&h| h.abs() <= self.equality_tolerance)
    }

    /// Penalized scalar objective for the optimizers; feasible points return
    /// the raw objective unchanged.
    pub fn penalized_objective(&self, config: &PenaltyConfig, x: &[f64]) -> f64 {
        let eval = self.evaluate_snapped(&self.snap(x));
        let mut value = eval.objective;
        for &g in &eval.inequalities {
            if g > 0.0 {
                value += config.offset + config.weight * g;
            }
        }
        for &h in &eval.equalities {
            let excess = h.abs() - self.equality_tolerance;
            if excess > 0.0 {
                value += config.offset + config.weight * excess;
            }
        }
        value
    }

    /// Wraps the problem for the optimizers: penalized objective plus the
    /// raw constraint evaluator for feasibility flags.
    pub fn to_problem(&self, config: PenaltyConfig) -> Problem {
        let this = self.clone();
        let that = self.clone();
        Problem::new(self.bounds.clone(), move |x: &[f64]| {
            this.penalized_objective(&config, x)
        })
        .with_constraints(
            self.inequality_count,
            self.equality_count,
            move |x: &[f64]| {
                let eval = that.evaluate_snapped(&that.snap(x));
                (eval.inequalities, eval.equalities)
            },
        )
        .with_equality_tolerance(self.equality_tolerance)
    }
}

/// Rounds to the nearest integer with ties to the smaller value.
fn snap_integer(v: f64) -> f64 {
    let down = v.floor();
    let up = v.ceil();
    if (v - down) <= (up - v) {
        down
    } else {
        up
    }
}

/// Builds the registered problem for `id`.
pub fn constrained(id: ProblemId) -> ConstrainedProblem {
    let (bounds, kinds, g, h, evaluator): ProblemParts = match id {
        ProblemId::R1 => chemical::alkylation(),
        ProblemId::R2 => chemical::process_flow_sheeting(),
        ProblemId::R3 => mechanical::welded_beam(),
        ProblemId::R4 => mechanical::pressure_vessel(),
        ProblemId::R5 => mechanical::side_impact(),
        ProblemId::R6 => mechanical::refrigeration_system(),
        ProblemId::R7 => mechanical::step_cone_pulley(),
        ProblemId::R8 => mechanical::thrust_bearing(),
        ProblemId::R9 => gearbox::four_stage_gearbox(),
        ProblemId::R10 => windfarm::wind_farm(Arc::new(SimplifiedWeibullModel::default())),
    };
    ConstrainedProblem {
        id,
        bounds,
        inequality_count: g,
        equality_count: h,
        equality_tolerance: 1e-4,
        kinds,
        evaluator,
    }
}

/// Wind farm with a caller-supplied power production model.
pub fn wind_farm_with_model(model: Arc<dyn PowerModel>) -> ConstrainedProblem {
    let (bounds, kinds, g, h, evaluator) = windfarm::wind_farm(model);
    ConstrainedProblem {
        id: ProblemId::R10,
        bounds,
        inequality_count: g,
        equality_count: h,
        equality_tolerance: 1e-4,
        kinds,
        evaluator,
    }
}

/// Contract entry point: raw `(f, g, h)` for the named problem.
pub fn evaluate_raw(
    id: ProblemId,
    x: &[f64],
) -> Result<(f64, Vec<f64>, Vec<f64>), EngineeringError> {
    let problem = constrained(id);
    let eval = problem.evaluate_raw(x)?;
    Ok((eval.objective, eval.inequalities, eval.equalities))
}

/// Contract entry point: snapped copy of `x` for the named problem.
pub fn snap_discrete(problem: &ConstrainedProblem, x: &[f64]) -> Vec<f64> {
    problem.snap(x)
}

/// Fraction of runs whose best point is feasible.
pub fn feasibility_report(runs: &[RunRecord], problem: &ConstrainedProblem) -> f64 {
    assert!(!runs.is_empty(), "feasibility_report needs runs");
    let feasible = runs
        .iter()
        .filter(|r| !r.best_point.is_empty() && problem.is_feasible(&r.best_point))
        .count();
    feasible as f64 / runs.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_via_strings() {
        for id in ProblemId::ALL {
            let parsed: ProblemId = id.to_string().parse().unwrap();
            assert_eq!(parsed, id);
        }
        assert!("R11".parse::<ProblemId>().is_err());
        assert!("r4".parse::<ProblemId>().is_ok());
    }

    #[test]
    fn table_dimensions_and_constraint_counts() {
        let expect: [(ProblemId, usize, usize, usize); 10] = [
            (ProblemId::R1, 7, 14, 0),
            (ProblemId::R2, 3, 3, 0),
            (ProblemId::R3, 4, 7, 0),
            (ProblemId::R4, 4, 4, 0),
            (ProblemId::R5, 11, 10, 0),
            (ProblemId::R6, 14, 15, 0),
            (ProblemId::R7, 5, 8, 3),
            (ProblemId::R8, 4, 7, 0),
            (ProblemId::R9, 22, 86, 0),
            (ProblemId::R10, 30, 91, 0),
        ];
        for (id, d, g, h) in expect {
            let p = constrained(id);
            assert_eq!(p.dimension(), d, "{id} dimension");
            assert_eq!(p.inequality_count, g, "{id} inequalities");
            assert_eq!(p.equality_count, h, "{id} equalities");
            let mid: Vec<f64> = p
                .bounds
                .lower()
                .iter()
                .zip(p.bounds.upper())
                .map(|(&lo, &hi)| 0.5 * (lo + hi))
                .collect();
            let eval = p.evaluate_raw(&mid).unwrap();
            assert_eq!(eval.inequalities.len(), g);
            assert_eq!(eval.equalities.len(), h);
        }
    }

    #[test]
    fn snapping_examples() {
        let r2 = constrained(ProblemId::R2);
        let snapped = r2.snap(&[0.5, -1.5, 0.75209273]);
        assert_eq!(snapped[2], 1.0);
        let r5 = constrained(ProblemId::R5);
        let mut point = vec![1.0; 11];
        point[7] = 0.99702629;
        point[8] = 5.9061e-15;
        let snapped = r5.snap(&point);
        assert_eq!(snapped[7], 0.345);
        assert_eq!(snapped[8], 0.192);
        let r4 = constrained(ProblemId::R4);
        let snapped = r4.snap(&[12.49, 7.5, 42.0, 176.0]);
        assert_eq!(snapped[0], 12.0);
        // integer ties go to the smaller value
        assert_eq!(snapped[1], 7.0);
    }

    #[test]
    fn snap_is_idempotent() {
        for id in ProblemId::ALL {
            let p = constrained(id);
            let probe: Vec<f64> = p
                .bounds
                .lower()
                .iter()
                .zip(p.bounds.upper())
                .map(|(&lo, &hi)| 0.47 * lo + 0.53 * hi)
                .collect();
            let once = p.snap(&probe);
            assert_eq!(p.snap(&once), once, "{id}");
        }
    }

    #[test]
    fn penalty_zero_when_feasible_and_tolerance_boundary_free() {
        let r2 = constrained(ProblemId::R2);
        // strictly inside the feasible region (the reported optimum itself
        // sits on the g1 boundary within print precision)
        let feasible = [0.942, -2.1, 1.0];
        let cfg = PenaltyConfig::default();
        let raw = r2.evaluate_raw(&feasible).unwrap();
        assert!(r2.is_feasible(&feasible));
        assert_eq!(r2.penalized_objective(&cfg, &feasible), raw.objective);

        // equality exactly at tolerance carries no penalty: R7 point with
        // tiny residuals stays unpenalized
        let r7 = constrained(ProblemId::R7);
        let x = [38.4139618, 52.8586378, 70.4726957, 84.4957161, 90.0];
        let raw = r7.evaluate_raw(&x).unwrap();
        assert!(raw.equalities.iter().all(|h| h.abs() <= 1e-4));
        assert_eq!(r7.penalized_objective(&cfg, &x), raw.objective);
    }

    #[test]
    fn penalty_adds_offset_plus_weighted_magnitude() {
        let r2 = constrained(ProblemId::R2);
        let cfg = PenaltyConfig::default();
        // x2 = -1.6 violates g2 = x2 + 1.1 x3 + 1 by exactly 0.5
        let violated = [0.94193734, -1.6, 1.0];
        let raw = r2.evaluate_raw(&violated).unwrap();
        let penalty: f64 = raw
            .inequalities
            .iter()
            .filter(|&&g| g > 0.0)
            .map(|&g| cfg.offset + cfg.weight * g)
            .sum();
        assert!((raw.inequalities[1] - 0.5).abs() < 1e-12);
        let expected = raw.objective + penalty;
        assert!((r2.penalized_objective(&cfg, &violated) - expected).abs() < 1e-9);
    }

    #[test]
    fn penalized_objective_monotone_in_single_violation() {
        let r4 = constrained(ProblemId::R4);
        let cfg = PenaltyConfig::default();
        // shrinking the shell radius grows the volume violation g4
        let mut last = f64::NEG_INFINITY;
        for x3 in [40.0, 30.0, 20.0, 15.0] {
            let v = r4.penalized_objective(&cfg, &[13.0, 7.0, x3, 100.0]);
            assert!(v >= last, "penalty decreased at x3 = {x3}");
            last = v;
        }
    }

    #[test]
    fn out_of_bounds_point_errors() {
        let r4 = constrained(ProblemId::R4);
        assert!(r4.evaluate_raw(&[0.0, 7.0, 42.0, 176.0]).is_err());
        assert!(r4.evaluate_raw(&[13.0, 7.0, 42.0]).is_err());
    }
}
