//! Dogfight Search: a dual-formation swarm optimizer whose five search
//! strategies are built from displacement integration under uniform or
//! uniformly accelerated motion.
//!
//! Two opposing formations (stealth `X`, regular `Y`) each hold half the
//! swarm. The best `p` solutions of a formation act as leaders; the rest are
//! wings that derive their strategy from an assigned leader. A bounded
//! archive of valuable solutions feeds the command-guidance direction and the
//! evasion centroid, and a shared velocity triple adapts each iteration from
//! the speeds that produced fitness improvements.

pub mod archive;
pub mod strategy;
pub mod velocity;

pub use archive::Archive;
pub use strategy::Strategy;
pub use velocity::{PromisingSet, VelocityTriple};

use crate::problem::{Budget, Problem, ProblemError, RunRecord, RunTracker};
use crate::rng::RunRng;
use strategy::StepContext;

/// Tunable hyperparameters (defaults are the published settings).
#[derive(Clone, Copy, Debug)]
pub struct DosParams {
    /// Total swarm size across both formations; must be even and >= 4.
    pub swarm_size: usize,
    /// Leader-ratio floor, in (0, 0.5).
    pub k1: f64,
    /// Free-flight probability offset.
    pub k2: f64,
    /// Free-flight time ratio, in (0, 1].
    pub k3: f64,
    /// Forced free-flight ratio for the regular formation, in (0, 1].
    pub k4: f64,
    /// Speed ratio factor, in (0, 1].
    pub k5: f64,
}

impl Default for DosParams {
    fn default() -> Self {
        Self {
            swarm_size: 50,
            k1: 0.3,
            k2: -2.5,
            k3: 0.2,
            k4: 0.05,
            k5: 0.5,
        }
    }
}

impl DosParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.swarm_size < 4 || self.swarm_size % 2 != 0 {
            return Err(format!(
                "swarm_size must be even and >= 4, got {}",
                self.swarm_size
            ));
        }
        if !(0.0 < self.k1 && self.k1 < 0.5) {
            return Err(format!("k1 must lie in (0, 0.5), got {}", self.k1));
        }
        for (name, v) in [("k3", self.k3), ("k4", self.k4), ("k5", self.k5)] {
            if !(0.0 < v && v <= 1.0) {
                return Err(format!("{name} must lie in (0, 1], got {v}"));
            }
        }
        Ok(())
    }
}

/// One of the two adversarial sub-populations, kept sorted ascending by
/// fitness at iteration boundaries so row `i` has rank `i + 1`.
#[derive(Clone, Debug)]
pub struct Formation {
    pub positions: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub strategies: Vec<Strategy>,
    pub applied_speeds: Vec<f64>,
    /// Offensive/evasive probability coefficient (P^X or P^Y).
    pub prob_coefficient: f64,
}

impl Formation {
    fn sort_by_fitness(&mut self) {
        let n = self.fitness.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.fitness[a].total_cmp(&self.fitness[b]));
        self.positions = order.iter().map(|&i| self.positions[i].clone()).collect();
        self.fitness = order.iter().map(|&i| self.fitness[i]).collect();
        self.strategies = order.iter().map(|&i| self.strategies[i]).collect();
        self.applied_speeds = order.iter().map(|&i| self.applied_speeds[i]).collect();
    }
}

/// Per-solution trace of the last iteration, in pre-sort rank order:
/// `(strategy, assigned leader rank for wings)`.
pub type UpdateTrace = Vec<(Strategy, Option<usize>)>;

/// Full algorithm state, observable between iterations.
#[derive(Debug)]
pub struct DosState {
    pub stealth: Formation,
    pub regular: Formation,
    pub archive: Archive,
    pub velocity: VelocityTriple,
    pub base_speed: f64,
    /// Iterations completed so far (t).
    pub iteration: u64,
    /// Planned iteration count (T).
    pub total_iterations: u64,
    /// Leader count drawn for the last completed iteration.
    pub leader_count: usize,
    pub last_stealth_trace: UpdateTrace,
    pub last_regular_trace: UpdateTrace,
    params: DosParams,
}

impl DosState {
    pub fn params(&self) -> &DosParams {
        &self.params
    }

    /// All positions across both formations (stealth rows first).
    pub fn all_positions(&self) -> Vec<Vec<f64>> {
        let mut out = self.stealth.positions.clone();
        out.extend(self.regular.positions.iter().cloned());
        out
    }
}

#[derive(Clone, Copy)]
enum Side {
    Stealth,
    Regular,
}

struct PlannedMove {
    strategy: Strategy,
    assigned_leader: Option<usize>,
    position: Vec<f64>,
    applied_speed: f64,
}

const INITIAL_SPEED: f64 = 1.0;
const INITIAL_PROB: f64 = 0.5;

/// Splits the box at the per-dimension midpoints and fills the stealth
/// formation from the lower half, the regular formation from the upper half.
fn initialize_formations_raw(
    problem: &Problem,
    params: &DosParams,
    rng: &mut RunRng,
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let half = params.swarm_size / 2;
    let lower = problem.bounds().lower();
    let upper = problem.bounds().upper();
    let mid: Vec<f64> = lower
        .iter()
        .zip(upper)
        .map(|(&lo, &hi)| (lo + hi) / 2.0)
        .collect();
    let sample_box = |rng: &mut RunRng, lo: &[f64], hi: &[f64]| -> Vec<f64> {
        lo.iter()
            .zip(hi)
            .map(|(&a, &b)| rng.uniform_in(a, b))
            .collect()
    };
    let stealth = (0..half).map(|_| sample_box(rng, lower, &mid)).collect();
    let regular = (0..half).map(|_| sample_box(rng, &mid, upper)).collect();
    (stealth, regular)
}

/// Contract entry point: both formations sampled in their half-boxes,
/// evaluated and sorted ascending by fitness.
pub fn initialize_formations(
    problem: &Problem,
    params: &DosParams,
    rng: &mut RunRng,
) -> (Formation, Formation) {
    let (sx, sy) = initialize_formations_raw(problem, params, rng);
    let build = |positions: Vec<Vec<f64>>| {
        let fitness: Vec<f64> = positions
            .iter()
            .map(|p| {
                let v = problem.evaluate(p);
                if v.is_finite() {
                    v
                } else {
                    f64::INFINITY
                }
            })
            .collect();
        let n = positions.len();
        let mut f = Formation {
            positions,
            fitness,
            strategies: vec![Strategy::FreeFlight; n],
            applied_speeds: vec![0.0; n],
            prob_coefficient: INITIAL_PROB,
        };
        f.sort_by_fitness();
        f
    };
    (build(sx), build(sy))
}

impl DosState {
    fn new(
        problem: &Problem,
        params: DosParams,
        total_iterations: u64,
        rng: &mut RunRng,
        tracker: &mut RunTracker,
    ) -> Self {
        let (raw_x, raw_y) = initialize_formations_raw(problem, &params, rng);
        let evaluate = |positions: Vec<Vec<f64>>, tracker: &mut RunTracker| {
            let fitness: Vec<f64> = positions
                .iter()
                .map(|p| tracker.record(p, problem.evaluate(p)))
                .collect();
            let n = positions.len();
            let mut f = Formation {
                positions,
                fitness,
                strategies: vec![Strategy::FreeFlight; n],
                applied_speeds: vec![0.0; n],
                prob_coefficient: INITIAL_PROB,
            };
            f.sort_by_fitness();
            f
        };
        let stealth = evaluate(raw_x, tracker);
        let regular = evaluate(raw_y, tracker);
        Self {
            stealth,
            regular,
            archive: Archive::for_swarm(params.swarm_size),
            velocity: VelocityTriple::from_speed(INITIAL_SPEED, params.k5),
            base_speed: INITIAL_SPEED,
            iteration: 0,
            total_iterations,
            leader_count: 0,
            last_stealth_trace: Vec::new(),
            last_regular_trace: Vec::new(),
            params,
        }
    }

}

/// Per-solution outcome of an update sweep, in pre-sort rank order.
struct MoveMeta {
    strategy: Strategy,
    assigned_leader: Option<usize>,
    applied_speed: f64,
}

/// Sweeps one formation in place: positions are overwritten as the loop
/// proceeds, so wings follow their leader's already-updated position and the
/// second formation sees the first one's new positions. Fitness values and
/// ranks stay those of the iteration start until the evaluation phase.
#[allow(clippy::too_many_arguments)]
fn sweep_formation(
    own: &mut Formation,
    opposing_positions: &[Vec<f64>],
    archive: &Archive,
    velocity: VelocityTriple,
    params: &DosParams,
    side: Side,
    p: usize,
    t: u64,
    total: u64,
    bounds: &crate::problem::Bounds,
    rng: &mut RunRng,
) -> Vec<MoveMeta> {
    let half = params.swarm_size / 2;
    let prob = own.prob_coefficient;
    let mut meta: Vec<MoveMeta> = Vec::with_capacity(half);
    for i in 0..half {
        let (strat, assigned) = if i < p {
            let s = match side {
                Side::Stealth => {
                    strategy::select_strategy_stealth_leader(t, total, prob, params, rng)
                }
                Side::Regular => {
                    strategy::select_strategy_regular_leader(t, total, prob, params, rng)
                }
            };
            (s, None)
        } else {
            let h = rng.index(p);
            let s = strategy::select_strategy_wing(meta[h].strategy, prob, rng);
            (s, Some(h))
        };
        let strat = if strat == Strategy::FlareEvasion
            && std::env::var("DOS_FLARE_GATE").is_ok()
            && (t as f64) >= params.k3 * total as f64
        {
            Strategy::MissileAttack
        } else {
            strat
        };
        let (position, applied_speed) = {
            let ctx = StepContext {
                self_positions: &own.positions,
                opposing_positions,
                leader_count: p,
                archive,
                velocity,
                bounds,
                swarm_size: params.swarm_size,
            };
            let u_head =
                strategy::head_guidance(&own.positions, archive, params.swarm_size, rng);
            let duration = velocity::flight_duration(rng);
            match strat {
                Strategy::FreeFlight => {
                    strategy::free_flight_step(i, assigned, &ctx, &u_head, duration, rng)
                }
                Strategy::ManeuverLockOn => {
                    strategy::maneuver_lockon_step(i, &ctx, &u_head, duration, rng)
                }
                Strategy::MissileAttack => {
                    strategy::missile_attack_step(i, &ctx, &u_head, duration, rng)
                }
                Strategy::ManeuverEvasion => {
                    strategy::maneuver_evasion_step(i, &ctx, &u_head, duration, rng)
                }
                Strategy::FlareEvasion => {
                    strategy::flare_evasion_step(i, &ctx, &u_head, duration, rng)
                }
            }
        };
        own.positions[i] = position;
        meta.push(MoveMeta {
            strategy: strat,
            assigned_leader: assigned,
            applied_speed,
        });
    }
    meta
}

/// Evaluates a swept formation: archives improvements, collects promising
/// statistics, installs new fitness and adapts the probability coefficient.
fn evaluate_formation(
    own: &mut Formation,
    meta: &[MoveMeta],
    archive: &mut Archive,
    pooled: &mut PromisingSet,
    problem: &Problem,
    tracker: &mut RunTracker,
    p: usize,
    t: u64,
    total: u64,
    base_speed: f64,
) -> UpdateTrace {
    let mut selected_offensive = Vec::new();
    let mut selected_evasive = Vec::new();
    let mut promising_offensive = Vec::new();
    let mut promising_evasive = Vec::new();
    let mut trace: UpdateTrace = Vec::with_capacity(meta.len());
    // temporary experiment knob: archive admission gate
    let gate = std::env::var("DOS_GATE").unwrap_or_else(|_| "median".into());
    let leader_fitness = match gate.as_str() {
        "none" => f64::INFINITY,
        "leader" => own.fitness[p - 1],
        "best" => own.fitness[0],
        "quarter" => own.fitness[own.fitness.len() / 4],
        _ => own.fitness[own.fitness.len() / 2],
    };
    for (i, mv) in meta.iter().enumerate() {
        let rank = i + 1;
        if mv.strategy.is_offensive() {
            selected_offensive.push(rank);
        } else if mv.strategy.is_evasive() {
            selected_evasive.push(rank);
        }
        let value = tracker.record(&own.positions[i], problem.evaluate(&own.positions[i]));
        if value < own.fitness[i] {
            if value <= leader_fitness {
                archive.push(own.positions[i].clone(), value);
            }
            let drop = own.fitness[i] - value;
            if drop.is_finite() {
                let v_i = if std::env::var("DOS_VBASE").is_ok() { base_speed } else { mv.applied_speed };
                pooled.push(v_i, drop);
            }
            if mv.strategy.is_offensive() {
                promising_offensive.push(rank);
            } else if mv.strategy.is_evasive() {
                promising_evasive.push(rank);
            }
        }
        own.fitness[i] = value;
        own.strategies[i] = mv.strategy;
        own.applied_speeds[i] = mv.applied_speed;
        trace.push((mv.strategy, mv.assigned_leader));
    }
    own.prob_coefficient = strategy::update_prob_coefficient(
        own.prob_coefficient,
        &selected_offensive,
        &selected_evasive,
        &promising_offensive,
        &promising_evasive,
        t,
        total,
    );
    trace
}

/// Applies one full iteration: sweep both formations (stealth first),
/// evaluate, record promising solutions, adapt probabilities and speeds,
/// and re-sort. New positions always replace old ones; best-so-far is
/// tracked by the caller's `RunTracker`.
fn dos_iterate_inner(
    state: &mut DosState,
    problem: &Problem,
    rng: &mut RunRng,
    tracker: &mut RunTracker,
) {
    let t = state.iteration + 1;
    let total = state.total_iterations;
    let p = strategy::leader_count(&state.params, rng);
    state.leader_count = p;

    let meta_x = sweep_formation(
        &mut state.stealth,
        &state.regular.positions,
        &state.archive,
        state.velocity,
        &state.params,
        Side::Stealth,
        p,
        t,
        total,
        problem.bounds(),
        rng,
    );
    let meta_y = sweep_formation(
        &mut state.regular,
        &state.stealth.positions,
        &state.archive,
        state.velocity,
        &state.params,
        Side::Regular,
        p,
        t,
        total,
        problem.bounds(),
        rng,
    );

    let mut pooled_promising = PromisingSet::default();
    state.last_stealth_trace = evaluate_formation(
        &mut state.stealth,
        &meta_x,
        &mut state.archive,
        &mut pooled_promising,
        problem,
        tracker,
        p,
        t,
        total,
        state.base_speed,
    );
    state.last_regular_trace = evaluate_formation(
        &mut state.regular,
        &meta_y,
        &mut state.archive,
        &mut pooled_promising,
        problem,
        tracker,
        p,
        t,
        total,
        state.base_speed,
    );

    let (next_speed, triple) =
        velocity::update_velocity_bounds(state.base_speed, &pooled_promising, &state.params, rng);
    state.base_speed = next_speed;
    state.velocity = triple;

    state.stealth.sort_by_fitness();
    state.regular.sort_by_fitness();
    state.iteration = t;
}

/// Runs Dogfight Search to budget exhaustion.
pub fn dos_optimize(
    problem: &Problem,
    params: &DosParams,
    budget: Budget,
    seed: u64,
) -> Result<RunRecord, ProblemError> {
    dos_optimize_observed(problem, params, budget, seed, |_| {})
}

/// As [`dos_optimize`], invoking `observer` after initialization and after
/// every completed iteration.
pub fn dos_optimize_observed<F>(
    problem: &Problem,
    params: &DosParams,
    budget: Budget,
    seed: u64,
    mut observer: F,
) -> Result<RunRecord, ProblemError>
where
    F: FnMut(&DosState),
{
    params.validate().expect("invalid DoS parameters");
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
    let mut rng = RunRng::new(seed);
    let mut tracker = RunTracker::new(seed, stride);
    let total_iterations = (budget.max_evaluations - n) / n;
    let mut state = DosState::new(problem, *params, total_iterations, &mut rng, &mut tracker);
    observer(&state);
    while state.iteration < state.total_iterations {
        dos_iterate_inner(&mut state, problem, &mut rng, &mut tracker);
        observer(&state);
    }
    let feasible = !tracker.best_point.is_empty() && problem.is_feasible(&tracker.best_point);
    Ok(tracker.finish(feasible))
}
