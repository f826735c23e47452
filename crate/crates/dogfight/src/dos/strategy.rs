//! The five search strategies, the direction components they share, and the
//! dynamic selection rules for leader and wing aircraft.

use crate::dos::archive::Archive;
use crate::dos::velocity::VelocityTriple;
use crate::dos::DosParams;
use crate::problem::{clamp_to_bounds, Bounds};
use crate::rng::RunRng;

/// Search strategies by their numeric identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    FreeFlight = 1,
    ManeuverLockOn = 2,
    MissileAttack = 3,
    ManeuverEvasion = 4,
    FlareEvasion = 5,
}

impl Strategy {
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn is_offensive(self) -> bool {
        matches!(self, Strategy::ManeuverLockOn | Strategy::MissileAttack)
    }

    pub fn is_evasive(self) -> bool {
        matches!(self, Strategy::ManeuverEvasion | Strategy::FlareEvasion)
    }
}

/// Number of leader aircraft for this iteration, shared by both formations:
/// `round((k1 + (1/2 - k1) r1) N/2)` clamped so at least one wing exists.
pub fn leader_count(params: &DosParams, rng: &mut RunRng) -> usize {
    let half = params.swarm_size / 2;
    let r1 = rng.uniform();
    let raw = ((params.k1 + (0.5 - params.k1) * r1) * half as f64).round() as isize;
    (raw.max(1) as usize).min(half - 1)
}

/// Command-guidance component: a top-ranked solution of the formation minus a
/// stored valuable solution. Zero when the archive is empty.
pub fn head_guidance(
    sorted_positions: &[Vec<f64>],
    archive: &Archive,
    swarm_size: usize,
    rng: &mut RunRng,
) -> Vec<f64> {
    let dim = sorted_positions[0].len();
    if archive.is_empty() {
        return vec![0.0; dim];
    }
    let nr = ((0.1 * swarm_size as f64).round() as usize).max(1);
    let r3 = rng.uniform();
    let r4 = rng.uniform();
    let top = clamped_rank(nr, r3, nr);
    let occ = archive.occupancy();
    let stored = clamped_rank(occ, r4, occ);
    let elite = &sorted_positions[top - 1];
    let z = &archive.entry(stored - 1).position;
    let scale: f64 = std::env::var("DOS_HEAD_SCALE").ok().and_then(|v| v.parse().ok()).unwrap_or(1.0);
    elite.iter().zip(z).map(|(&a, &b)| scale * (a - b)).collect()
}

/// `round(n * r)` clamped into `[1, cap]`.
fn clamped_rank(n: usize, r: f64, cap: usize) -> usize {
    (((n as f64 * r).round() as usize).max(1)).min(cap)
}

/// Per-solution inputs shared by every step function.
pub(crate) struct StepContext<'a> {
    pub self_positions: &'a [Vec<f64>],
    pub opposing_positions: &'a [Vec<f64>],
    pub leader_count: usize,
    pub archive: &'a Archive,
    pub velocity: VelocityTriple,
    pub bounds: &'a Bounds,
    pub swarm_size: usize,
}

/// Applies `x_new = x + (u_pilot + u_head) * speed`, clamped to bounds.
fn advance(
    current: &[f64],
    u_pilot: &[f64],
    u_head: &[f64],
    speed: f64,
    bounds: &Bounds,
) -> Vec<f64> {
    let moved: Vec<f64> = current
        .iter()
        .zip(u_pilot.iter().zip(u_head))
        .map(|(&x, (&p, &h))| x + (p + h) * speed)
        .collect();
    clamp_to_bounds(&moved, bounds)
}

/// Free flight: leaders chase a random point of the box, wings follow their
/// assigned leader. Uniform motion at minimum speed.
pub(crate) fn free_flight_step(
    i: usize,
    assigned_leader: Option<usize>,
    ctx: &StepContext,
    u_head: &[f64],
    duration: f64,
    rng: &mut RunRng,
) -> (Vec<f64>, f64) {
    let current = &ctx.self_positions[i];
    let target: Vec<f64> = match assigned_leader {
        None => ctx.bounds.sample(rng),
        Some(h) => ctx.self_positions[h].clone(),
    };
    let u_pilot: Vec<f64> = target.iter().zip(current).map(|(&t, &x)| t - x).collect();
    let speed = ctx.velocity.v_min * duration;
    (advance(current, &u_pilot, u_head, speed, ctx.bounds), speed)
}

/// Maneuver lock-on: blend of an opposing leader and its predicted position,
/// uniformly accelerated motion from minimum speed.
pub(crate) fn maneuver_lockon_step(
    i: usize,
    ctx: &StepContext,
    u_head: &[f64],
    duration: f64,
    rng: &mut RunRng,
) -> (Vec<f64>, f64) {
    let current = &ctx.self_positions[i];
    let h = rng.index(ctx.leader_count);
    let target = &ctx.opposing_positions[h];
    let best = &ctx.opposing_positions[0];
    let r8 = rng.uniform();
    let r9 = rng.uniform();
    let u_pilot: Vec<f64> = target
        .iter()
        .zip(best.iter().zip(current))
        .map(|(&yh, (&yb, &x))| {
            let predicted = yh + (yb - yh) * r9;
            r8 * (yh - x) + (1.0 - r8) * (predicted - x)
        })
        .collect();
    let v = ctx.velocity;
    let speed = v.v_min + 0.5 * v.accel * duration * duration;
    (advance(current, &u_pilot, u_head, speed, ctx.bounds), speed)
}

/// Missile attack: straight at an opposing leader, uniformly decelerated
/// motion from maximum speed.
pub(crate) fn missile_attack_step(
    i: usize,
    ctx: &StepContext,
    u_head: &[f64],
    duration: f64,
    rng: &mut RunRng,
) -> (Vec<f64>, f64) {
    let current = &ctx.self_positions[i];
    let h = rng.index(ctx.leader_count);
    let target = &ctx.opposing_positions[h];
    let u_pilot: Vec<f64> = target.iter().zip(current).map(|(&y, &x)| y - x).collect();
    let v = ctx.velocity;
    let speed = v.v_max - 0.5 * v.accel * duration * duration;
    (advance(current, &u_pilot, u_head, speed, ctx.bounds), speed)
}

/// Maneuver evasion: move toward the centroid of recently stored valuable
/// solutions; stationary pilot component when the archive is empty.
pub(crate) fn maneuver_evasion_step(
    i: usize,
    ctx: &StepContext,
    u_head: &[f64],
    duration: f64,
    rng: &mut RunRng,
) -> (Vec<f64>, f64) {
    let current = &ctx.self_positions[i];
    let dim = current.len();
    let u_pilot: Vec<f64> = if ctx.archive.is_empty() {
        vec![0.0; dim]
    } else {
        let nr = ((0.1 * ctx.swarm_size as f64).round() as usize).max(1);
        let r4 = rng.uniform();
        let n = clamped_rank(nr, r4, ctx.archive.occupancy());
        let centroid = ctx
            .archive
            .recent_centroid(n)
            .expect("archive checked non-empty");
        centroid.iter().zip(current).map(|(&c, &x)| c - x).collect()
    };
    let v = ctx.velocity;
    let speed = v.v_min + 0.5 * v.accel * duration * duration;
    (advance(current, &u_pilot, u_head, speed, ctx.bounds), speed)
}

/// Flare evasion: move toward a random boundary-region point, uniform motion
/// at maximum speed. Indicator draws are fresh per dimension.
pub(crate) fn flare_evasion_step(
    i: usize,
    ctx: &StepContext,
    u_head: &[f64],
    duration: f64,
    rng: &mut RunRng,
) -> (Vec<f64>, f64) {
    let current = &ctx.self_positions[i];
    let lower = ctx.bounds.lower();
    let upper = ctx.bounds.upper();
    let u_pilot: Vec<f64> = current
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let random = rng.uniform_in(lower[j], upper[j]);
            let i1 = rng.uniform() >= 0.5;
            let i2 = rng.uniform() >= 0.5;
            let boundary = match (i1, i2) {
                (true, false) => random,
                (true, true) => random + lower[j],
                (false, true) => lower[j],
                // the printed indicator form collapses this case to zero;
                // the upper bound keeps it a boundary point
                (false, false) => upper[j],
            };
            boundary - x
        })
        .collect();
    let speed = ctx.velocity.v_max * duration;
    (advance(current, &u_pilot, u_head, speed, ctx.bounds), speed)
}

/// Free-flight execution probability, decreasing over iterations.
pub fn free_flight_probability(k2: f64, t: u64, total: u64) -> f64 {
    (k2 - t as f64 / total as f64).exp()
}

fn offensive_or_evasive(prob_coefficient: f64, r13: f64, r14: f64) -> Strategy {
    if r13 < prob_coefficient {
        if r14 < 0.5 {
            Strategy::ManeuverLockOn
        } else {
            Strategy::MissileAttack
        }
    } else if r14 < 0.8 {
        Strategy::ManeuverEvasion
    } else {
        Strategy::FlareEvasion
    }
}

/// Stealth-formation leaders: probabilistic free flight while the time gate
/// is open, otherwise the offensive/evasive split.
pub fn select_strategy_stealth_leader(
    t: u64,
    total: u64,
    prob_coefficient: f64,
    params: &DosParams,
    rng: &mut RunRng,
) -> Strategy {
    let r12 = rng.uniform();
    let r13 = rng.uniform();
    let r14 = rng.uniform();
    let gate = free_flight_probability(params.k2, t, total);
    if r12 < gate && (t as f64) < params.k3 * total as f64 {
        Strategy::FreeFlight
    } else {
        offensive_or_evasive(prob_coefficient, r13, r14)
    }
}

/// Regular-formation leaders: forced free flight in the earliest phase, then
/// the stealth rule.
pub fn select_strategy_regular_leader(
    t: u64,
    total: u64,
    prob_coefficient: f64,
    params: &DosParams,
    rng: &mut RunRng,
) -> Strategy {
    if (t as f64) < params.k4 * total as f64 {
        Strategy::FreeFlight
    } else {
        select_strategy_stealth_leader(t, total, prob_coefficient, params, rng)
    }
}

/// Wings derive their strategy from their assigned leader's choice.
pub fn select_strategy_wing(
    leader_strategy: Strategy,
    prob_coefficient: f64,
    rng: &mut RunRng,
) -> Strategy {
    let r13 = rng.uniform();
    let r14 = rng.uniform();
    match leader_strategy {
        Strategy::FreeFlight => Strategy::FreeFlight,
        Strategy::ManeuverLockOn | Strategy::MissileAttack => {
            if r13 < prob_coefficient {
                Strategy::ManeuverLockOn
            } else {
                Strategy::ManeuverEvasion
            }
        }
        Strategy::ManeuverEvasion | Strategy::FlareEvasion => {
            if r14 < 0.5 {
                Strategy::ManeuverLockOn
            } else {
                Strategy::MissileAttack
            }
        }
    }
}

/// Checks the wing/leader strategy relation; used by the invariant suite.
pub fn wing_strategy_consistent(leader: Strategy, wing: Strategy) -> bool {
    match leader {
        Strategy::FreeFlight => wing == Strategy::FreeFlight,
        Strategy::ManeuverLockOn | Strategy::MissileAttack => {
            matches!(wing, Strategy::ManeuverLockOn | Strategy::ManeuverEvasion)
        }
        Strategy::ManeuverEvasion | Strategy::FlareEvasion => {
            matches!(wing, Strategy::ManeuverLockOn | Strategy::MissileAttack)
        }
    }
}

/// Shift of the offensive/evasive probability coefficient from the ranks of
/// selecting and promising solutions; result clamped to `[0.05, 0.95]`.
pub fn update_prob_coefficient(
    prob: f64,
    selected_offensive: &[usize],
    selected_evasive: &[usize],
    promising_offensive: &[usize],
    promising_evasive: &[usize],
    t: u64,
    total: u64,
) -> f64 {
    let ratio = |promising: &[usize], selected: &[usize]| -> f64 {
        let denom: usize = selected.iter().sum();
        if denom == 0 {
            0.0
        } else {
            promising.iter().sum::<usize>() as f64 / denom as f64
        }
    };
    let shift = 0.05
        * (1.0 - prob)
        * (ratio(promising_offensive, selected_offensive) - ratio(promising_evasive, selected_evasive))
        * (t as f64 / total as f64);
    (prob + shift).clamp(0.05, 0.95)
}
