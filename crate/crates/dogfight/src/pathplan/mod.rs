//! Mountainous-terrain UAV path planning: a 21-variable genome decodes into
//! seven waypoints over a height grid, cubic splines smooth them into a
//! trajectory, and violated constraint families add fixed penalties to the
//! length-plus-smoothness objective.

pub mod constraints;
pub mod spline;
pub mod terrain;

pub use constraints::{
    check_constraints, path_objectives, turn_angle, zone_preset_table45, ConstraintFlags,
    NoFlyZone,
};
pub use spline::{spline_interpolate, CubicSpline};
pub use terrain::{generate_terrain, Terrain, TerrainError};

use std::sync::Arc;

use crate::problem::{Bounds, Problem};

pub const NODE_COUNT: usize = 7;
pub const GENOME_LEN: usize = 3 * NODE_COUNT;
/// Fixed penalty added once per violated constraint family.
pub const FAMILY_PENALTY: f64 = 10_000.0;

/// Planner configuration; the defaults reproduce the qualitative regime of
/// the published experiments on a 101x101 grid.
#[derive(Clone, Copy, Debug)]
pub struct PathConfig {
    pub start_x: f64,
    pub start_y: f64,
    /// Maximum turn between adjacent segments, radians.
    pub turning_limit: f64,
    pub min_clearance: f64,
    pub max_altitude: f64,
    pub domain_low: f64,
    pub domain_high: f64,
    /// Interpolated trajectory point count.
    pub samples: usize,
    pub dx_low: f64,
    pub dx_high: f64,
    pub dz_low: f64,
    pub dz_high: f64,
}

impl Default for PathConfig {
    fn default() -> Self {
        Self {
            start_x: 5.0,
            start_y: 5.0,
            turning_limit: 60f64.to_radians(),
            min_clearance: 0.5,
            max_altitude: 20.0,
            domain_low: 0.0,
            domain_high: 100.0,
            samples: 100,
            dx_low: -5.0,
            dx_high: 25.0,
            dz_low: 0.5,
            dz_high: 5.0,
        }
    }
}

impl PathConfig {
    pub fn genome_bounds(&self) -> Bounds {
        let mut lower = Vec::with_capacity(GENOME_LEN);
        let mut upper = Vec::with_capacity(GENOME_LEN);
        for _ in 0..NODE_COUNT {
            lower.extend([self.dx_low, self.dx_low, self.dz_low]);
            upper.extend([self.dx_high, self.dx_high, self.dz_high]);
        }
        Bounds::new(lower, upper).expect("genome bounds")
    }

    pub fn validate(&self) {
        assert!(self.turning_limit > 0.0 && self.turning_limit < std::f64::consts::PI);
        assert!(self.samples >= 8);
        assert!(self.domain_low < self.domain_high);
    }
}

/// Decodes the genome `[dx1, dy1, dz1, ..., dx7, dy7, dz7]` into waypoints:
/// integer-snapped plan coordinates with terrain-relative altitudes.
pub fn decode_nodes(
    genome: &[f64],
    terrain: &Terrain,
    config: &PathConfig,
) -> [[f64; 3]; NODE_COUNT] {
    assert_eq!(genome.len(), GENOME_LEN, "genome must have 21 entries");
    let mut nodes = [[0.0; 3]; NODE_COUNT];
    let mut sum_x = 0.0;
    let mut sum_y = 0.0;
    for i in 0..NODE_COUNT {
        sum_x += genome[3 * i];
        sum_y += genome[3 * i + 1];
        let dz = genome[3 * i + 2];
        let x = (0.5 + config.start_x + sum_x).round();
        let y = (0.5 + config.start_y + sum_y).round();
        let ground = terrain.height_at_cell(x as i64, y as i64);
        nodes[i] = [x, y, ground + dz];
    }
    nodes
}

/// Full penalized objective: `F1 + F2` plus one fixed penalty per violated
/// constraint family (four families, five when zones are present).
pub fn penalized_path_objective(
    genome: &[f64],
    terrain: &Terrain,
    config: &PathConfig,
    zones: &[NoFlyZone],
) -> f64 {
    let nodes = decode_nodes(genome, terrain, config);
    let trajectory = spline_interpolate(&nodes, config.samples);
    let (length, spread) = path_objectives(&trajectory);
    let flags = check_constraints(&trajectory, terrain, config, zones);
    length + spread + FAMILY_PENALTY * flags.violated_families(!zones.is_empty()) as f64
}

/// Decode + interpolate + check, for callers that need the flags themselves.
pub fn evaluate_path(
    genome: &[f64],
    terrain: &Terrain,
    config: &PathConfig,
    zones: &[NoFlyZone],
) -> (Vec<[f64; 3]>, f64, f64, ConstraintFlags) {
    let nodes = decode_nodes(genome, terrain, config);
    let trajectory = spline_interpolate(&nodes, config.samples);
    let (length, spread) = path_objectives(&trajectory);
    let flags = check_constraints(&trajectory, terrain, config, zones);
    (trajectory, length, spread, flags)
}

/// Wraps the planner as a minimization problem over the genome box. The
/// constraint evaluator exposes one aggregate violation value per family so
/// run records carry a meaningful feasibility flag.
pub fn to_problem(terrain: Arc<Terrain>, config: PathConfig, zones: Vec<NoFlyZone>) -> Problem {
    config.validate();
    let family_count = if zones.is_empty() { 4 } else { 5 };
    let objective_terrain = terrain.clone();
    let objective_zones = zones.clone();
    let constraint_terrain = terrain;
    let constraint_zones = zones;
    Problem::new(config.genome_bounds(), move |genome: &[f64]| {
        penalized_path_objective(genome, &objective_terrain, &config, &objective_zones)
    })
    .with_constraints(family_count, 0, move |genome: &[f64]| {
        let (_, _, _, flags) =
            evaluate_path(genome, &constraint_terrain, &config, &constraint_zones);
        let mut g = vec![
            if flags.turning { 1.0 } else { -1.0 },
            if flags.clearance { 1.0 } else { -1.0 },
            if flags.domain { 1.0 } else { -1.0 },
            if flags.altitude { 1.0 } else { -1.0 },
        ];
        if family_count == 5 {
            g.push(if flags.no_fly { 1.0 } else { -1.0 });
        }
        (g, Vec::new())
    })
}
