//! Trajectory objectives and the constraint families: turning angle, terrain
//! clearance, domain box, altitude ceiling and no-fly cylinders.

use super::terrain::Terrain;
use super::PathConfig;

/// Vertical cylinder the trajectory must not enter.
#[derive(Clone, Copy, Debug)]
pub struct NoFlyZone {
    pub center_x: f64,
    pub center_y: f64,
    pub radius: f64,
    pub height: f64,
}

impl NoFlyZone {
    pub fn new(center_x: f64, center_y: f64, radius: f64, height: f64) -> Self {
        assert!(radius > 0.0 && height > 0.0);
        Self {
            center_x,
            center_y,
            radius,
            height,
        }
    }

    /// Inside means within the horizontal disc and at or below the cap.
    pub fn contains(&self, point: &[f64; 3]) -> bool {
        let d = ((point[0] - self.center_x).powi(2) + (point[1] - self.center_y).powi(2)).sqrt();
        d <= self.radius && point[2] <= self.height
    }
}

/// The published five-zone preset.
pub fn zone_preset_table45() -> Vec<NoFlyZone> {
    vec![
        NoFlyZone::new(56.7157, 18.5965, 5.0676, 6.4409),
        NoFlyZone::new(32.6590, 39.5000, 4.7530, 8.2620),
        NoFlyZone::new(13.1987, 45.5621, 10.5505, 3.8032),
        NoFlyZone::new(65.9033, 70.4151, 4.9743, 8.5927),
        NoFlyZone::new(64.0290, 44.1858, 8.7564, 9.5035),
    ]
}

/// Path length (sum of segment norms) and altitude spread (population
/// standard deviation of the z samples).
pub fn path_objectives(trajectory: &[[f64; 3]]) -> (f64, f64) {
    assert!(trajectory.len() >= 2);
    let length: f64 = trajectory
        .windows(2)
        .map(|w| {
            ((w[1][0] - w[0][0]).powi(2) + (w[1][1] - w[0][1]).powi(2) + (w[1][2] - w[0][2]).powi(2))
                .sqrt()
        })
        .sum();
    let m = trajectory.len() as f64;
    let mean_z: f64 = trajectory.iter().map(|p| p[2]).sum::<f64>() / m;
    let spread = (trajectory.iter().map(|p| (p[2] - mean_z).powi(2)).sum::<f64>() / m).sqrt();
    (length, spread)
}

/// Violation flags per constraint family, `true` = at least one point
/// violates the family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConstraintFlags {
    pub turning: bool,
    pub clearance: bool,
    pub domain: bool,
    pub altitude: bool,
    pub no_fly: bool,
}

impl ConstraintFlags {
    pub fn violated_families(&self, with_zones: bool) -> usize {
        [self.turning, self.clearance, self.domain, self.altitude]
            .iter()
            .filter(|&&v| v)
            .count()
            + usize::from(with_zones && self.no_fly)
    }

    pub fn all_satisfied(&self, with_zones: bool) -> bool {
        self.violated_families(with_zones) == 0
    }
}

/// Checks every family over the interpolated trajectory.
pub fn check_constraints(
    trajectory: &[[f64; 3]],
    terrain: &Terrain,
    config: &PathConfig,
    zones: &[NoFlyZone],
) -> ConstraintFlags {
    let mut flags = ConstraintFlags::default();
    for window in trajectory.windows(3) {
        if turn_angle(&window[0], &window[1], &window[2]) > config.turning_limit {
            flags.turning = true;
            break;
        }
    }
    for p in trajectory {
        if p[2] < terrain.height_at(p[0], p[1]) + config.min_clearance {
            flags.clearance = true;
            break;
        }
    }
    for p in trajectory {
        if p[0] < config.domain_low
            || p[0] > config.domain_high
            || p[1] < config.domain_low
            || p[1] > config.domain_high
        {
            flags.domain = true;
            break;
        }
    }
    for p in trajectory {
        if p[2] > config.max_altitude {
            flags.altitude = true;
            break;
        }
    }
    'zones: for p in trajectory {
        for z in zones {
            if z.contains(p) {
                flags.no_fly = true;
                break 'zones;
            }
        }
    }
    flags
}

/// Angle between the incoming and outgoing segments at `b`; zero-length
/// segments impose no heading change.
pub fn turn_angle(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let v = [c[0] - b[0], c[1] - b[1], c[2] - b[2]];
    let nu = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    let nv = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    let dot = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]) / (nu * nv);
    dot.clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathplan::terrain::generate_terrain;

    fn flat_config() -> PathConfig {
        PathConfig::default()
    }

    #[test]
    fn objectives_direct_values() {
        let (len, spread) = path_objectives(&[[0.0, 0.0, 2.0], [3.0, 4.0, 2.0]]);
        assert_eq!(len, 5.0);
        assert_eq!(spread, 0.0);
        // altitudes (1, 3): population std about mean 2 is 1
        let (_, spread) = path_objectives(&[[0.0, 0.0, 1.0], [1.0, 0.0, 3.0]]);
        assert_eq!(spread, 1.0);
    }

    #[test]
    fn straight_clear_path_satisfies_all() {
        let terrain = generate_terrain(1, 32, 0, (0.0, 0.0)); // flat at 0.5
        let config = flat_config();
        let traj: Vec<[f64; 3]> = (0..20)
            .map(|i| [5.0 + i as f64, 5.0, 5.0])
            .collect();
        let flags = check_constraints(&traj, &terrain, &config, &[]);
        assert!(flags.all_satisfied(false));
    }

    #[test]
    fn right_angle_violates_sixty_degrees() {
        let terrain = generate_terrain(1, 32, 0, (0.0, 0.0));
        let config = flat_config();
        let traj = [
            [5.0, 5.0, 5.0],
            [10.0, 5.0, 5.0],
            [10.0, 10.0, 5.0],
            [10.0, 15.0, 5.0],
        ];
        let flags = check_constraints(&traj, &terrain, &config, &[]);
        assert!(flags.turning);
        assert!((turn_angle(&traj[0], &traj[1], &traj[2]) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn zone_membership_is_cylinder() {
        let zone = NoFlyZone::new(50.0, 50.0, 5.0, 8.0);
        assert!(zone.contains(&[50.0, 50.0, 4.0]));
        assert!(!zone.contains(&[50.0, 50.0, 9.0])); // above the cap
        assert!(!zone.contains(&[56.0, 50.0, 4.0])); // outside the disc
    }

    #[test]
    fn zone_over_center_at_half_height_violates() {
        let terrain = generate_terrain(1, 101, 0, (0.0, 0.0));
        let config = flat_config();
        let zone = NoFlyZone::new(50.0, 50.0, 5.0, 8.0);
        let traj: Vec<[f64; 3]> = (0..40)
            .map(|i| [30.0 + i as f64, 50.0, 4.0])
            .collect();
        let flags = check_constraints(&traj, &terrain, &config, &[zone]);
        assert!(flags.no_fly);
    }

    #[test]
    fn zero_length_segment_counts_as_no_turn() {
        let p = [1.0, 2.0, 3.0];
        assert_eq!(turn_angle(&p, &p, &[4.0, 5.0, 6.0]), 0.0);
    }

    #[test]
    fn clearance_against_bilinear_terrain() {
        let terrain = generate_terrain(7, 64, 6, (2.0, 8.0));
        let config = flat_config();
        // hug the terrain just below the clearance margin
        let traj: Vec<[f64; 3]> = (0..30)
            .map(|i| {
                let x = 5.0 + i as f64;
                [x, 20.0, terrain.height_at(x, 20.0) + 0.25]
            })
            .collect();
        let flags = check_constraints(&traj, &terrain, &config, &[]);
        assert!(flags.clearance);
    }
}
