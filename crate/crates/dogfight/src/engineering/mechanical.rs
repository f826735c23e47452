//! Mechanical engineering design problems R3-R8.

use std::f64::consts::PI;
use std::sync::Arc;

use super::{ProblemParts, RawEvaluation, VarKind};
use crate::problem::Bounds;

/// R3: weld seam height, top flange width, beam height and beam length.
pub(super) fn welded_beam() -> ProblemParts {
    let bounds = Bounds::new(vec![0.1, 0.1, 0.1, 0.1], vec![2.0, 10.0, 10.0, 2.0]).unwrap();
    let kinds = vec![VarKind::Continuous; 4];
    let eval = |x: &[f64]| -> RawEvaluation {
        let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
        let objective = 1.1047 * x1 * x1 * x2 + 0.04811 * x3 * x4 * (14.0 + x2);

        let load = 6000.0;
        let length = 14.0;
        let young = 30e6;
        let shear_mod = 12e6;
        let tau_prime = load / (2.0_f64.sqrt() * x1 * x2);
        let half_diag = (0.25 * (x2 * x2 + (x1 + x3) * (x1 + x3))).sqrt();
        let moment = load * (length + 0.5 * x2);
        let polar = 2.0 * 2.0_f64.sqrt() * x1 * x2 * (x2 * x2 / 4.0 + 0.25 * (x1 + x3) * (x1 + x3));
        let tau_double = moment * half_diag / polar;
        let tau = (tau_prime * tau_prime
            + tau_double * tau_double
            + x2 * tau_prime * tau_double / half_diag)
            .sqrt();
        let sigma = 504_000.0 / (x3 * x3 * x4);
        let deflection = 65_856_000.0 / (young * x4 * x3 * x3 * x3);
        let buckling = 4.013 * young * (x3 * x3 * x4.powi(6) / 36.0).sqrt() / (length * length)
            * (1.0 - x3 / (2.0 * length) * (young / (4.0 * shear_mod)).sqrt());

        RawEvaluation {
            objective,
            inequalities: vec![
                tau - 13_600.0,
                sigma - 30_000.0,
                deflection - 0.25,
                x1 - x4,
                load - buckling,
                0.125 - x1,
                1.1047 * x1 + 0.04811 * x3 * x4 * (14.0 + x2) - 5.0,
            ],
            equalities: Vec::new(),
        }
    };
    (bounds, kinds, 7, 0, Arc::new(eval))
}

/// R4: head/shell thickness indices (integer multiples of 0.0625), shell
/// radius and vessel length.
pub(super) fn pressure_vessel() -> ProblemParts {
    let bounds = Bounds::new(vec![1.0, 1.0, 10.0, 10.0], vec![99.0, 99.0, 200.0, 200.0]).unwrap();
    let kinds = vec![
        VarKind::Integer,
        VarKind::Integer,
        VarKind::Continuous,
        VarKind::Continuous,
    ];
    let eval = |x: &[f64]| -> RawEvaluation {
        let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
        let z1 = 0.0625 * x1;
        let z2 = 0.0625 * x2;
        RawEvaluation {
            objective: 1.7781 * z2 * x3 * x3
                + 0.6224 * z1 * x3 * x4
                + 3.1661 * z1 * z1 * x4
                + 19.84 * z1 * z1 * x3,
            inequalities: vec![
                0.00954 * x3 - z2,
                0.0193 * x3 - z1,
                x4 - 240.0,
                -PI * x3 * x3 * x4 - 4.0 / 3.0 * PI * x3 * x3 * x3 + 1_296_000.0,
            ],
            equalities: Vec::new(),
        }
    };
    (bounds, kinds, 4, 0, Arc::new(eval))
}

/// R5: body structural thicknesses; two material choices are binary.
pub(super) fn side_impact() -> ProblemParts {
    let mut lower = vec![0.5; 7];
    let mut upper = vec![1.5; 7];
    lower.extend([0.192, 0.192, -30.0, -30.0]);
    upper.extend([0.345, 0.345, 30.0, 30.0]);
    let bounds = Bounds::new(lower, upper).unwrap();
    const MATERIALS: [f64; 2] = [0.192, 0.345];
    let mut kinds = vec![VarKind::Continuous; 7];
    kinds.push(VarKind::Values(&MATERIALS));
    kinds.push(VarKind::Values(&MATERIALS));
    kinds.push(VarKind::Continuous);
    kinds.push(VarKind::Continuous);
    let eval = |x: &[f64]| -> RawEvaluation {
        let (x1, x2, x3, x4, x5, x6, x7) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
        let (x8, x9, x10, x11) = (x[7], x[8], x[9], x[10]);
        RawEvaluation {
            objective: 1.98 + 4.9 * x1 + 6.67 * x2 + 6.98 * x3 + 4.01 * x4 + 1.78 * x5 + 2.73 * x7,
            inequalities: vec![
                1.16 - 0.3717 * x2 * x4 - 0.00931 * x2 * x10 - 0.484 * x3 * x9
                    + 0.01343 * x6 * x10
                    - 1.0,
                46.36 - 9.9 * x2 - 12.9 * x1 * x2 + 0.1107 * x3 * x10 - 32.0,
                33.86 + 2.95 * x3 + 0.1792 * x3 - 5.057 * x1 * x2 - 11.0 * x2 * x8
                    - 0.0215 * x5 * x10
                    - 9.98 * x7 * x8
                    + 22.0 * x8 * x9
                    - 32.0,
                28.98 + 3.818 * x3 - 4.2 * x1 * x2 + 0.0207 * x5 * x10 + 6.63 * x6 * x9
                    - 7.7 * x7 * x8
                    + 0.32 * x9 * x10
                    - 32.0,
                0.261 - 0.0159 * x1 * x2 - 0.188 * x1 * x8 - 0.019 * x2 * x7
                    + 0.0144 * x3 * x5
                    + 0.0008757 * x5 * x10
                    + 0.08045 * x6 * x9
                    + 0.00139 * x8 * x11
                    + 0.00001575 * x10 * x11
                    - 0.32,
                0.214 + 0.00817 * x5 - 0.131 * x1 * x8 - 0.0704 * x1 * x9 + 0.03099 * x2 * x6
                    - 0.018 * x2 * x7
                    + 0.0208 * x3 * x8
                    + 0.121 * x3 * x9
                    - 0.00364 * x5 * x6
                    + 0.0007715 * x5 * x10
                    - 0.0005354 * x6 * x10
                    + 0.00121 * x8 * x11
                    + 0.00184 * x9 * x10
                    - 0.02 * x2 * x2
                    - 0.32,
                0.74 - 0.61 * x2 - 0.163 * x3 * x8 + 0.001232 * x3 * x10 - 0.166 * x7 * x9
                    + 0.227 * x2 * x2
                    - 0.32,
                4.72 - 0.5 * x4 - 0.19 * x2 * x3 - 0.0122 * x4 * x10
                    + 0.009325 * x6 * x10
                    + 0.000191 * x11 * x11
                    - 4.0,
                10.58 - 0.674 * x1 * x2 - 1.95 * x2 * x8 + 0.02054 * x3 * x10 - 0.0198 * x4 * x10
                    + 0.028 * x6 * x10
                    - 9.9,
                16.45 - 0.489 * x3 * x7 - 0.843 * x5 * x6 + 0.0432 * x9 * x10 - 0.0556 * x9 * x11
                    - 0.000786 * x11 * x11
                    - 15.7,
            ],
            equalities: Vec::new(),
        }
    };
    (bounds, kinds, 10, 0, Arc::new(eval))
}

/// R6: fourteen design parameters of an industrial refrigeration system.
pub(super) fn refrigeration_system() -> ProblemParts {
    let bounds = Bounds::new(vec![0.001; 14], vec![5.0; 14]).unwrap();
    let kinds = vec![VarKind::Continuous; 14];
    let eval = |x: &[f64]| -> RawEvaluation {
        let (x1, x2, x3, x4, x5, x6, x7) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
        let (x8, x9, x10, x11, x12, x13, x14) = (x[7], x[8], x[9], x[10], x[11], x[12], x[13]);
        let objective = 63098.88 * x2 * x4 * x12
            + 5441.5 * x2 * x2 * x12
            + 115055.5 * x2.powf(1.664) * x6
            + 6172.27 * x2 * x2 * x6
            + 63098.88 * x1 * x3 * x11
            + 5441.5 * x1 * x1 * x11
            + 115055.5 * x1.powf(1.664) * x5
            + 6172.27 * x1 * x1 * x5
            + 140.53 * x1 * x11
            + 281.29 * x3 * x11
            + 70.26 * x1 * x1
            + 281.29 * x1 * x3
            + 281.29 * x3 * x3
            + 14437.0 * x8.powf(1.8812) * x12.powf(0.3424) * x10 / x14 * x1 * x1 * x7 / x9
            + 20470.2 * x7.powf(2.893) * x11.powf(0.316) * x1 * x1;
        let inequalities = vec![
            1.524 / x7 - 1.0,
            1.524 / x8 - 1.0,
            0.07789 * x1 - 2.0 * x9 / x7 - 1.0,
            7.05305 / x9 * x1 * x1 * x10 / (x8 * x2 * x14) - 1.0,
            0.0833 / x13 * x14 - 1.0,
            47.136 * x2.powf(0.333) / x10 * x12 - 1.333 * x8 * x13.powf(2.1195)
                + 62.08 * x13.powf(2.1195) / x12 * x8.powf(0.2) / x10
                - 1.0,
            0.04771 * x10 * x8.powf(1.8812) * x12.powf(0.3424) - 1.0,
            0.0488 * x9 * x7.powf(1.893) * x11.powf(0.316) - 1.0,
            0.0099 * x1 / x3 - 1.0,
            0.0193 * x2 / x4 - 1.0,
            0.0298 * x1 / x5 - 1.0,
            0.056 * x2 / x6 - 1.0,
            2.0 / x9 - 1.0,
            2.0 / x10 - 1.0,
            x12 / x11 - 1.0,
        ];
        RawEvaluation {
            objective,
            inequalities,
            equalities: Vec::new(),
        }
    };
    (bounds, kinds, 15, 0, Arc::new(eval))
}

/// R7: four pulley diameters and the belt width, all in millimetres; three
/// equal-belt-length equalities plus tension-ratio and power constraints.
pub(super) fn step_cone_pulley() -> ProblemParts {
    let bounds = Bounds::new(vec![0.0; 5], vec![60.0, 60.0, 90.0, 90.0, 90.0]).unwrap();
    let kinds = vec![VarKind::Continuous; 5];
    let eval = |x: &[f64]| -> RawEvaluation {
        // millimetres to metres; stage output speeds against 350 rpm input
        let d: Vec<f64> = x[..4].iter().map(|&v| v * 1e-3).collect();
        let width = x[4] * 1e-3;
        const SPEEDS: [f64; 4] = [750.0, 450.0, 250.0, 150.0];
        const INPUT_SPEED: f64 = 350.0;
        const DENSITY: f64 = 7200.0;
        const CENTER_DISTANCE: f64 = 3.0;
        const FRICTION: f64 = 0.35;
        const STRESS: f64 = 1.75e6;
        const THICKNESS: f64 = 8e-3;

        let ratio: Vec<f64> = SPEEDS.iter().map(|&n| n / INPUT_SPEED).collect();
        let objective = DENSITY
            * width
            * PI
            / 4.0
            * (0..4)
                .map(|i| d[i] * d[i] * (1.0 + ratio[i] * ratio[i]))
                .sum::<f64>();

        let belt_length = |i: usize| -> f64 {
            PI * d[i] / 2.0 * (1.0 + ratio[i])
                + (ratio[i] - 1.0).powi(2) * d[i] * d[i] / (4.0 * CENTER_DISTANCE)
                + 2.0 * CENTER_DISTANCE
        };
        let tension_ratio = |i: usize| -> f64 {
            (FRICTION * (PI - 2.0 * ((ratio[i] - 1.0) * d[i] / (2.0 * CENTER_DISTANCE)).asin()))
                .exp()
        };
        let power = |i: usize| -> f64 {
            STRESS * THICKNESS * width * (1.0 - 1.0 / tension_ratio(i)) * PI * d[i] * SPEEDS[i]
                / 60.0
        };

        let c1 = belt_length(0);
        let equalities = vec![c1 - belt_length(1), c1 - belt_length(2), c1 - belt_length(3)];
        let mut inequalities: Vec<f64> = (0..4).map(|i| 2.0 - tension_ratio(i)).collect();
        inequalities.extend((0..4).map(|i| 0.75 * 745.6998 - power(i)));
        RawEvaluation {
            objective,
            inequalities,
            equalities,
        }
    };
    (bounds, kinds, 8, 3, Arc::new(eval))
}

/// R8: bearing step radii, oil viscosity and flow rate. The evaluation chain
/// runs temperature -> friction loss -> film thickness -> inlet pressure ->
/// load, in that order.
pub(super) fn thrust_bearing() -> ProblemParts {
    let bounds = Bounds::new(vec![1.0, 1.0, 1e-6, 1.0], vec![16.0, 16.0, 16e-6, 16.0]).unwrap();
    let kinds = vec![VarKind::Continuous; 4];
    let eval = |x: &[f64]| -> RawEvaluation {
        let (r_outer, r_inner, viscosity, flow) = (x[0], x[1], x[2], x[3]);
        const GAMMA: f64 = 0.0307;
        const SPECIFIC_HEAT: f64 = 0.5;
        const INLET_TEMP: f64 = 560.0; // 100 F in Rankine
        const GRAVITY: f64 = 386.4;
        const RPM: f64 = 750.0;

        let loglog = (8.122e6 * viscosity + 0.8).log10().log10();
        let p_exp = (10.04 - loglog) / 3.55;
        let temp_rise = 2.0 * (10f64.powf(p_exp) - INLET_TEMP);
        let friction_loss = 9336.0 * flow * GAMMA * SPECIFIC_HEAT * temp_rise;
        let film = (2.0 * PI * RPM / 60.0).powi(2) * (2.0 * PI * viscosity / friction_loss)
            * (r_outer.powi(4) / 4.0 - r_inner.powi(4) / 4.0);
        let pressure =
            6.0 * viscosity * flow / (PI * film.powi(3)) * (r_outer / r_inner).ln();
        let load = PI * pressure / 2.0 * (r_outer * r_outer - r_inner * r_inner)
            / (r_outer / r_inner).ln();
        let objective = (flow * pressure / 0.7 + friction_loss) / 12.0;

        RawEvaluation {
            objective,
            inequalities: vec![
                pressure - 1000.0,
                load - 101_000.0,
                load / (PI * (r_outer * r_outer - r_inner * r_inner)) - 5000.0,
                temp_rise - 50.0,
                GAMMA / (GRAVITY * pressure) * (flow / (2.0 * PI * r_outer * film)) - 0.001,
                r_inner - r_outer,
                0.001 - film,
            ],
            equalities: Vec::new(),
        }
    };
    (bounds, kinds, 7, 0, Arc::new(eval))
}

#[cfg(test)]
mod tests {
    use crate::engineering::{constrained, ProblemId};

    const FEAS_TOL: f64 = 1e-4;

    #[test]
    fn welded_beam_reported_best_reproduces() {
        let p = constrained(ProblemId::R3);
        let x = [0.20572964, 3.25312004, 9.03662391, 0.20572964];
        let eval = p.evaluate_raw(&x).unwrap();
        assert!(
            (eval.objective - 1.6952472).abs() / 1.6952472 < 1e-2,
            "objective {}",
            eval.objective
        );
        assert!(
            eval.inequalities.iter().all(|&g| g <= FEAS_TOL),
            "violations: {:?}",
            eval.inequalities
        );
    }

    #[test]
    fn pressure_vessel_reported_best_reproduces() {
        let p = constrained(ProblemId::R4);
        let x = [12.7927137, 7.31679176, 42.0984456, 176.636596];
        let eval = p.evaluate_raw(&x).unwrap();
        assert!(
            (eval.objective - 6059.7143).abs() / 6059.7143 < 1e-2,
            "objective {}",
            eval.objective
        );
        assert!(eval.inequalities.iter().all(|&g| g <= FEAS_TOL));
    }

    #[test]
    fn side_impact_reported_best_objective() {
        let p = constrained(ProblemId::R5);
        let x = [
            0.5, 0.97984709, 0.5, 1.00244987, 0.5, 0.5, 0.5, 0.99702629, 5.9061e-15, 30.0,
            23.0333313,
        ];
        // x8/x9 lie outside the material box; snapping is the contract
        let snapped = p.snap(&x);
        let eval = (p.evaluate_raw(&snapped)).unwrap();
        assert!((eval.objective - 20.730404).abs() < 1e-4);
    }

    #[test]
    fn refrigeration_reported_best_reproduces() {
        let p = constrained(ProblemId::R6);
        let x = [
            0.001, 0.001, 0.001, 0.001, 0.001, 0.001, 1.524, 1.524, 5.0, 2.0, 0.001, 0.001,
            0.0072934, 0.08755583,
        ];
        let eval = p.evaluate_raw(&x).unwrap();
        assert!(
            (eval.objective - 0.032213).abs() / 0.032213 < 1e-2,
            "objective {}",
            eval.objective
        );
        assert!(eval.inequalities.iter().all(|&g| g <= FEAS_TOL));
    }

    #[test]
    fn step_cone_pulley_reported_best_reproduces() {
        let p = constrained(ProblemId::R7);
        let x = [38.4139618, 52.8586378, 70.4726957, 84.4957161, 90.0];
        let eval = p.evaluate_raw(&x).unwrap();
        assert!(
            (eval.objective - 16.090273).abs() / 16.090273 < 1e-2,
            "objective {}",
            eval.objective
        );
        assert!(eval.inequalities.iter().all(|&g| g <= FEAS_TOL));
        assert!(eval.equalities.iter().all(|&h| h.abs() <= 1e-4));
    }

    #[test]
    fn thrust_bearing_reported_best_reproduces() {
        let p = constrained(ProblemId::R8);
        let x = [5.95551185, 5.38871638, 5.3587e-06, 2.25664104];
        let eval = p.evaluate_raw(&x).unwrap();
        assert!(
            (eval.objective - 1616.1204).abs() / 1616.1204 < 1e-2,
            "objective {}",
            eval.objective
        );
        assert!(
            eval.inequalities.iter().all(|&g| g <= FEAS_TOL),
            "violations: {:?}",
            eval.inequalities
        );
    }

    #[test]
    fn thrust_bearing_degenerate_radii_poisoned() {
        let p = constrained(ProblemId::R8);
        // equal radii divide by ln(1) = 0
        let eval = p.evaluate_raw(&[5.0, 5.0, 5e-6, 2.0]).unwrap();
        assert_eq!(eval.objective, f64::INFINITY);
        assert!(eval.inequalities.iter().all(|&g| g == f64::INFINITY));
    }
}
