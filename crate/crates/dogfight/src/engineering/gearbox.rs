//! R9: four-stage gear box. 22 discrete variables (tooth counts, face
//! widths, shaft positions) under 86 constraints covering bending strength,
//! pitting, contact ratio, pitch-diameter floors, housing fit and the
//! overall speed-ratio band.

use std::f64::consts::PI;
use std::sync::Arc;

use super::{ProblemParts, RawEvaluation, VarKind};
use crate::problem::Bounds;

const PRESSURE_ANGLE: f64 = 120.0 * PI / 180.0;
const K_OVERLOAD: f64 = 1.5;
const K_MOUNTING: f64 = 1.6;
const POWER: f64 = 55.9;
const J_FACTOR: f64 = 0.2;
const SIGMA_BENDING: f64 = 2090.0;
const SIGMA_CONTACT: f64 = 3290.0;
const ELASTIC_COEFF: f64 = 464.0;
const CR_MIN: f64 = 1.4;
const D_MIN: f64 = 25.0;
const L_MAX: f64 = 127.0;
const OMEGA_IN: f64 = 5000.0;
const OMEGA_MIN: f64 = 245.0;
const OMEGA_MAX: f64 = 255.0;

const WIDTHS: [f64; 4] = [3.175, 5.715, 8.255, 12.7];
const POSITIONS: [f64; 9] = [12.7, 25.4, 38.1, 50.8, 63.5, 76.2, 88.9, 101.6, 114.3];

/// Variable layout: `[Np1, Ng1, Np2, Ng2, Np3, Ng3, Np4, Ng4,
///                    b1, b2, b3, b4, xp1, xg1, xg2, xg3, xg4,
///                    yp1, yg1, yg2, yg3, yg4]`.
pub(super) fn four_stage_gearbox() -> ProblemParts {
    let mut lower = vec![7.0; 8];
    let mut upper = vec![76.0; 8];
    lower.extend([WIDTHS[0]; 4]);
    upper.extend([WIDTHS[3]; 4]);
    lower.extend([POSITIONS[0]; 10]);
    upper.extend([POSITIONS[8]; 10]);
    let bounds = Bounds::new(lower, upper).unwrap();

    let mut kinds = vec![VarKind::Integer; 8];
    kinds.extend(std::iter::repeat_with(|| VarKind::Values(&WIDTHS)).take(4));
    kinds.extend(std::iter::repeat_with(|| VarKind::Values(&POSITIONS)).take(10));

    (bounds, kinds, 86, 0, Arc::new(evaluate))
}

struct Stage {
    pinion_teeth: f64,
    gear_teeth: f64,
    width: f64,
    center_distance: f64,
    /// Cumulative speed factor `366000 * prod(Ng)/prod(Np)` up to the
    /// previous stage, divided by `pi * omega_in`.
    torque_factor: f64,
}

fn stages(x: &[f64]) -> Vec<Stage> {
    let teeth = &x[..8];
    let widths = &x[8..12];
    let xp1 = x[12];
    let xg = &x[13..17];
    let yp1 = x[17];
    let yg = &x[18..22];
    let mut ratio = 1.0; // prod(Ng_j / Np_j) over previous stages
    (0..4)
        .map(|i| {
            let pinion_teeth = teeth[2 * i];
            let gear_teeth = teeth[2 * i + 1];
            let (px, py) = if i == 0 {
                (xp1, yp1)
            } else {
                (xg[i - 1], yg[i - 1])
            };
            let center_distance = ((yg[i] - py).powi(2) + (xg[i] - px).powi(2)).sqrt();
            let torque_factor = 366_000.0 / (PI * OMEGA_IN) * ratio;
            ratio *= gear_teeth / pinion_teeth;
            Stage {
                pinion_teeth,
                gear_teeth,
                width: widths[i],
                center_distance,
                torque_factor,
            }
        })
        .collect()
}

fn evaluate(x: &[f64]) -> RawEvaluation {
    let st = stages(x);
    let xp1 = x[12];
    let xg = &x[13..17];
    let yp1 = x[17];
    let yg = &x[18..22];

    let objective = PI / 1000.0
        * st.iter()
            .map(|s| {
                s.width * s.center_distance * s.center_distance
                    * (s.pinion_teeth * s.pinion_teeth + s.gear_teeth * s.gear_teeth)
                    / (s.pinion_teeth + s.gear_teeth).powi(2)
            })
            .sum::<f64>();

    let mut g: Vec<f64> = Vec::with_capacity(86);
    let sin_phi = PRESSURE_ANGLE.sin();
    let cos_phi = PRESSURE_ANGLE.cos();

    // g1..4: bending strength per stage
    let bending_limit = SIGMA_BENDING * J_FACTOR / (0.0167 * POWER * K_OVERLOAD * K_MOUNTING);
    for s in &st {
        let sum = s.pinion_teeth + s.gear_teeth;
        let bracket = sum * sum / (4.0 * s.width * s.center_distance.powi(2) * s.pinion_teeth);
        let drive = s.torque_factor + 2.0 * s.center_distance * s.pinion_teeth / sum;
        g.push(drive * bracket - bending_limit);
    }
    // g5..8: pitting strength per stage
    let contact_limit = (SIGMA_CONTACT / ELASTIC_COEFF).powi(2) * sin_phi * cos_phi
        / (0.0334 * POWER * K_OVERLOAD * K_MOUNTING);
    for s in &st {
        let sum = s.pinion_teeth + s.gear_teeth;
        let bracket = sum.powi(3)
            / (4.0 * s.width * s.center_distance.powi(2) * s.gear_teeth * s.pinion_teeth.powi(2));
        let drive = s.torque_factor + 2.0 * s.center_distance * s.pinion_teeth / sum;
        g.push(drive * bracket - contact_limit);
    }
    // g9..12: contact-ratio requirement
    for s in &st {
        let np = s.pinion_teeth;
        let ng = s.gear_teeth;
        let gear_term = ng * (sin_phi * sin_phi / 4.0 + 1.0 / ng + 1.0 / (ng * ng)).sqrt();
        let pinion_term = np * (sin_phi * sin_phi / 4.0 - 1.0 / np + 1.0 / (np * np)).sqrt();
        g.push(gear_term - pinion_term + (np + ng) * sin_phi / 2.0 + CR_MIN * PI * cos_phi);
    }
    // g13..16 / g17..20: pinion and gear pitch diameters above the floor
    for s in &st {
        g.push(D_MIN - 2.0 * s.center_distance * s.pinion_teeth / (s.pinion_teeth + s.gear_teeth));
    }
    for s in &st {
        g.push(D_MIN - 2.0 * s.center_distance * s.gear_teeth / (s.pinion_teeth + s.gear_teeth));
    }

    let pinion_extent =
        |s: &Stage| (s.pinion_teeth + 2.0) * s.center_distance / (s.pinion_teeth + s.gear_teeth);
    let gear_extent =
        |s: &Stage| (s.gear_teeth + 2.0) * s.center_distance / (s.pinion_teeth + s.gear_teeth);

    // g21..28: pinion fit along x
    g.push(xp1 + pinion_extent(&st[0]) - L_MAX);
    for i in 1..4 {
        g.push(pinion_extent(&st[i]) - L_MAX + xg[i - 1]);
    }
    g.push(pinion_extent(&st[0]) - xp1);
    for i in 1..4 {
        g.push(pinion_extent(&st[i]) - xg[i - 1]);
    }
    // g29..36: pinion fit along y
    g.push(yp1 + pinion_extent(&st[0]) - L_MAX);
    for i in 1..4 {
        g.push(pinion_extent(&st[i]) - L_MAX + yg[i - 1]);
    }
    g.push(pinion_extent(&st[0]) - yp1);
    for i in 1..4 {
        g.push(pinion_extent(&st[i]) - yg[i - 1]);
    }
    // g37..44: gear fit along x
    for i in 0..4 {
        g.push(gear_extent(&st[i]) - L_MAX + xg[i]);
    }
    for i in 0..4 {
        g.push(gear_extent(&st[i]) - xg[i]);
    }
    // g45..52: gear fit along y
    for i in 0..4 {
        g.push(gear_extent(&st[i]) - L_MAX + yg[i]);
    }
    for i in 0..4 {
        g.push(gear_extent(&st[i]) - yg[i]);
    }

    // g53..84: valid (width, center distance, tooth sum) combinations,
    // expressed through sign products over the width breakpoints
    let width_families: [(f64, [f64; 3], f64); 8] = [
        (1.0, [8.255, 5.715, 12.7], -0.945),
        (-1.0, [8.255, 3.175, 12.7], 0.646),
        (-1.0, [5.715, 3.175, 12.7], 0.504),
        (-1.0, [5.715, 3.175, 8.255], 0.0),
        (-1.0, [8.255, 5.715, 12.7], 1.812),
        (1.0, [8.255, 3.175, 12.7], -0.945),
        (-1.0, [5.715, 3.175, 12.7], 0.646),
        (1.0, [5.715, 3.175, 8.255], -0.504),
    ];
    for (tooth_sign, breaks, c_coeff) in width_families {
        for s in &st {
            let b = s.width;
            let poly = (b - breaks[0]) * (b - breaks[1]) * (b - breaks[2]);
            let sum = s.pinion_teeth + s.gear_teeth;
            g.push(tooth_sign * sum * poly + c_coeff * s.center_distance * poly);
        }
    }

    // g85..86: overall output speed inside [245, 255] rpm
    let ratio: f64 = st.iter().map(|s| s.pinion_teeth / s.gear_teeth).product();
    let output_speed = OMEGA_IN * ratio;
    g.push(OMEGA_MIN - output_speed);
    g.push(output_speed - OMEGA_MAX);

    RawEvaluation {
        objective,
        inequalities: g,
        equalities: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engineering::{constrained, ProblemId};
    use crate::rng::seeded_rng;

    /// Independent transcription of the same constraint set, written
    /// directly from the printed families without the Stage abstraction.
    fn reference_constraints(x: &[f64]) -> Vec<f64> {
        let np = [x[0], x[2], x[4], x[6]];
        let ng = [x[1], x[3], x[5], x[7]];
        let b = [x[8], x[9], x[10], x[11]];
        let xp1 = x[12];
        let xg = [x[13], x[14], x[15], x[16]];
        let yp1 = x[17];
        let yg = [x[18], x[19], x[20], x[21]];
        let phi = 120.0_f64.to_radians();

        let mut c = [0.0; 4];
        for i in 0..4 {
            let (px, py) = if i == 0 {
                (xp1, yp1)
            } else {
                (xg[i - 1], yg[i - 1])
            };
            c[i] = ((yg[i] - py).powi(2) + (xg[i] - px).powi(2)).sqrt();
        }
        let mut speed_prefix = [0.0; 4];
        for i in 0..4 {
            let mut v = 366000.0 / (PI * 5000.0);
            for j in 0..i {
                v *= ng[j] / np[j];
            }
            speed_prefix[i] = v;
        }

        let mut g = Vec::with_capacity(86);
        for i in 0..4 {
            let s = np[i] + ng[i];
            let br = s * s / (4.0 * b[i] * c[i] * c[i] * np[i]);
            g.push(
                speed_prefix[i] * br + (2.0 * c[i] * np[i] / s) * br
                    - 2090.0 * 0.2 / (0.0167 * 55.9 * 1.5 * 1.6),
            );
        }
        for i in 0..4 {
            let s = np[i] + ng[i];
            let br = s * s * s / (4.0 * b[i] * c[i] * c[i] * ng[i] * np[i] * np[i]);
            g.push(
                speed_prefix[i] * br + (2.0 * c[i] * np[i] / s) * br
                    - (3290.0 / 464.0_f64).powi(2) * (phi.sin() * phi.cos())
                        / (0.0334 * 55.9 * 1.5 * 1.6),
            );
        }
        for i in 0..4 {
            g.push(
                ng[i] * ((phi.sin().powi(2)) / 4.0 + 1.0 / ng[i] + (1.0 / ng[i]).powi(2)).sqrt()
                    - np[i]
                        * ((phi.sin().powi(2)) / 4.0 - 1.0 / np[i] + (1.0 / np[i]).powi(2)).sqrt()
                    + (np[i] + ng[i]) * phi.sin() / 2.0
                    + 1.4 * PI * phi.cos(),
            );
        }
        for i in 0..4 {
            g.push(25.0 - 2.0 * c[i] * np[i] / (np[i] + ng[i]));
        }
        for i in 0..4 {
            g.push(25.0 - 2.0 * c[i] * ng[i] / (np[i] + ng[i]));
        }
        let pe = |i: usize| (np[i] + 2.0) * c[i] / (np[i] + ng[i]);
        let ge = |i: usize| (ng[i] + 2.0) * c[i] / (np[i] + ng[i]);
        g.push(xp1 + pe(0) - 127.0);
        g.push(pe(1) - 127.0 + xg[0]);
        g.push(pe(2) - 127.0 + xg[1]);
        g.push(pe(3) - 127.0 + xg[2]);
        g.push(pe(0) - xp1);
        g.push(pe(1) - xg[0]);
        g.push(pe(2) - xg[1]);
        g.push(pe(3) - xg[2]);
        g.push(yp1 + pe(0) - 127.0);
        g.push(pe(1) - 127.0 + yg[0]);
        g.push(pe(2) - 127.0 + yg[1]);
        g.push(pe(3) - 127.0 + yg[2]);
        g.push(pe(0) - yp1);
        g.push(pe(1) - yg[0]);
        g.push(pe(2) - yg[1]);
        g.push(pe(3) - yg[2]);
        for i in 0..4 {
            g.push(ge(i) - 127.0 + xg[i]);
        }
        for i in 0..4 {
            g.push(ge(i) - xg[i]);
        }
        for i in 0..4 {
            g.push(ge(i) - 127.0 + yg[i]);
        }
        for i in 0..4 {
            g.push(ge(i) - yg[i]);
        }
        for i in 0..4 {
            let f = (b[i] - 8.255) * (b[i] - 5.715) * (b[i] - 12.7);
            g.push((np[i] + ng[i]) * f - 0.945 * c[i] * f);
        }
        for i in 0..4 {
            let f = (b[i] - 8.255) * (b[i] - 3.175) * (b[i] - 12.7);
            g.push((-np[i] - ng[i]) * f + 0.646 * c[i] * f);
        }
        for i in 0..4 {
            let f = (b[i] - 5.715) * (b[i] - 3.175) * (b[i] - 12.7);
            g.push((-np[i] - ng[i]) * f + 0.504 * c[i] * f);
        }
        for i in 0..4 {
            let f = (b[i] - 5.715) * (b[i] - 3.175) * (b[i] - 8.255);
            g.push((-ng[i] - np[i]) * f);
        }
        for i in 0..4 {
            let f = (b[i] - 8.255) * (b[i] - 5.715) * (b[i] - 12.7);
            g.push((-ng[i] - np[i]) * f + 1.812 * c[i] * f);
        }
        for i in 0..4 {
            let f = (b[i] - 8.255) * (b[i] - 3.175) * (b[i] - 12.7);
            g.push((np[i] + ng[i]) * f - 0.945 * c[i] * f);
        }
        for i in 0..4 {
            let f = (b[i] - 5.715) * (b[i] - 3.175) * (b[i] - 12.7);
            g.push((-np[i] - ng[i]) * f + 0.646 * c[i] * f);
        }
        for i in 0..4 {
            let f = (b[i] - 5.715) * (b[i] - 3.175) * (b[i] - 8.255);
            g.push((np[i] + ng[i]) * f - 0.504 * c[i] * f);
        }
        let mut ratio = 1.0;
        for i in 0..4 {
            ratio *= np[i] / ng[i];
        }
        g.push(245.0 - 5000.0 * ratio);
        g.push(5000.0 * ratio - 255.0);
        g
    }

    #[test]
    fn dual_implementation_oracle_on_random_points() {
        let p = constrained(ProblemId::R9);
        let mut rng = seeded_rng(424242);
        for case in 0..500 {
            let raw: Vec<f64> = p
                .bounds
                .lower()
                .iter()
                .zip(p.bounds.upper())
                .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
                .collect();
            let snapped = p.snap(&raw);
            // coincident shaft positions give zero center distances whose
            // 0 * inf terms depend on factoring; both transcriptions mark
            // such geometry unusable, so value comparison is skipped
            let degenerate = (0..4).any(|i| {
                let (px, py) = if i == 0 {
                    (snapped[12], snapped[17])
                } else {
                    (snapped[13 + i - 1], snapped[18 + i - 1])
                };
                snapped[13 + i] == px && snapped[18 + i] == py
            });
            if degenerate {
                continue;
            }
            let eval = p.evaluate_raw(&snapped).unwrap();
            let reference = reference_constraints(&snapped);
            assert_eq!(eval.inequalities.len(), reference.len());
            for (k, (a, b)) in eval.inequalities.iter().zip(&reference).enumerate() {
                let scale = 1.0 + a.abs().max(b.abs());
                assert!(
                    (a - b).abs() / scale < 1e-10,
                    "case {case}: g{} differs: {a} vs {b}",
                    k + 1
                );
            }
        }
    }

    #[test]
    fn objective_matches_direct_formula() {
        let p = constrained(ProblemId::R9);
        let mut rng = seeded_rng(7);
        for _ in 0..50 {
            let raw: Vec<f64> = p
                .bounds
                .lower()
                .iter()
                .zip(p.bounds.upper())
                .map(|(&lo, &hi)| rng.uniform_in(lo, hi))
                .collect();
            let snapped = p.snap(&raw);
            let eval = p.evaluate_raw(&snapped).unwrap();
            // direct transcription of the weight formula
            let np = [snapped[0], snapped[2], snapped[4], snapped[6]];
            let ng = [snapped[1], snapped[3], snapped[5], snapped[7]];
            let b = [snapped[8], snapped[9], snapped[10], snapped[11]];
            let xp1 = snapped[12];
            let yp1 = snapped[17];
            let mut expected = 0.0;
            for i in 0..4 {
                let (px, py) = if i == 0 {
                    (xp1, yp1)
                } else {
                    (snapped[13 + i - 1], snapped[18 + i - 1])
                };
                let c2 = (snapped[18 + i] - py).powi(2) + (snapped[13 + i] - px).powi(2);
                expected += b[i] * c2 * (np[i] * np[i] + ng[i] * ng[i])
                    / (np[i] + ng[i]).powi(2);
            }
            expected *= PI / 1000.0;
            let scale = 1.0 + expected.abs();
            assert!((eval.objective - expected).abs() / scale < 1e-12);
        }
    }

    #[test]
    fn snapping_lands_on_discrete_sets() {
        let p = constrained(ProblemId::R9);
        let mut probe = vec![21.5; 8];
        probe.extend([3.2, 6.0, 9.0, 12.0]);
        probe.extend([14.0, 40.0, 60.0, 80.0, 100.0, 13.0, 26.0, 51.0, 77.0, 110.0]);
        let snapped = p.snap(&probe);
        for &teeth in &snapped[..8] {
            assert_eq!(teeth.fract(), 0.0);
        }
        for &width in &snapped[8..12] {
            assert!(WIDTHS.contains(&width));
        }
        for &pos in &snapped[12..] {
            assert!(POSITIONS.contains(&pos));
        }
    }
}
