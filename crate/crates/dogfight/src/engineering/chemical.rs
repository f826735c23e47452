//! Industrial chemical process problems: alkylation unit operation and
//! process flow sheeting.

use std::sync::Arc;

use super::{ProblemParts, RawEvaluation, VarKind};
use crate::problem::Bounds;

/// R1: seven process variables, fourteen inequality constraints. The
/// objective maximizes profit, expressed here as minimization of its
/// negative.
pub(super) fn alkylation() -> ProblemParts {
    let bounds = Bounds::new(
        vec![1000.0, 0.0, 2000.0, 0.0, 0.0, 0.0, 0.0],
        vec![2000.0, 100.0, 4000.0, 100.0, 100.0, 20.0, 200.0],
    )
    .unwrap();
    let kinds = vec![VarKind::Continuous; 7];
    let eval = |x: &[f64]| -> RawEvaluation {
        let (x1, x2, x3, x4, x5, x6, x7) = (x[0], x[1], x[2], x[3], x[4], x[5], x[6]);
        let objective =
            -(0.035 * x1 * x6 + 1.715 * x1 + 10.0 * x2 + 4.0565 * x3 - 0.063 * x3 * x5);
        let inequalities = vec![
            0.0059553571 * x6 * x6 * x1 + 0.88392857 * x3 - 0.1175625 * x6 * x1 - x1,
            1.1088 * x1 + 0.1303533 * x1 * x6 - 0.0066033 * x1 * x6 * x6 - x3,
            6.66173269 * x6 * x6 - 56.596669 * x4 + 172.39878 * x5 - 191.20592 * x6 - 10000.0,
            1.08702 * x6 - 0.03762 * x6 * x6 + 0.32175 * x4 + 56.85075 - x5,
            0.006198 * x7 * x4 * x3 + 2462.3121 * x2 - 25.125634 * x2 * x4 - x3 * x4,
            161.18996 * x3 * x4 + 5000.0 * x2 * x4 - 489510.0 * x2 - x3 * x4 * x7,
            0.33 * x7 + 44.333333 - x5,
            0.022556 * x5 - 1.0 - 0.007595 * x7,
            0.00061 * x3 - 1.0 - 0.0005 * x1,
            0.819672 * x1 - x3 + 0.819672,
            24500.0 * x2 - 250.0 * x2 * x4 - x3 * x4,
            1020.1082 * x4 * x2 + 1.2244898 * x3 * x4 - 100000.0 * x2,
            6.25 * x1 * x6 + 6.25 * x1 - 7.625 * x3 - 100000.0,
            1.22 * x3 - x6 * x1 - x1 + 1.0,
        ];
        RawEvaluation {
            objective,
            inequalities,
            equalities: Vec::new(),
        }
    };
    (bounds, kinds, 14, 0, Arc::new(eval))
}

/// R2: three variables (one binary), three inequality constraints.
pub(super) fn process_flow_sheeting() -> ProblemParts {
    let bounds = Bounds::new(vec![0.2, -2.22554, 0.0], vec![1.0, -1.0, 1.0]).unwrap();
    const BINARY: [f64; 2] = [0.0, 1.0];
    let kinds = vec![
        VarKind::Continuous,
        VarKind::Continuous,
        VarKind::Values(&BINARY),
    ];
    let eval = |x: &[f64]| -> RawEvaluation {
        let (x1, x2, x3) = (x[0], x[1], x[2]);
        RawEvaluation {
            objective: -0.7 * x3 + 0.8 + 5.0 * (0.5 - x1).powi(2),
            inequalities: vec![
                -(x1 - 0.2).exp() - x2,
                x2 + 1.1 * x3 + 1.0,
                x1 - x3 - 0.2,
            ],
            equalities: Vec::new(),
        }
    };
    (bounds, kinds, 3, 0, Arc::new(eval))
}

#[cfg(test)]
mod tests {
    use crate::engineering::{constrained, ProblemId};

    #[test]
    fn alkylation_reported_best_reproduces() {
        let p = constrained(ProblemId::R1);
        let x = [
            2000.0, 0.0, 2576.38006, 0.0, 58.1606111, 1.25994095, 41.5998808,
        ];
        let eval = p.evaluate_raw(&x).unwrap();
        assert!(
            (eval.objective - (-4529.12)).abs() / 4529.12 < 1e-2,
            "objective {}",
            eval.objective
        );
        // active constraints wobble with the table's truncated digits
        assert!(eval.inequalities.iter().all(|&g| g <= 1e-4));
    }

    #[test]
    fn process_flow_reported_best_reproduces() {
        let p = constrained(ProblemId::R2);
        let x = [0.94193734, -2.1, 0.75209273];
        let eval = p.evaluate_raw(&x).unwrap();
        assert!(
            (eval.objective - 1.0765431).abs() < 1e-6,
            "objective {}",
            eval.objective
        );
        assert!(eval.inequalities.iter().all(|&g| g <= 1e-6));
    }
}
