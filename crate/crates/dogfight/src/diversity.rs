//! Dimension-wise diversity measurement: per iteration, the mean absolute
//! deviation of the population from its per-dimension median, normalized by
//! the maximum over the run into exploration/exploitation percentages.

/// `(exploration_pct, exploitation_pct)` per iteration; each pair sums to 100.
#[derive(Clone, Debug)]
pub struct DiversityTrace {
    pub rows: Vec<(f64, f64)>,
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Population diversity of one `N x D` position matrix.
pub fn population_diversity(positions: &[Vec<f64>]) -> f64 {
    assert!(!positions.is_empty());
    let n = positions.len();
    let d = positions[0].len();
    let mut total = 0.0;
    let mut column = vec![0.0; n];
    for j in 0..d {
        for (i, row) in positions.iter().enumerate() {
            column[i] = row[j];
        }
        let med = median(&mut column.clone());
        let dev: f64 = (0..n).map(|i| (med - positions[i][j]).abs()).sum::<f64>() / n as f64;
        total += dev;
    }
    total / d as f64
}

/// Builds the exploration/exploitation trace from a recorded position
/// history (one `N x D` matrix per iteration).
pub fn diversity_trace(position_history: &[Vec<Vec<f64>>]) -> DiversityTrace {
    assert!(
        !position_history.is_empty(),
        "diversity_trace needs at least one recorded iteration"
    );
    let diversities: Vec<f64> = position_history
        .iter()
        .map(|m| population_diversity(m))
        .collect();
    let div_max = diversities.iter().copied().fold(0.0_f64, f64::max);
    let rows = diversities
        .iter()
        .map(|&div| {
            if div_max == 0.0 {
                (0.0, 100.0)
            } else {
                let exploration = 100.0 * div / div_max;
                let exploitation = 100.0 * (div - div_max).abs() / div_max;
                (exploration, exploitation)
            }
        })
        .collect();
    DiversityTrace { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    #[test]
    fn degenerate_swarm_is_pure_exploitation() {
        let spread = vec![vec![0.0, 0.0], vec![2.0, 2.0]];
        let collapsed = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let trace = diversity_trace(&[spread, collapsed]);
        assert_eq!(trace.rows[1], (0.0, 100.0));
    }

    #[test]
    fn max_diversity_iteration_is_pure_exploration() {
        let small = vec![vec![0.0], vec![1.0]];
        let large = vec![vec![-4.0], vec![4.0]];
        let trace = diversity_trace(&[small, large]);
        assert_eq!(trace.rows[1], (100.0, 0.0));
    }

    #[test]
    fn two_iteration_ratio_example() {
        // diversities 2 and 4 -> (50, 50) then (100, 0)
        let a = vec![vec![-2.0], vec![2.0]]; // median 0, mean |dev| = 2
        let b = vec![vec![-4.0], vec![4.0]]; // mean |dev| = 4
        let trace = diversity_trace(&[a, b]);
        assert!((trace.rows[0].0 - 50.0).abs() < 1e-12);
        assert!((trace.rows[0].1 - 50.0).abs() < 1e-12);
        assert_eq!(trace.rows[1], (100.0, 0.0));
    }

    #[test]
    fn rows_sum_to_hundred() {
        let mut rng = seeded_rng(19);
        let history: Vec<Vec<Vec<f64>>> = (0..20)
            .map(|_| {
                (0..10)
                    .map(|_| (0..3).map(|_| rng.uniform_in(-5.0, 5.0)).collect())
                    .collect()
            })
            .collect();
        let trace = diversity_trace(&history);
        for &(xpl, xpt) in &trace.rows {
            assert!((xpl + xpt - 100.0).abs() <= 1e-9);
            assert!((0.0..=100.0).contains(&xpl));
            assert!((0.0..=100.0).contains(&xpt));
        }
    }

    #[test]
    fn percentage_trace_is_scale_invariant() {
        let mut rng = seeded_rng(29);
        let history: Vec<Vec<Vec<f64>>> = (0..10)
            .map(|_| {
                (0..8)
                    .map(|_| (0..4).map(|_| rng.uniform_in(-3.0, 3.0)).collect())
                    .collect()
            })
            .collect();
        let scaled: Vec<Vec<Vec<f64>>> = history
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| row.iter().map(|&v| 7.0 * v).collect())
                    .collect()
            })
            .collect();
        let a = diversity_trace(&history);
        let b = diversity_trace(&scaled);
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            assert!((ra.0 - rb.0).abs() < 1e-9);
            assert!((ra.1 - rb.1).abs() < 1e-9);
        }
    }
}
