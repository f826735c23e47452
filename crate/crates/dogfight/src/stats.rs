//! Nonparametric comparison machinery: two-sided rank-sum tests with exact
//! small-sample enumeration, Friedman mean ranks, Kruskal-Wallis mean ranks,
//! and per-algorithm summary rows. Infeasible results enter as +infinity so
//! they take the worst ranks without shrinking the samples.

use std::fmt;

/// Significance mark against a reference sample at the 5% level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    /// Reference significantly better (lower objective).
    Better,
    /// Reference significantly worse.
    Worse,
    /// No significant difference.
    Similar,
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mark::Better => "+",
            Mark::Worse => "-",
            Mark::Similar => "≈",
        };
        f.write_str(s)
    }
}

/// Midranks of the pooled values (1-based, ties averaged).
fn midranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[order[j]].total_cmp(&values[order[i]]) == std::cmp::Ordering::Equal {
            j += 1;
        }
        let shared = (i + j + 1) as f64 / 2.0;
        for k in i..j {
            ranks[order[k]] = shared;
        }
        i = j;
    }
    ranks
}

/// Complementary error function, rational approximation with fractional
/// error below 1.2e-7 (sufficient for p-values on the normal branch).
fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let poly = -z * z - 1.26551223
        + t * (1.00002368
            + t * (0.37409196
                + t * (0.09678418
                    + t * (-0.18628806
                        + t * (0.27886807
                            + t * (-1.13520398
                                + t * (1.48851587 + t * (-0.82215223 + t * 0.17087277))))))));
    let ans = t * poly.exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}

fn normal_sf(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

/// Exact two-sided p for the rank sum of the first `n` entries of the pooled
/// doubled-midrank multiset, computed by subset-sum counting.
fn exact_rank_sum_p(doubled_ranks: &[u64], n: usize, observed: u64) -> f64 {
    let max_sum: u64 = doubled_ranks.iter().sum();
    // count[k][s] = number of k-subsets with doubled rank sum s
    let mut count = vec![vec![0.0_f64; (max_sum + 1) as usize]; n + 1];
    count[0][0] = 1.0;
    for &r in doubled_ranks {
        for k in (1..=n).rev() {
            for s in (r..=max_sum).rev() {
                let prev = count[k - 1][(s - r) as usize];
                if prev > 0.0 {
                    count[k][s as usize] += prev;
                }
            }
        }
    }
    let distribution = &count[n];
    let all: f64 = distribution.iter().sum();
    let lower: f64 = distribution[..=(observed as usize)].iter().sum();
    let upper: f64 = distribution[(observed as usize)..].iter().sum();
    (2.0 * (lower.min(upper)) / all).min(1.0)
}

/// Two-sided Mann-Whitney/Wilcoxon rank-sum test with midrank tie handling.
///
/// Exact enumeration over rank assignments when `min(n, m) <= 8`, otherwise
/// the normal approximation with tie-corrected variance and continuity
/// correction. The mark reads from the perspective of `a` as the reference:
/// `+` when `a` is significantly better (lower values) at the 5% level.
pub fn rank_sum_test(a: &[f64], b: &[f64]) -> (f64, Mark) {
    assert!(!a.is_empty() && !b.is_empty(), "samples must be non-empty");
    let n = a.len();
    let m = b.len();
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let first = pooled[0];
    if pooled
        .iter()
        .all(|&v| v.total_cmp(&first) == std::cmp::Ordering::Equal)
    {
        return (1.0, Mark::Similar);
    }
    let ranks = midranks(&pooled);
    let w_a: f64 = ranks[..n].iter().sum();
    let w_b: f64 = ranks[n..].iter().sum();

    let p = if n.min(m) <= 8 {
        let doubled: Vec<u64> = ranks.iter().map(|&r| (2.0 * r).round() as u64).collect();
        // enumerate subsets of the smaller side; both sides give the same
        // two-sided p because size-n subsets pair with their complements
        let (k, observed) = if n <= m {
            (n, (2.0 * w_a).round() as u64)
        } else {
            (m, (2.0 * w_b).round() as u64)
        };
        exact_rank_sum_p(&doubled, k, observed)
    } else {
        let nn = (n + m) as f64;
        let u = w_a - (n * (n + 1)) as f64 / 2.0;
        let mean = (n * m) as f64 / 2.0;
        // tie correction over pooled value groups
        let mut sorted = pooled.clone();
        sorted.sort_by(f64::total_cmp);
        let mut tie_term = 0.0;
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i + 1;
            while j < sorted.len()
                && sorted[j].total_cmp(&sorted[i]) == std::cmp::Ordering::Equal
            {
                j += 1;
            }
            let t = (j - i) as f64;
            tie_term += t * t * t - t;
            i = j;
        }
        let variance =
            (n * m) as f64 / 12.0 * ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
        if variance <= 0.0 {
            return (1.0, Mark::Similar);
        }
        let z = ((u - mean).abs() - 0.5).max(0.0) / variance.sqrt();
        (2.0 * normal_sf(z)).min(1.0)
    };

    let mark = if p < 0.05 {
        if w_a / (n as f64) < w_b / (m as f64) {
            Mark::Better
        } else {
            Mark::Worse
        }
    } else {
        Mark::Similar
    };
    (p, mark)
}

/// Paired Wilcoxon signed-rank variant (two-sided). Zero differences are
/// dropped; exact sign enumeration for up to 16 non-zero pairs, normal
/// approximation with tie correction and continuity correction above that.
pub fn signed_rank_test(a: &[f64], b: &[f64]) -> (f64, Mark) {
    assert_eq!(a.len(), b.len(), "signed-rank test needs paired samples");
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.is_empty() {
        return (1.0, Mark::Similar);
    }
    let n = diffs.len();
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = midranks(&abs);
    let w_plus: f64 = ranks
        .iter()
        .zip(&diffs)
        .filter(|(_, &d)| d > 0.0)
        .map(|(&r, _)| r)
        .sum();
    let p = if n <= 16 {
        let doubled: Vec<u64> = ranks.iter().map(|&r| (2.0 * r).round() as u64).collect();
        let total: u64 = doubled.iter().sum();
        let mut count = vec![0.0_f64; (total + 1) as usize];
        count[0] = 1.0;
        for &r in &doubled {
            for s in (r..=total).rev() {
                let prev = count[(s - r) as usize];
                if prev > 0.0 {
                    count[s as usize] += prev;
                }
            }
        }
        let observed = (2.0 * w_plus).round() as usize;
        let all: f64 = count.iter().sum();
        let lower: f64 = count[..=observed].iter().sum();
        let upper: f64 = count[observed..].iter().sum();
        (2.0 * lower.min(upper) / all).min(1.0)
    } else {
        let nf = n as f64;
        let mean = nf * (nf + 1.0) / 4.0;
        let mut variance = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0;
        let mut sorted = abs.clone();
        sorted.sort_by(f64::total_cmp);
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i + 1;
            while j < sorted.len()
                && sorted[j].total_cmp(&sorted[i]) == std::cmp::Ordering::Equal
            {
                j += 1;
            }
            let t = (j - i) as f64;
            variance -= t * (t * t - 1.0) / 48.0;
            i = j;
        }
        if variance <= 0.0 {
            return (1.0, Mark::Similar);
        }
        let z = ((w_plus - mean).abs() - 0.5).max(0.0) / variance.sqrt();
        (2.0 * normal_sf(z)).min(1.0)
    };
    let mark = if p < 0.05 {
        // positive differences mean a is larger, i.e. worse for minimization
        if w_plus < ranks.iter().sum::<f64>() / 2.0 {
            Mark::Better
        } else {
            Mark::Worse
        }
    } else {
        Mark::Similar
    };
    (p, mark)
}

/// Per-block midranks averaged across blocks, plus the ordinal final rank.
///
/// `matrix[block][algorithm]`; rank 1 is best (lowest value).
pub fn friedman_ranks(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<usize>) {
    assert!(!matrix.is_empty(), "need at least one block");
    let k = matrix[0].len();
    assert!(k >= 2, "need at least two algorithms");
    let mut sums = vec![0.0; k];
    for row in matrix {
        assert_eq!(row.len(), k, "ragged matrix");
        for (s, r) in sums.iter_mut().zip(midranks(row)) {
            *s += r;
        }
    }
    let fmr: Vec<f64> = sums.iter().map(|s| s / matrix.len() as f64).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| fmr[a].total_cmp(&fmr[b]).then(a.cmp(&b)));
    let mut final_rank = vec![0; k];
    for (position, &algorithm) in order.iter().enumerate() {
        final_rank[algorithm] = position + 1;
    }
    (fmr, final_rank)
}

/// Pools all samples, assigns midranks, and returns each sample's mean rank.
pub fn kruskal_mean_ranks(samples: &[Vec<f64>]) -> Vec<f64> {
    assert!(samples.len() >= 2, "need at least two samples");
    assert!(samples.iter().all(|s| !s.is_empty()), "empty sample");
    let pooled: Vec<f64> = samples.iter().flatten().copied().collect();
    let ranks = midranks(&pooled);
    let mut out = Vec::with_capacity(samples.len());
    let mut offset = 0;
    for sample in samples {
        let sum: f64 = ranks[offset..offset + sample.len()].iter().sum();
        out.push(sum / sample.len() as f64);
        offset += sample.len();
    }
    out
}

/// Mean/Std/Best over feasible final values plus the feasible fraction.
/// All fields absent when no run is feasible.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub best: Option<f64>,
    pub success: f64,
}

pub fn summarize(runs: &[crate::problem::RunRecord]) -> Summary {
    assert!(!runs.is_empty(), "summarize needs at least one run");
    summarize_values(
        &runs
            .iter()
            .map(|r| (r.best_value, r.feasible))
            .collect::<Vec<_>>(),
    )
}

/// As [`summarize`] over raw `(value, feasible)` pairs.
pub fn summarize_values(results: &[(f64, bool)]) -> Summary {
    assert!(!results.is_empty());
    let feasible: Vec<f64> = results
        .iter()
        .filter(|(_, ok)| *ok)
        .map(|&(v, _)| v)
        .collect();
    let success = feasible.len() as f64 / results.len() as f64;
    if feasible.is_empty() {
        return Summary {
            mean: None,
            std: None,
            best: None,
            success,
        };
    }
    let n = feasible.len() as f64;
    let mean = feasible.iter().sum::<f64>() / n;
    let std = if feasible.len() == 1 {
        0.0 // degenerate single-run sample reported as zero spread
    } else {
        (feasible.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    let best = feasible.iter().copied().fold(f64::INFINITY, f64::min);
    Summary {
        mean: Some(mean),
        std: Some(std),
        best: Some(best),
        success,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_are_similar() {
        let a = [1.0, 2.0, 3.0];
        let (p, mark) = rank_sum_test(&a, &a);
        assert_eq!(p, 1.0);
        assert_eq!(mark, Mark::Similar);
    }

    #[test]
    fn fully_separated_three_vs_three() {
        let (p, mark) = rank_sum_test(&[1.0, 2.0, 3.0], &[10.0, 11.0, 12.0]);
        assert!((p - 0.1).abs() < 1e-12, "p = {p}");
        assert_eq!(mark, Mark::Similar); // 0.1 >= 0.05
    }

    #[test]
    fn fully_separated_four_vs_four() {
        let (p, mark) = rank_sum_test(&[1.0, 2.0, 3.0, 4.0], &[5.0, 6.0, 7.0, 8.0]);
        assert!((p - 2.0 / 70.0).abs() < 1e-12, "p = {p}");
        assert_eq!(mark, Mark::Better);
    }

    #[test]
    fn swap_symmetry_flips_mark() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [3.5, 5.0, 6.0, 7.0];
        let (p1, m1) = rank_sum_test(&a, &b);
        let (p2, m2) = rank_sum_test(&b, &a);
        assert!((p1 - p2).abs() < 1e-12);
        match (m1, m2) {
            (Mark::Better, Mark::Worse) | (Mark::Worse, Mark::Better) | (Mark::Similar, Mark::Similar) => {}
            other => panic!("inconsistent marks {other:?}"),
        }
    }

    #[test]
    fn normal_branch_detects_shift() {
        let a: Vec<f64> = (0..40).map(|i| i as f64 * 0.1).collect();
        let b: Vec<f64> = (0..40).map(|i| i as f64 * 0.1 + 5.0).collect();
        let (p, mark) = rank_sum_test(&a, &b);
        assert!(p < 1e-6);
        assert_eq!(mark, Mark::Better);
    }

    #[test]
    fn infinities_take_worst_ranks() {
        let a = [1.0, 2.0, 3.0, 4.0];
        let b = [f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY];
        let (p, mark) = rank_sum_test(&a, &b);
        assert!((p - 2.0 / 70.0).abs() < 1e-12);
        assert_eq!(mark, Mark::Better);
    }

    #[test]
    fn friedman_single_row() {
        let (fmr, rank) = friedman_ranks(&[vec![1.0, 2.0, 3.0]]);
        assert_eq!(fmr, vec![1.0, 2.0, 3.0]);
        assert_eq!(rank, vec![1, 2, 3]);
    }

    #[test]
    fn friedman_reversed_rows_tie() {
        let (fmr, _) = friedman_ranks(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert_eq!(fmr, vec![1.5, 1.5]);
    }

    #[test]
    fn friedman_midranks_with_tie() {
        let (fmr, rank) = friedman_ranks(&[vec![5.0, 5.0, 9.0]]);
        assert_eq!(fmr, vec![1.5, 1.5, 3.0]);
        assert_eq!(rank, vec![1, 2, 3]);
    }

    #[test]
    fn friedman_average_is_center() {
        // FMR values across algorithms always average to (k+1)/2
        let matrix = vec![
            vec![3.0, 1.0, 2.0, 5.0],
            vec![1.0, 1.0, 4.0, 0.5],
            vec![9.0, 2.0, 2.0, 2.0],
        ];
        let (fmr, _) = friedman_ranks(&matrix);
        let avg: f64 = fmr.iter().sum::<f64>() / fmr.len() as f64;
        assert!((avg - 2.5).abs() < 1e-12);
    }

    #[test]
    fn kruskal_examples() {
        assert_eq!(
            kruskal_mean_ranks(&[vec![1.0, 2.0], vec![3.0, 4.0]]),
            vec![1.5, 3.5]
        );
        assert_eq!(
            kruskal_mean_ranks(&[vec![5.0], vec![5.0]]),
            vec![1.5, 1.5]
        );
        assert_eq!(
            kruskal_mean_ranks(&[vec![1.0, 3.0], vec![2.0, 4.0]]),
            vec![2.0, 3.0]
        );
    }

    #[test]
    fn summary_basics() {
        let s = summarize_values(&[(1.0, true), (2.0, true), (3.0, true)]);
        assert_eq!(s.mean, Some(2.0));
        assert_eq!(s.std, Some(1.0));
        assert_eq!(s.best, Some(1.0));
        assert_eq!(s.success, 1.0);
    }

    #[test]
    fn summary_single_run_std_zero() {
        let s = summarize_values(&[(4.0, true)]);
        assert_eq!(s.std, Some(0.0));
    }

    #[test]
    fn summary_all_infeasible_absent() {
        let s = summarize_values(&[(1.0, false), (2.0, false)]);
        assert_eq!(s.mean, None);
        assert_eq!(s.best, None);
        assert_eq!(s.success, 0.0);
    }

    #[test]
    fn signed_rank_detects_paired_shift() {
        let a: Vec<f64> = (0..20).map(|i| i as f64).collect();
        let b: Vec<f64> = (0..20).map(|i| i as f64 + 2.0).collect();
        let (p, mark) = signed_rank_test(&a, &b);
        assert!(p < 0.01);
        assert_eq!(mark, Mark::Better);
    }

    #[test]
    fn signed_rank_identical_pairs() {
        let a = [1.0, 2.0, 3.0];
        let (p, mark) = signed_rank_test(&a, &a);
        assert_eq!(p, 1.0);
        assert_eq!(mark, Mark::Similar);
    }
}
