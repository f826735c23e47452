//! Comparison-report assembly and rendering: per-algorithm summary rows,
//! pairwise rank-sum marks against the first-listed algorithm, Kruskal-Wallis
//! mean ranks, and Friedman mean ranks with final ranking.

use std::fmt::Write as _;

use crate::stats::{self, Mark, Summary};

use super::csvio::fmt_f64;

/// One algorithm's results on one problem: `(final value, feasible)` per run.
#[derive(Clone, Debug)]
pub struct AlgorithmResults {
    pub name: String,
    pub outcomes: Vec<(f64, bool)>,
}

impl AlgorithmResults {
    /// Final values with infeasible runs encoded as +infinity.
    fn encoded(&self) -> Vec<f64> {
        self.outcomes
            .iter()
            .map(|&(v, ok)| if ok { v } else { f64::INFINITY })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ProblemReport {
    pub problem: String,
    pub algorithms: Vec<String>,
    pub summaries: Vec<Summary>,
    /// `(p, mark)` against the first-listed algorithm; `None` at index 0.
    pub rank_sum: Vec<Option<(f64, Mark)>>,
    pub kruskal: Vec<f64>,
    /// Friedman over runs as blocks.
    pub fmr: Vec<f64>,
    pub final_rank: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct StatReport {
    pub problems: Vec<ProblemReport>,
    /// Friedman across problems on mean values, when several problems exist.
    pub overall_fmr: Option<(Vec<f64>, Vec<usize>)>,
}

/// Builds the full report; `results[problem][algorithm]`.
pub fn build_report(
    problem_names: &[String],
    results: &[Vec<AlgorithmResults>],
) -> StatReport {
    assert_eq!(problem_names.len(), results.len());
    let problems: Vec<ProblemReport> = problem_names
        .iter()
        .zip(results)
        .map(|(name, algos)| build_problem_report(name, algos))
        .collect();
    let overall_fmr = if problems.len() >= 2 {
        let k = results[0].len();
        let matrix: Vec<Vec<f64>> = results
            .iter()
            .map(|algos| {
                algos
                    .iter()
                    .map(|a| {
                        stats::summarize_values(&a.outcomes)
                            .mean
                            .unwrap_or(f64::INFINITY)
                    })
                    .collect()
            })
            .collect();
        assert!(matrix.iter().all(|row| row.len() == k));
        Some(stats::friedman_ranks(&matrix))
    } else {
        None
    };
    StatReport {
        problems,
        overall_fmr,
    }
}

fn build_problem_report(name: &str, algos: &[AlgorithmResults]) -> ProblemReport {
    assert!(algos.len() >= 2, "comparison needs at least two algorithms");
    let run_count = algos[0].outcomes.len();
    assert!(
        algos.iter().all(|a| a.outcomes.len() == run_count),
        "equal run counts per algorithm required"
    );
    let encoded: Vec<Vec<f64>> = algos.iter().map(|a| a.encoded()).collect();
    let summaries = algos
        .iter()
        .map(|a| stats::summarize_values(&a.outcomes))
        .collect();
    let reference = &encoded[0];
    let rank_sum: Vec<Option<(f64, Mark)>> = encoded
        .iter()
        .enumerate()
        .map(|(i, sample)| (i > 0).then(|| stats::rank_sum_test(reference, sample)))
        .collect();
    let kruskal = stats::kruskal_mean_ranks(&encoded);
    // Friedman with runs as blocks
    let matrix: Vec<Vec<f64>> = (0..run_count)
        .map(|r| encoded.iter().map(|sample| sample[r]).collect())
        .collect();
    let (fmr, final_rank) = stats::friedman_ranks(&matrix);
    ProblemReport {
        problem: name.to_string(),
        algorithms: algos.iter().map(|a| a.name.clone()).collect(),
        summaries,
        rank_sum,
        kruskal,
        fmr,
        final_rank,
    }
}

fn cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.8e}"),
        None => "NaN".to_string(),
    }
}

impl StatReport {
    /// Aligned plain-text tables: one metric per row, one algorithm per
    /// column, one block per problem.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.problems {
            let _ = writeln!(out, "== {} ==", p.problem);
            let width = 16usize.max(p.algorithms.iter().map(|a| a.len()).max().unwrap_or(0) + 2);
            let mut header = format!("{:<10}", "");
            for a in &p.algorithms {
                let _ = write!(header, "{a:>width$}");
            }
            let _ = writeln!(out, "{header}");
            let mut metric_row = |label: &str, cells: Vec<String>| {
                let mut row = format!("{label:<10}");
                for c in cells {
                    let _ = write!(row, "{c:>width$}");
                }
                let _ = writeln!(out, "{row}");
            };
            metric_row(
                "Mean",
                p.summaries.iter().map(|s| cell(s.mean)).collect(),
            );
            metric_row("Std", p.summaries.iter().map(|s| cell(s.std)).collect());
            metric_row(
                "Best",
                p.summaries.iter().map(|s| cell(s.best)).collect(),
            );
            metric_row(
                "Success",
                p.summaries.iter().map(|s| format!("{:.3}", s.success)).collect(),
            );
            metric_row(
                "Kruskal",
                p.kruskal.iter().map(|k| format!("{k:.4}")).collect(),
            );
            metric_row(
                "WSRT",
                p.rank_sum
                    .iter()
                    .map(|r| match r {
                        None => "(ref)".to_string(),
                        Some((pv, mark)) => format!("{pv:.2e}({mark})"),
                    })
                    .collect(),
            );
            metric_row("FMR", p.fmr.iter().map(|v| format!("{v:.4}")).collect());
            metric_row(
                "F-Rank",
                p.final_rank.iter().map(|r| r.to_string()).collect(),
            );
            let _ = writeln!(out);
        }
        if let Some((fmr, rank)) = &self.overall_fmr {
            let _ = writeln!(out, "== across problems ==");
            let algorithms = &self.problems[0].algorithms;
            for (i, a) in algorithms.iter().enumerate() {
                let _ = writeln!(out, "{a:<12} FMR {:.4}  F-Rank {}", fmr[i], rank[i]);
            }
        }
        out
    }

    /// Long-form CSV, one row per (problem, algorithm).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "problem,algorithm,mean,std,best,success,kruskal,p_vs_reference,mark,fmr,f_rank\n",
        );
        for p in &self.problems {
            for (i, a) in p.algorithms.iter().enumerate() {
                let s = &p.summaries[i];
                let (pv, mark) = match &p.rank_sum[i] {
                    None => ("".to_string(), "ref".to_string()),
                    Some((pv, mark)) => (fmt_f64(*pv), mark.to_string()),
                };
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    p.problem,
                    a,
                    s.mean.map(fmt_f64).unwrap_or_else(|| "NaN".into()),
                    s.std.map(fmt_f64).unwrap_or_else(|| "NaN".into()),
                    s.best.map(fmt_f64).unwrap_or_else(|| "NaN".into()),
                    fmt_f64(s.success),
                    fmt_f64(p.kruskal[i]),
                    pv,
                    mark,
                    fmt_f64(p.fmr[i]),
                    p.final_rank[i],
                );
            }
        }
        out
    }
}
