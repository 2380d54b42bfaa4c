//! Summary statistics, sign table and rank-sum verdicts from result rows.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::runner::{write_csv, ResultRow};
use super::HarnessError;
use crate::analysis::{mean, sign_of_means, std_dev, wilcoxon_rank_sum, Direction, Sign};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub testcase: String,
    pub algo: String,
    pub instance: String,
    pub runs: usize,
    pub mean: f64,
    pub best: u64,
    pub std: f64,
    pub optimum: Option<u64>,
    /// `(mean - optimum) / optimum`, in percent.
    pub deviation_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub testcase: String,
    pub instance: String,
    pub mfcga_mean: f64,
    pub mfea_mean: f64,
    /// MFCGA relative to MFEA.
    pub sign: String,
    pub rank_sum: f64,
    pub p_value: f64,
    pub significant: bool,
    /// Algorithm with the lower mean rank, or `none`.
    pub lower_ranks: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub summary: Vec<SummaryRow>,
    /// Present only when both algorithms were run.
    pub comparison: Option<Vec<ComparisonRow>>,
}

type Key = (String, String);

/// Builds the report. Instance order follows first appearance in `rows`.
pub fn build_report(rows: &[ResultRow], optima: Option<&BTreeMap<String, u64>>) -> Result<Report, HarnessError> {
    if rows.is_empty() {
        return Err(HarnessError::EmptyResults);
    }
    let mut order: Vec<Key> = Vec::new();
    let mut samples: BTreeMap<(Key, String), Vec<f64>> = BTreeMap::new();
    let mut algos: Vec<String> = Vec::new();
    for r in rows {
        let key = (r.testcase.clone(), r.instance.clone());
        if !order.contains(&key) {
            order.push(key.clone());
        }
        if !algos.contains(&r.algo) {
            algos.push(r.algo.clone());
        }
        samples
            .entry((key, r.algo.clone()))
            .or_default()
            .push(r.best_cost as f64);
    }
    algos.sort();

    let mut summary = Vec::new();
    for algo in &algos {
        for key in &order {
            let Some(xs) = samples.get(&(key.clone(), algo.clone())) else {
                continue;
            };
            let m = mean(xs);
            let optimum = optima.and_then(|o| o.get(&key.1).copied());
            summary.push(SummaryRow {
                testcase: key.0.clone(),
                algo: algo.clone(),
                instance: key.1.clone(),
                runs: xs.len(),
                mean: m,
                best: xs.iter().fold(f64::INFINITY, |a, &b| a.min(b)) as u64,
                std: std_dev(xs),
                optimum,
                deviation_pct: optimum.map(|o| 100.0 * (m - o as f64) / o as f64),
            });
        }
    }

    let both = algos.iter().any(|a| a == "mfcga") && algos.iter().any(|a| a == "mfea");
    let comparison = if both {
        let mut out = Vec::new();
        for key in &order {
            let (Some(a), Some(b)) = (
                samples.get(&(key.clone(), "mfcga".to_string())),
                samples.get(&(key.clone(), "mfea".to_string())),
            ) else {
                continue;
            };
            if a.len() != b.len() {
                return Err(HarnessError::RunCountMismatch {
                    instance: key.1.clone(),
                    mfcga: a.len(),
                    mfea: b.len(),
                });
            }
            let v = wilcoxon_rank_sum(a, b)?;
            out.push(ComparisonRow {
                testcase: key.0.clone(),
                instance: key.1.clone(),
                mfcga_mean: mean(a),
                mfea_mean: mean(b),
                sign: sign_of_means(mean(a), mean(b)).as_str().to_string(),
                rank_sum: v.statistic,
                p_value: v.p_value,
                significant: v.significant,
                lower_ranks: match v.direction {
                    Direction::First => "mfcga",
                    Direction::Second => "mfea",
                    Direction::Neither => "none",
                }
                .to_string(),
            });
        }
        Some(out)
    } else {
        None
    };
    Ok(Report { summary, comparison })
}

fn sign_symbol(sign: &str) -> &'static str {
    match sign {
        s if s == Sign::Better.as_str() => "+",
        s if s == Sign::Worse.as_str() => "-",
        _ => "=",
    }
}

impl Report {
    /// Plain-text rendering for the terminal.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<8} {:<6} {:<10} {:>4} {:>9} {:>7} {:>8} {:>7} {:>8}",
            "testcase", "algo", "instance", "runs", "mean", "best", "std", "opt", "dev%"
        );
        for r in &self.summary {
            let _ = writeln!(
                out,
                "{:<8} {:<6} {:<10} {:>4} {:>9.1} {:>7} {:>8.2} {:>7} {:>8}",
                r.testcase,
                r.algo,
                r.instance,
                r.runs,
                r.mean,
                r.best,
                r.std,
                r.optimum.map_or("-".to_string(), |o| o.to_string()),
                r.deviation_pct.map_or("-".to_string(), |d| format!("{d:.2}")),
            );
        }
        if let Some(cmp) = &self.comparison {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:<8} {:<10} {:>9} {:>9} {:>4} {:>9} {:>5}",
                "testcase", "instance", "mfcga", "mfea", "sign", "p", "sig"
            );
            for c in cmp {
                let _ = writeln!(
                    out,
                    "{:<8} {:<10} {:>9.1} {:>9.1} {:>4} {:>9.4} {:>5}",
                    c.testcase,
                    c.instance,
                    c.mfcga_mean,
                    c.mfea_mean,
                    sign_symbol(&c.sign),
                    c.p_value,
                    if c.significant { "yes" } else { "no" },
                );
            }
            let mut per_tc: Vec<(String, String)> = Vec::new();
            for c in cmp {
                match per_tc.iter_mut().find(|(tc, _)| *tc == c.testcase) {
                    Some((_, s)) => s.push_str(sign_symbol(&c.sign)),
                    None => per_tc.push((c.testcase.clone(), sign_symbol(&c.sign).to_string())),
                }
            }
            let _ = writeln!(out);
            for (tc, signs) in per_tc {
                let _ = writeln!(out, "{tc:<8} {signs}");
            }
        }
        out
    }

    /// Writes `summary.csv` and, when available, `comparison.csv`.
    pub fn write_to(&self, out_dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
        std::fs::create_dir_all(out_dir).map_err(super::io_err(out_dir))?;
        let mut written = Vec::new();
        let path = out_dir.join("summary.csv");
        write_csv(&path, &self.summary)?;
        written.push(path);
        if let Some(cmp) = &self.comparison {
            let path = out_dir.join("comparison.csv");
            write_csv(&path, cmp)?;
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(algo: &str, run: usize, instance: &str, cost: u64) -> ResultRow {
        ResultRow {
            testcase: "TC_X".into(),
            algo: algo.into(),
            run,
            seed: run as u64,
            instance: instance.into(),
            best_cost: cost,
            evals: 100,
            wall_ms: 0,
        }
    }

    #[test]
    fn single_algorithm_has_no_comparison() {
        let rows: Vec<ResultRow> = (0..4).map(|r| row("mfcga", r, "A", 10 + r as u64)).collect();
        let rep = build_report(&rows, None).unwrap();
        assert!(rep.comparison.is_none());
        assert_eq!(rep.summary.len(), 1);
        assert_eq!(rep.summary[0].mean, 11.5);
        assert_eq!(rep.summary[0].best, 10);
        assert!(rep.render().contains("11.5"));
    }

    #[test]
    fn comparison_and_deviation() {
        let mut rows = Vec::new();
        for r in 0..5 {
            rows.push(row("mfcga", r, "A", 100 + r as u64));
            rows.push(row("mfea", r, "A", 200 + r as u64));
        }
        let optima = BTreeMap::from([("A".to_string(), 100u64)]);
        let rep = build_report(&rows, Some(&optima)).unwrap();
        let cmp = rep.comparison.as_ref().unwrap();
        assert_eq!(cmp[0].sign, "better");
        assert!(cmp[0].significant);
        assert_eq!(cmp[0].lower_ranks, "mfcga");
        let s = rep.summary.iter().find(|s| s.algo == "mfcga").unwrap();
        assert!((s.deviation_pct.unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn mismatched_runs() {
        let mut rows: Vec<ResultRow> = (0..4).map(|r| row("mfcga", r, "A", 10)).collect();
        rows.extend((0..3).map(|r| row("mfea", r, "A", 10)));
        assert!(matches!(
            build_report(&rows, None),
            Err(HarnessError::RunCountMismatch { mfcga: 4, mfea: 3, .. })
        ));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(build_report(&[], None), Err(HarnessError::EmptyResults)));
    }
}
