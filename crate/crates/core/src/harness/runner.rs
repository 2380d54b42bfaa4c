//! Seeded batches of solver runs and their CSV artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::registry::test_case;
use super::{csv_err, io_err, load_taskset, HarnessError};
use crate::analysis::{aggregate_transfer, TransferSummary};
use crate::exec::{self, Execution};
use crate::mfcga::{run_mfcga, MfcgaConfig, TransferLedger};
use crate::mfea::{run_mfea, MfeaConfig};
use crate::multitask::TaskSet;
use crate::operators::rng_from_seed;
use crate::solver::SolverResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Mfea,
    Mfcga,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Mfea => "mfea",
            Algorithm::Mfcga => "mfcga",
        }
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mfea" => Ok(Algorithm::Mfea),
            "mfcga" => Ok(Algorithm::Mfcga),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgoChoice {
    Mfea,
    Mfcga,
    Both,
}

impl AlgoChoice {
    pub fn algorithms(self) -> Vec<Algorithm> {
        match self {
            AlgoChoice::Mfea => vec![Algorithm::Mfea],
            AlgoChoice::Mfcga => vec![Algorithm::Mfcga],
            AlgoChoice::Both => vec![Algorithm::Mfcga, Algorithm::Mfea],
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub testcase: String,
    pub algo: AlgoChoice,
    pub runs: usize,
    pub base_seed: u64,
    pub instance_dir: PathBuf,
    pub mfea: MfeaConfig,
    pub mfcga: MfcgaConfig,
    pub execution: Execution,
    /// Fill the `wall_ms` column. Off by default so that artifacts are
    /// byte-identical for a fixed seed.
    pub record_wall_clock: bool,
}

impl ExperimentConfig {
    pub fn new(testcase: impl Into<String>, instance_dir: impl Into<PathBuf>) -> Self {
        Self {
            testcase: testcase.into(),
            algo: AlgoChoice::Both,
            runs: 20,
            base_seed: 0,
            instance_dir: instance_dir.into(),
            mfea: MfeaConfig::default(),
            mfcga: MfcgaConfig::default(),
            execution: Execution::Parallel,
            record_wall_clock: false,
        }
    }
}

/// One row of the results CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub testcase: String,
    pub algo: String,
    pub run: usize,
    pub seed: u64,
    pub instance: String,
    pub best_cost: u64,
    pub evals: u64,
    pub wall_ms: u64,
}

/// One row of a ledger CSV. `count` is an integer for a single run and a
/// mean for aggregated files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerRow {
    pub run: String,
    pub target_task: String,
    pub source_task: String,
    pub count: f64,
    pub kind: String,
}

#[derive(Debug, Clone)]
pub struct RunRecord {
    pub algo: Algorithm,
    pub run: usize,
    pub seed: u64,
    pub result: SolverResult,
    pub ledger: Option<TransferLedger>,
    pub wall_ms: u64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub testcase: String,
    pub task_names: Vec<String>,
    pub records: Vec<RunRecord>,
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutput, HarnessError> {
    let tc = test_case(&config.testcase).ok_or_else(|| HarnessError::UnknownTestCase(config.testcase.clone()))?;
    let taskset = load_taskset(&config.instance_dir, tc.instances)?;
    run_on_taskset(&taskset, config)
}

/// Runs every `(algorithm, run)` pair of `config` on an already loaded task
/// set. Run `r` uses seed `base_seed + r` for both algorithms.
pub fn run_on_taskset(taskset: &TaskSet, config: &ExperimentConfig) -> Result<ExperimentOutput, HarnessError> {
    let algorithms = config.algo.algorithms();
    for algo in &algorithms {
        match algo {
            Algorithm::Mfea => config.mfea.validate(taskset.k())?,
            Algorithm::Mfcga => config.mfcga.validate(taskset.k())?,
        }
    }
    let jobs: Vec<(Algorithm, usize)> = algorithms
        .iter()
        .flat_map(|&a| (0..config.runs).map(move |r| (a, r)))
        .collect();
    let records = exec::map(jobs, config.execution, |(algo, run)| {
        let seed = config.base_seed + run as u64;
        let rng = rng_from_seed(seed);
        let start = Instant::now();
        let (result, ledger) = match algo {
            Algorithm::Mfea => (run_mfea(taskset, config.mfea.clone(), rng).expect("validated"), None),
            Algorithm::Mfcga => {
                let out = run_mfcga(taskset, config.mfcga.clone(), rng).expect("validated");
                (out.result, Some(out.ledger))
            }
        };
        let wall_ms = if config.record_wall_clock {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        RunRecord {
            algo,
            run,
            seed,
            result,
            ledger,
            wall_ms,
        }
    });
    Ok(ExperimentOutput {
        testcase: config.testcase.clone(),
        task_names: taskset.names(),
        records,
    })
}

impl ExperimentOutput {
    pub fn result_rows(&self) -> Vec<ResultRow> {
        let mut rows = Vec::new();
        for rec in &self.records {
            for (t, name) in self.task_names.iter().enumerate() {
                rows.push(ResultRow {
                    testcase: self.testcase.clone(),
                    algo: rec.algo.as_str().to_string(),
                    run: rec.run,
                    seed: rec.seed,
                    instance: name.clone(),
                    best_cost: rec.result.best_cost_per_task[t],
                    evals: rec.result.evaluations_used,
                    wall_ms: rec.wall_ms,
                });
            }
        }
        rows
    }

    pub fn ledgers(&self) -> Vec<(usize, &TransferLedger)> {
        self.records
            .iter()
            .filter_map(|r| r.ledger.as_ref().map(|l| (r.run, l)))
            .collect()
    }

    pub fn transfer_summary(&self) -> Option<TransferSummary> {
        let ledgers: Vec<TransferLedger> = self.ledgers().into_iter().map(|(_, l)| l.clone()).collect();
        aggregate_transfer(&ledgers).ok()
    }

    /// Writes the results CSV, one ledger CSV per MFCGA run and the mean
    /// ledger. Returns the paths written.
    pub fn write_to(&self, out_dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
        fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
        let mut written = Vec::new();
        let results = out_dir.join(format!("{}_results.csv", self.testcase));
        write_csv(&results, &self.result_rows())?;
        written.push(results);
        for (run, ledger) in self.ledgers() {
            let path = out_dir.join(format!("{}_mfcga_ledger_run{run}.csv", self.testcase));
            write_csv(&path, &ledger_rows(&run.to_string(), &self.task_names, ledger))?;
            written.push(path);
        }
        if let Some(summary) = self.transfer_summary() {
            let path = out_dir.join(format!("{}_mfcga_transfer_mean.csv", self.testcase));
            write_csv(&path, &summary_rows(&self.task_names, &summary))?;
            written.push(path);
        }
        Ok(written)
    }
}

/// Rows in target-major order; every `(target, source)` pair is listed.
pub fn ledger_rows(run: &str, names: &[String], ledger: &TransferLedger) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for (t, target) in names.iter().enumerate() {
        for (s, source) in names.iter().enumerate() {
            rows.push(LedgerRow {
                run: run.to_string(),
                target_task: target.clone(),
                source_task: source.clone(),
                count: ledger.crossover[t][s] as f64,
                kind: "crossover".into(),
            });
        }
    }
    for (t, target) in names.iter().enumerate() {
        rows.push(LedgerRow {
            run: run.to_string(),
            target_task: target.clone(),
            source_task: target.clone(),
            count: ledger.mutation[t] as f64,
            kind: "mutation".into(),
        });
    }
    rows
}

pub fn summary_rows(names: &[String], summary: &TransferSummary) -> Vec<LedgerRow> {
    let mut rows = Vec::new();
    for (t, target) in names.iter().enumerate() {
        for (s, source) in names.iter().enumerate() {
            rows.push(LedgerRow {
                run: "mean".into(),
                target_task: target.clone(),
                source_task: source.clone(),
                count: summary.crossover[t][s],
                kind: "crossover".into(),
            });
        }
    }
    for (t, target) in names.iter().enumerate() {
        rows.push(LedgerRow {
            run: "mean".into(),
            target_task: target.clone(),
            source_task: target.clone(),
            count: summary.mutation[t],
            kind: "mutation".into(),
        });
    }
    rows
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    for row in rows {
        w.serialize(row).map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, HarnessError> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    r.deserialize().collect::<Result<Vec<T>, _>>().map_err(csv_err(path))
}

/// Rebuilds the mean transfer matrix from ledger rows of one or more runs.
/// Task order follows first appearance as a target.
pub fn summary_from_ledger_rows(rows: &[LedgerRow]) -> Result<(Vec<String>, TransferSummary), HarnessError> {
    let mut targets: Vec<String> = Vec::new();
    let mut sources: Vec<String> = Vec::new();
    let mut runs: Vec<&str> = Vec::new();
    for row in rows {
        if !targets.contains(&row.target_task) {
            targets.push(row.target_task.clone());
        }
        if row.kind == "crossover" && !sources.contains(&row.source_task) {
            sources.push(row.source_task.clone());
        }
        if !runs.contains(&row.run.as_str()) {
            runs.push(&row.run);
        }
    }
    if targets.is_empty() {
        return Err(HarnessError::EmptyResults);
    }
    if sources.len() != targets.len() || sources.iter().any(|s| !targets.contains(s)) {
        return Err(HarnessError::NonSquare(targets.len(), sources.len()));
    }
    let k = targets.len();
    let idx = |name: &str| targets.iter().position(|t| t == name).expect("known task");
    let mut crossover = vec![vec![0.0; k]; k];
    let mut mutation = vec![0.0; k];
    for row in rows {
        let t = idx(&row.target_task);
        match row.kind.as_str() {
            "crossover" => crossover[t][idx(&row.source_task)] += row.count,
            _ => mutation[t] += row.count,
        }
    }
    let n = runs.len() as f64;
    crossover.iter_mut().flatten().for_each(|v| *v /= n);
    mutation.iter_mut().for_each(|v| *v /= n);
    Ok((
        targets,
        TransferSummary {
            crossover,
            mutation,
            runs: runs.len(),
        },
    ))
}
