//! State shared by both solvers: budgeted evaluation and the per-task record
//! of the best solutions seen.

use crate::encoding::Genome;
use crate::multitask::TaskSet;

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult {
    pub best_cost_per_task: Vec<u64>,
    pub best_genome_per_task: Vec<Genome>,
    pub evaluations_used: u64,
    /// Best cost per task after initialisation and after every generation
    /// (MFEA) or sweep (MFCGA).
    pub best_cost_history: Vec<Vec<u64>>,
}

/// Counts evaluations and remembers the best genome evaluated on each task.
#[derive(Debug, Clone)]
pub(crate) struct EvalContext<'a> {
    pub taskset: &'a TaskSet,
    pub evaluations: u64,
    pub best_cost: Vec<u64>,
    pub best_genome: Vec<Option<Genome>>,
}

impl<'a> EvalContext<'a> {
    pub fn new(taskset: &'a TaskSet) -> Self {
        let k = taskset.k();
        Self {
            taskset,
            evaluations: 0,
            best_cost: vec![u64::MAX; k],
            best_genome: vec![None; k],
        }
    }

    pub fn evaluate(&mut self, genome: &Genome, task: usize) -> u64 {
        let cost = self.taskset.task(task).cost(genome.as_slice());
        self.evaluations += 1;
        self.offer(genome, task, cost);
        cost
    }

    pub fn offer(&mut self, genome: &Genome, task: usize, cost: u64) {
        if cost < self.best_cost[task] {
            self.best_cost[task] = cost;
            self.best_genome[task] = Some(genome.clone());
        }
    }

    pub fn snapshot(&self) -> Vec<u64> {
        self.best_cost.clone()
    }

    pub fn finish(self, history: Vec<Vec<u64>>) -> SolverResult {
        SolverResult {
            best_cost_per_task: self.best_cost,
            best_genome_per_task: self
                .best_genome
                .into_iter()
                .map(|g| g.expect("every task evaluated at initialisation"))
                .collect(),
            evaluations_used: self.evaluations,
            best_cost_history: history,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("{name} must lie in [0, 1], got {value}")]
    Probability { name: &'static str, value: f64 },
    #[error("population size must be positive and even, got {0}")]
    PopulationSize(usize),
    #[error("budget {budget} does not exceed the initial evaluation cost {needed}")]
    BudgetTooSmall { budget: u64, needed: u64 },
    #[error("grid {rows}x{cols} does not tile a population of {population}")]
    GridMismatch {
        rows: usize,
        cols: usize,
        population: usize,
    },
    #[error("grid {rows}x{cols} is too small for 8 distinct Moore neighbours (need at least 3x3)")]
    GridTooSmall { rows: usize, cols: usize },
}
