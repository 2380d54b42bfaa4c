//! Multifactorial Cellular Genetic Algorithm.
//!
//! The population lives on a toroidal grid. Every cell is crossed with a
//! random Moore neighbour and mutated on each visit; a child replaces the
//! cell only if it is strictly better on the cell's (fixed) skill task.
//! Cells are visited in row-major order and replacements are visible
//! immediately (asynchronous update).
//!
//! Each successful crossover replacement is logged in a [`TransferLedger`]
//! under `(skill of the cell, skill of the neighbour)`.

use rand::Rng;

use crate::multitask::{balanced_skill_assignment, full_evaluate, update_scalar_fitness, Member, TaskSet};
use crate::operators::{order_crossover, random_genome, two_opt_mutation, RngStream};
use crate::solver::{ConfigError, EvalContext, SolverResult};

/// Offsets of the radius-1 Moore neighbourhood.
const MOORE: [(isize, isize); 8] = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

/// Row-major toroidal grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MooreGrid {
    rows: usize,
    cols: usize,
}

impl MooreGrid {
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "grid dimensions must be positive");
        Self { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position(&self, cell: usize) -> (usize, usize) {
        (cell / self.cols, cell % self.cols)
    }

    pub fn cell(&self, row: usize, col: usize) -> usize {
        row * self.cols + col
    }

    /// The eight surrounding cells with wrap-around. On grids smaller than
    /// 3x3 entries repeat (and may include `cell` itself).
    pub fn neighbors(&self, cell: usize) -> [usize; 8] {
        let (r, c) = self.position(cell);
        MOORE.map(|(dr, dc)| {
            let nr = (r as isize + dr).rem_euclid(self.rows as isize) as usize;
            let nc = (c as isize + dc).rem_euclid(self.cols as isize) as usize;
            self.cell(nr, nc)
        })
    }

    /// Visiting order of one asynchronous sweep.
    pub fn sweep_order(&self) -> std::ops::Range<usize> {
        0..self.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MfcgaConfig {
    pub population_size: usize,
    pub rows: usize,
    pub cols: usize,
    pub evaluation_budget: u64,
}

impl Default for MfcgaConfig {
    fn default() -> Self {
        Self {
            population_size: 200,
            rows: 10,
            cols: 20,
            evaluation_budget: 50_000,
        }
    }
}

impl MfcgaConfig {
    pub fn validate(&self, k: usize) -> Result<(), ConfigError> {
        if self.population_size == 0 {
            return Err(ConfigError::PopulationSize(0));
        }
        if self.rows * self.cols != self.population_size {
            return Err(ConfigError::GridMismatch {
                rows: self.rows,
                cols: self.cols,
                population: self.population_size,
            });
        }
        if self.rows < 3 || self.cols < 3 {
            return Err(ConfigError::GridTooSmall {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let needed = (self.population_size * k) as u64;
        if self.evaluation_budget <= needed {
            return Err(ConfigError::BudgetTooSmall {
                budget: self.evaluation_budget,
                needed,
            });
        }
        Ok(())
    }
}

/// Counts of positive replacements in one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferLedger {
    /// `crossover[target][source]`: a crossover child of a cell with skill
    /// `target` and a neighbour with skill `source` replaced the cell.
    pub crossover: Vec<Vec<u64>>,
    /// Per task: replacements by the mutated child.
    pub mutation: Vec<u64>,
}

impl TransferLedger {
    pub fn new(k: usize) -> Self {
        Self {
            crossover: vec![vec![0; k]; k],
            mutation: vec![0; k],
        }
    }

    pub fn k(&self) -> usize {
        self.mutation.len()
    }

    pub fn total_crossover(&self) -> u64 {
        self.crossover.iter().flatten().sum()
    }

    pub fn intra(&self, task: usize) -> u64 {
        self.crossover[task][task]
    }

    /// Events where `task` received material from any other task.
    pub fn inter_into(&self, task: usize) -> u64 {
        self.crossover[task]
            .iter()
            .enumerate()
            .filter(|&(s, _)| s != task)
            .map(|(_, &c)| c)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MfcgaResult {
    pub result: SolverResult,
    pub ledger: TransferLedger,
}

/// Which child, if any, replaced a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Replacement {
    Kept,
    Crossover,
    Mutation,
}

/// Strict improvement; the crossover child wins a tie between children.
pub fn local_improvement(incumbent: u64, crossover: u64, mutation: u64) -> Replacement {
    if crossover < incumbent && crossover <= mutation {
        Replacement::Crossover
    } else if mutation < incumbent {
        Replacement::Mutation
    } else {
        Replacement::Kept
    }
}

/// A running MFCGA. [`Mfcga::new`] initialises; [`Mfcga::sweep`] performs
/// one pass over the grid.
pub struct Mfcga<'a> {
    ctx: EvalContext<'a>,
    config: MfcgaConfig,
    grid: MooreGrid,
    population: Vec<Member>,
    rng: RngStream,
    ledger: TransferLedger,
    history: Vec<Vec<u64>>,
    updates: u64,
    crossover_wins: u64,
    mutation_wins: u64,
}

impl<'a> Mfcga<'a> {
    pub fn new(taskset: &'a TaskSet, config: MfcgaConfig, mut rng: RngStream) -> Result<Self, ConfigError> {
        let k = taskset.k();
        config.validate(k)?;
        let d_max = taskset.d_max();
        let mut population: Vec<Member> = (0..config.population_size)
            .map(|_| Member::new(random_genome(&mut rng, d_max), k))
            .collect();
        let grid = MooreGrid::new(config.rows, config.cols);
        let mut ctx = EvalContext::new(taskset);
        ctx.evaluations += full_evaluate(&mut population, taskset);
        for m in &population {
            for (t, c) in m.costs.iter().enumerate() {
                ctx.offer(&m.genome, t, c.value().expect("fully evaluated"));
            }
        }
        update_scalar_fitness(&mut population, k);
        let skills = balanced_skill_assignment(&population, k);
        for (m, s) in population.iter_mut().zip(skills) {
            m.skill = s;
        }
        let history = vec![ctx.snapshot()];
        Ok(Self {
            ctx,
            config,
            grid,
            population,
            rng,
            ledger: TransferLedger::new(k),
            history,
            updates: 0,
            crossover_wins: 0,
            mutation_wins: 0,
        })
    }

    pub fn grid(&self) -> MooreGrid {
        self.grid
    }

    pub fn population(&self) -> &[Member] {
        &self.population
    }

    pub fn ledger(&self) -> &TransferLedger {
        &self.ledger
    }

    pub fn evaluations(&self) -> u64 {
        self.ctx.evaluations
    }

    /// Cell updates performed so far.
    pub fn updates(&self) -> u64 {
        self.updates
    }

    /// Updates in which the crossover child survived, counted independently
    /// of the ledger.
    pub fn crossover_wins(&self) -> u64 {
        self.crossover_wins
    }

    pub fn mutation_wins(&self) -> u64 {
        self.mutation_wins
    }

    pub fn best_costs(&self) -> &[u64] {
        &self.ctx.best_cost
    }

    /// Number of cells committed to each task.
    pub fn skill_census(&self) -> Vec<usize> {
        let mut census = vec![0; self.ctx.taskset.k()];
        for m in &self.population {
            census[m.skill] += 1;
        }
        census
    }

    fn can_update(&self) -> bool {
        self.ctx.evaluations + 2 <= self.config.evaluation_budget
    }

    /// Updates one cell. Returns `None` if the budget cannot cover it.
    pub fn update_cell(&mut self, cell: usize) -> Option<Replacement> {
        if !self.can_update() {
            return None;
        }
        let neighbors = self.grid.neighbors(cell);
        let mate = neighbors[self.rng.gen_range(0..neighbors.len())];
        let current = &self.population[cell];
        let source_skill = self.population[mate].skill;
        let crossed = order_crossover(&current.genome, &self.population[mate].genome, &mut self.rng)
            .expect("equal-length genomes");
        let mutated = two_opt_mutation(&current.genome, &mut self.rng);
        let skill = current.skill;
        let incumbent = current.skill_cost().value().expect("cell evaluated on its skill task");
        let crossed_cost = self.ctx.evaluate(&crossed, skill);
        let mutated_cost = self.ctx.evaluate(&mutated, skill);
        self.updates += 1;
        let k = self.ctx.taskset.k();
        let outcome = local_improvement(incumbent, crossed_cost, mutated_cost);
        match outcome {
            Replacement::Crossover => {
                self.population[cell] = Member::evaluated_on(crossed, k, skill, crossed_cost);
                self.ledger.crossover[skill][source_skill] += 1;
                self.crossover_wins += 1;
            }
            Replacement::Mutation => {
                self.population[cell] = Member::evaluated_on(mutated, k, skill, mutated_cost);
                self.ledger.mutation[skill] += 1;
                self.mutation_wins += 1;
            }
            Replacement::Kept => {}
        }
        Some(outcome)
    }

    /// One asynchronous pass over the grid. Returns `false` once the budget
    /// stopped the sweep or leaves no room for another update.
    pub fn sweep(&mut self) -> bool {
        if !self.can_update() {
            return false;
        }
        let mut complete = true;
        for cell in self.grid.sweep_order() {
            if self.update_cell(cell).is_none() {
                complete = false;
                break;
            }
        }
        self.history.push(self.ctx.snapshot());
        complete && self.can_update()
    }

    pub fn run(mut self) -> MfcgaResult {
        while self.sweep() {}
        MfcgaResult {
            result: self.ctx.finish(self.history),
            ledger: self.ledger,
        }
    }
}

pub fn run_mfcga(taskset: &TaskSet, config: MfcgaConfig, rng: RngStream) -> Result<MfcgaResult, ConfigError> {
    Ok(Mfcga::new(taskset, config, rng)?.run())
}
