//! Canonical Multifactorial Evolutionary Algorithm: assortative mating,
//! selective evaluation and elitist survival on scalar fitness.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::encoding::Genome;
use crate::multitask::{full_evaluate, update_scalar_fitness, Member, TaskSet};
use crate::operators::{order_crossover, random_genome, two_opt_mutation, RngStream};
use crate::solver::{ConfigError, EvalContext, SolverResult};

#[derive(Debug, Clone, PartialEq)]
pub struct MfeaConfig {
    pub population_size: usize,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
    /// Random mating probability: chance that parents with different skill
    /// factors are crossed.
    pub rmp: f64,
    pub evaluation_budget: u64,
}

impl Default for MfeaConfig {
    fn default() -> Self {
        Self {
            population_size: 200,
            crossover_prob: 0.9,
            mutation_prob: 0.1,
            rmp: 0.3,
            evaluation_budget: 50_000,
        }
    }
}

impl MfeaConfig {
    pub fn validate(&self, k: usize) -> Result<(), ConfigError> {
        for (name, value) in [
            ("crossover_prob", self.crossover_prob),
            ("mutation_prob", self.mutation_prob),
            ("rmp", self.rmp),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::Probability { name, value });
            }
        }
        if self.population_size == 0 || !self.population_size.is_multiple_of(2) {
            return Err(ConfigError::PopulationSize(self.population_size));
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

/// A running MFEA. [`Mfea::new`] performs initialisation; each
/// [`Mfea::step`] is one generation.
pub struct Mfea<'a> {
    ctx: EvalContext<'a>,
    config: MfeaConfig,
    population: Vec<Member>,
    rng: RngStream,
    history: Vec<Vec<u64>>,
    last_offspring: usize,
}

impl<'a> Mfea<'a> {
    pub fn new(taskset: &'a TaskSet, config: MfeaConfig, mut rng: RngStream) -> Result<Self, ConfigError> {
        let k = taskset.k();
        config.validate(k)?;
        let d_max = taskset.d_max();
        let mut population: Vec<Member> = (0..config.population_size)
            .map(|_| Member::new(random_genome(&mut rng, d_max), k))
            .collect();
        let mut ctx = EvalContext::new(taskset);
        ctx.evaluations += full_evaluate(&mut population, taskset);
        for m in &population {
            for (t, c) in m.costs.iter().enumerate() {
                ctx.offer(&m.genome, t, c.value().expect("fully evaluated"));
            }
        }
        update_scalar_fitness(&mut population, k);
        let history = vec![ctx.snapshot()];
        Ok(Self {
            ctx,
            config,
            population,
            rng,
            history,
            last_offspring: 0,
        })
    }

    pub fn population(&self) -> &[Member] {
        &self.population
    }

    pub fn evaluations(&self) -> u64 {
        self.ctx.evaluations
    }

    /// Offspring produced by the most recent generation.
    pub fn last_offspring(&self) -> usize {
        self.last_offspring
    }

    pub fn best_costs(&self) -> &[u64] {
        &self.ctx.best_cost
    }

    pub fn budget_left(&self) -> bool {
        self.ctx.evaluations < self.config.evaluation_budget
    }

    /// Runs one generation if budget remains. Returns whether one ran.
    pub fn step(&mut self) -> bool {
        if !self.budget_left() {
            return false;
        }
        let offspring = self.breed();
        self.last_offspring = offspring.len();
        let k = self.ctx.taskset.k();
        let mut pool = std::mem::take(&mut self.population);
        for (genome, skill) in offspring {
            let cost = self.ctx.evaluate(&genome, skill);
            pool.push(Member::evaluated_on(genome, k, skill, cost));
        }
        update_scalar_fitness(&mut pool, k);
        self.population = select_survivors(pool, self.config.population_size);
        self.history.push(self.ctx.snapshot());
        true
    }

    /// Pairs the population at random and applies the variation operators.
    /// Returns each child with the task it will be evaluated on.
    fn breed(&mut self) -> Vec<(Genome, usize)> {
        let mut order: Vec<usize> = (0..self.population.len()).collect();
        order.shuffle(&mut self.rng);
        let mut children = Vec::with_capacity(order.len());
        for pair in order.chunks_exact(2) {
            let a = &self.population[pair[0]];
            let b = &self.population[pair[1]];
            children.extend(mate(a, b, &self.config, &mut self.rng));
        }
        children
    }

    pub fn run(mut self) -> SolverResult {
        while self.step() {}
        self.ctx.finish(self.history)
    }
}

/// Assortative mating for one pair of parents.
///
/// Crossover happens with probability `crossover_prob`, and only if the
/// parents share a skill factor or a draw below `rmp` allows cross-task
/// mating. Each crossover child inherits one parent's skill at random and is
/// further mutated with probability `mutation_prob`. Without crossover each
/// parent yields one mutant keeping its own skill.
fn mate(a: &Member, b: &Member, config: &MfeaConfig, rng: &mut RngStream) -> [(Genome, usize); 2] {
    let crossover = rng.gen::<f64>() < config.crossover_prob && (a.skill == b.skill || rng.gen::<f64>() < config.rmp);
    if crossover {
        let mut child = |x: &Member, y: &Member| {
            let mut g = order_crossover(&x.genome, &y.genome, rng).expect("equal-length parents");
            if rng.gen::<f64>() < config.mutation_prob {
                g = two_opt_mutation(&g, rng);
            }
            let skill = if rng.gen_bool(0.5) { a.skill } else { b.skill };
            (g, skill)
        };
        let first = child(a, b);
        let second = child(b, a);
        [first, second]
    } else {
        [
            (two_opt_mutation(&a.genome, rng), a.skill),
            (two_opt_mutation(&b.genome, rng), b.skill),
        ]
    }
}

/// Keeps the best `n` by scalar fitness; ties go to the lower cost on the
/// member's skill task, then to the lower pool index.
fn select_survivors(pool: Vec<Member>, n: usize) -> Vec<Member> {
    let mut ranked: Vec<(usize, Member)> = pool.into_iter().enumerate().collect();
    ranked.sort_by_key(|(i, m)| (m.ranks[m.skill], m.skill_cost(), *i));
    ranked.truncate(n);
    ranked.into_iter().map(|(_, m)| m).collect()
}

pub fn run_mfea(taskset: &TaskSet, config: MfeaConfig, rng: RngStream) -> Result<SolverResult, ConfigError> {
    Ok(Mfea::new(taskset, config, rng)?.run())
}
