//! Per-individual multifactorial bookkeeping: factorial costs and ranks,
//! scalar fitness and skill factor.

use std::fmt;

use crate::encoding::{Genome, Task};
use crate::exec;

/// A factorial cost; `INFINITE` marks a task the member was never evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(u64);

impl Cost {
    pub const INFINITE: Cost = Cost(u64::MAX);

    pub fn new(value: u64) -> Self {
        debug_assert!(value != u64::MAX);
        Cost(value)
    }

    pub fn is_finite(self) -> bool {
        self != Self::INFINITE
    }

    pub fn value(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub genome: Genome,
    pub costs: Vec<Cost>,
    pub ranks: Vec<usize>,
    pub scalar_fitness: f64,
    pub skill: usize,
}

impl Member {
    /// A member with no evaluations yet.
    pub fn new(genome: Genome, k: usize) -> Self {
        Self {
            genome,
            costs: vec![Cost::INFINITE; k],
            ranks: vec![0; k],
            scalar_fitness: 0.0,
            skill: 0,
        }
    }

    /// A child evaluated on `skill` only.
    pub fn evaluated_on(genome: Genome, k: usize, skill: usize, cost: u64) -> Self {
        let mut m = Self::new(genome, k);
        m.costs[skill] = Cost::new(cost);
        m.skill = skill;
        m
    }

    pub fn skill_cost(&self) -> Cost {
        self.costs[self.skill]
    }
}

/// The `K` tasks solved together.
#[derive(Debug, Clone)]
pub struct TaskSet {
    tasks: Vec<Task>,
    d_max: usize,
}

impl TaskSet {
    /// Panics if `tasks` is empty.
    pub fn new(tasks: Vec<Task>) -> Self {
        assert!(!tasks.is_empty(), "a task set needs at least one task");
        let d_max = tasks.iter().map(Task::n_clients).max().unwrap_or(0);
        Self { tasks, d_max }
    }

    pub fn k(&self) -> usize {
        self.tasks.len()
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn task(&self, k: usize) -> &Task {
        &self.tasks[k]
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn names(&self) -> Vec<String> {
        self.tasks.iter().map(|t| t.name().to_string()).collect()
    }
}

/// Evaluates every member on every task. Returns the number of evaluations
/// performed (`N * K`).
pub fn full_evaluate(population: &mut [Member], taskset: &TaskSet) -> u64 {
    let k = taskset.k();
    exec::for_each_mut(population, |m| {
        m.costs = taskset
            .tasks()
            .iter()
            .map(|t| Cost::new(t.cost(m.genome.as_slice())))
            .collect();
        m.ranks.resize(k, 0);
    });
    (population.len() * k) as u64
}

/// Assigns 1-based ranks on task `k`: ascending cost, ties by population
/// index, infinite costs last.
pub fn compute_factorial_ranks(population: &mut [Member], k: usize) {
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.sort_by_key(|&i| population[i].costs[k]);
    for (rank, &i) in order.iter().enumerate() {
        population[i].ranks[k] = rank + 1;
    }
}

/// `(1 / min rank, lowest task index attaining it)`.
pub fn compute_scalar_fitness_and_skill(member: &Member) -> (f64, usize) {
    let (skill, best) = member
        .ranks
        .iter()
        .enumerate()
        .min_by_key(|&(i, &r)| (r, i))
        .map(|(i, &r)| (i, r))
        .expect("member has at least one task");
    (1.0 / best as f64, skill)
}

/// Recomputes ranks on all `k` tasks, then scalar fitness and skill factor.
pub fn update_scalar_fitness(population: &mut [Member], k: usize) {
    for task in 0..k {
        compute_factorial_ranks(population, task);
    }
    for m in population.iter_mut() {
        let (phi, skill) = compute_scalar_fitness_and_skill(m);
        m.scalar_fitness = phi;
        m.skill = skill;
    }
}

/// Splits the population evenly over the tasks: tasks take turns in index
/// order, each claiming its best-ranked unassigned member. Returns the skill
/// factor of every member.
pub fn balanced_skill_assignment(population: &[Member], k: usize) -> Vec<usize> {
    let n = population.len();
    // Per task, member indices sorted by rank on that task.
    let preference: Vec<Vec<usize>> = (0..k)
        .map(|t| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by_key(|&i| (population[i].ranks[t], i));
            order
        })
        .collect();
    let mut cursor = vec![0usize; k];
    let mut skill = vec![usize::MAX; n];
    let mut assigned = 0;
    'outer: loop {
        for t in 0..k {
            if assigned == n {
                break 'outer;
            }
            while skill[preference[t][cursor[t]]] != usize::MAX {
                cursor[t] += 1;
            }
            skill[preference[t][cursor[t]]] = t;
            assigned += 1;
        }
    }
    skill
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_costs(costs: &[Option<u64>]) -> Vec<Member> {
        costs
            .iter()
            .map(|c| {
                let mut m = Member::new(Genome::identity(1), 1);
                m.costs[0] = c.map_or(Cost::INFINITE, Cost::new);
                m
            })
            .collect()
    }

    fn ranks_of(pop: &[Member]) -> Vec<usize> {
        pop.iter().map(|m| m.ranks[0]).collect()
    }

    fn with_ranks(ranks: &[usize]) -> Member {
        let mut m = Member::new(Genome::identity(1), ranks.len());
        m.ranks = ranks.to_vec();
        m
    }

    #[test]
    fn rank_examples() {
        let mut pop = with_costs(&[Some(5), Some(3), Some(9)]);
        compute_factorial_ranks(&mut pop, 0);
        assert_eq!(ranks_of(&pop), vec![2, 1, 3]);

        let mut pop = with_costs(&[Some(4), Some(4)]);
        compute_factorial_ranks(&mut pop, 0);
        assert_eq!(ranks_of(&pop), vec![1, 2]);

        let mut pop = with_costs(&[Some(7), None, Some(2)]);
        compute_factorial_ranks(&mut pop, 0);
        assert_eq!(ranks_of(&pop), vec![2, 3, 1]);
    }

    #[test]
    fn scalar_fitness_examples() {
        assert_eq!(compute_scalar_fitness_and_skill(&with_ranks(&[1, 4])), (1.0, 0));
        let (phi, tau) = compute_scalar_fitness_and_skill(&with_ranks(&[3, 3]));
        assert!((phi - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(tau, 0);
        assert_eq!(compute_scalar_fitness_and_skill(&with_ranks(&[5, 2, 8])), (0.5, 1));
    }

    #[test]
    fn balanced_even_and_odd() {
        let pop: Vec<Member> = [[1, 4], [2, 3], [3, 2], [4, 1]].iter().map(|r| with_ranks(r)).collect();
        let skills = balanced_skill_assignment(&pop, 2);
        // t0 takes 0, t1 takes 3, t0 takes 1, t1 takes 2
        assert_eq!(skills, vec![0, 0, 1, 1]);

        let pop: Vec<Member> = [[1, 5], [2, 4], [3, 3], [4, 2], [5, 1]]
            .iter()
            .map(|r| with_ranks(r))
            .collect();
        let skills = balanced_skill_assignment(&pop, 2);
        assert_eq!(skills.iter().filter(|&&s| s == 0).count(), 3);
        assert_eq!(skills.iter().filter(|&&s| s == 1).count(), 2);
    }

    #[test]
    fn shared_champion_goes_to_first_task() {
        // member 0 is rank 1 on both tasks
        let pop: Vec<Member> = [[1, 1], [2, 3], [3, 2], [4, 4]].iter().map(|r| with_ranks(r)).collect();
        let skills = balanced_skill_assignment(&pop, 2);
        // t0 takes 0; t1 takes 2 (its rank 2); t0 takes 1; t1 takes 3.
        assert_eq!(skills, vec![0, 0, 1, 1]);
    }

    #[test]
    fn cost_display() {
        assert_eq!(Cost::new(12).to_string(), "12");
        assert_eq!(Cost::INFINITE.to_string(), "inf");
        assert!(Cost::new(3) < Cost::INFINITE);
    }
}
