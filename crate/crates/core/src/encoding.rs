//! Unified permutation representation, per-task projection and greedy
//! capacity split into routes.

use thiserror::Error;

use crate::instance::{build_distance_matrix, CvrpInstance, DistanceMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodingError {
    #[error("client {client} has demand {demand} above capacity {capacity}")]
    InfeasibleClient { client: usize, demand: u32, capacity: u32 },
    #[error("client id {client} out of range 1..={max}")]
    ClientOutOfRange { client: usize, max: usize },
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("genome of length {genome} cannot encode a task with {task} clients")]
    GenomeTooShort { genome: usize, task: usize },
}

/// A permutation of `1..=D_max`, shared by every task.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Genome(Vec<usize>);

impl Genome {
    /// Wraps `perm` after checking it is a permutation of `1..=perm.len()`.
    pub fn new(perm: Vec<usize>) -> Result<Self, EncodingError> {
        if !is_permutation(&perm) {
            return Err(EncodingError::NotAPermutation(perm.len()));
        }
        Ok(Self(perm))
    }

    /// `1..=len` in order.
    pub fn identity(len: usize) -> Self {
        Self((1..=len).collect())
    }

    pub(crate) fn from_vec_unchecked(perm: Vec<usize>) -> Self {
        debug_assert!(is_permutation(&perm));
        Self(perm)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn is_valid(&self) -> bool {
        is_permutation(&self.0)
    }
}

pub fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len() + 1];
    for &v in perm {
        if v == 0 || v > perm.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Keeps the values `1..=task_size` of `genome`, in genome order.
pub fn project(genome: &Genome, task_size: usize) -> Vec<usize> {
    genome.0.iter().copied().filter(|&v| v <= task_size).collect()
}

/// Zero-delimited form with the zeros made structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoutePlan {
    routes: Vec<Vec<usize>>,
    loads: Vec<u32>,
}

impl RoutePlan {
    /// Builds a plan from explicit routes, computing loads on `instance`.
    pub fn from_routes(routes: Vec<Vec<usize>>, instance: &CvrpInstance) -> Result<Self, EncodingError> {
        let max = instance.n_clients();
        let mut loads = Vec::with_capacity(routes.len());
        for route in &routes {
            let mut load = 0;
            for &c in route {
                if c == 0 || c > max {
                    return Err(EncodingError::ClientOutOfRange { client: c, max });
                }
                load += instance.demand(c);
            }
            loads.push(load);
        }
        Ok(Self { routes, loads })
    }

    pub fn routes(&self) -> &[Vec<usize>] {
        &self.routes
    }

    pub fn loads(&self) -> &[u32] {
        &self.loads
    }

    pub fn len(&self) -> usize {
        self.routes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.routes.is_empty()
    }

    /// Concatenation of all routes.
    pub fn flatten(&self) -> Vec<usize> {
        self.routes.iter().flatten().copied().collect()
    }

    /// The client sequence with a 0 closing every route, e.g. `1 2 0 3 0`.
    pub fn to_delimited(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for route in &self.routes {
            out.extend_from_slice(route);
            out.push(0);
        }
        out
    }
}

/// Greedy left-to-right split: a route is closed as soon as the next client
/// would overflow the vehicle.
pub fn split_decode(task_perm: &[usize], instance: &CvrpInstance) -> Result<RoutePlan, EncodingError> {
    let capacity = instance.capacity();
    let max = instance.n_clients();
    let mut routes: Vec<Vec<usize>> = Vec::new();
    let mut loads = Vec::new();
    let mut current = Vec::new();
    let mut load = 0u32;
    for &c in task_perm {
        if c == 0 || c > max {
            return Err(EncodingError::ClientOutOfRange { client: c, max });
        }
        let demand = instance.demand(c);
        if demand > capacity {
            return Err(EncodingError::InfeasibleClient {
                client: c,
                demand,
                capacity,
            });
        }
        if load + demand > capacity {
            routes.push(std::mem::take(&mut current));
            loads.push(load);
            load = 0;
        }
        current.push(c);
        load += demand;
    }
    if !current.is_empty() {
        routes.push(current);
        loads.push(load);
    }
    Ok(RoutePlan { routes, loads })
}

/// Total travelled distance; every route starts and ends at the depot.
pub fn evaluate(plan: &RoutePlan, dm: &DistanceMatrix) -> Result<u64, EncodingError> {
    let max = dm.size().saturating_sub(1);
    let mut cost = 0u64;
    for route in &plan.routes {
        let mut prev = 0;
        for &c in route {
            if c == 0 || c > max {
                return Err(EncodingError::ClientOutOfRange { client: c, max });
            }
            cost += dm.get(prev, c) as u64;
            prev = c;
        }
        cost += dm.get(prev, 0) as u64;
    }
    Ok(cost)
}

/// A task: an instance together with its distance matrix.
#[derive(Debug, Clone)]
pub struct Task {
    instance: CvrpInstance,
    dist: DistanceMatrix,
}

impl Task {
    pub fn new(instance: CvrpInstance) -> Self {
        let dist = build_distance_matrix(&instance);
        Self { instance, dist }
    }

    pub fn instance(&self) -> &CvrpInstance {
        &self.instance
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn name(&self) -> &str {
        self.instance.name()
    }

    /// `D_k`.
    pub fn n_clients(&self) -> usize {
        self.instance.n_clients()
    }

    /// Projection, greedy split and arc summation fused into one pass.
    ///
    /// `genome` must contain every client of this task; the instance
    /// invariants guarantee every client fits in an empty vehicle.
    pub fn cost(&self, genome: &[usize]) -> u64 {
        let dk = self.n_clients();
        let capacity = self.instance.capacity();
        let dm = &self.dist;
        let mut cost = 0u64;
        let mut load = 0u32;
        let mut prev = 0usize;
        for &c in genome {
            if c > dk {
                continue;
            }
            let demand = self.instance.demand(c);
            if load + demand > capacity {
                cost += dm.get(prev, 0) as u64;
                prev = 0;
                load = 0;
            }
            cost += dm.get(prev, c) as u64;
            load += demand;
            prev = c;
        }
        cost + dm.get(prev, 0) as u64
    }

    /// Decodes `genome` into the routes this task would drive.
    pub fn decode(&self, genome: &Genome) -> Result<RoutePlan, EncodingError> {
        split_decode(&project(genome, self.n_clients()), &self.instance)
    }
}

/// Number of objective-function evaluations spent by one solver run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct EvalCounter(u64);

impl EvalCounter {
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn add(&mut self, n: u64) {
        self.0 += n;
    }
}

/// Evaluates `genome` on `task` and charges one evaluation to `counter`.
pub fn unified_evaluate(genome: &Genome, task: &Task, counter: &mut EvalCounter) -> Result<u64, EncodingError> {
    if genome.len() < task.n_clients() {
        return Err(EncodingError::GenomeTooShort {
            genome: genome.len(),
            task: task.n_clients(),
        });
    }
    let plan = task.decode(genome)?;
    let cost = evaluate(&plan, task.distances())?;
    counter.add(1);
    Ok(cost)
}
