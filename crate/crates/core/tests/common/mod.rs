//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use mfcvrp::encoding::Task;
use mfcvrp::harness::registry::INSTANCES;
use mfcvrp::harness::{instance_path, INSTANCE_DIR_ENV};
use mfcvrp::instance::CvrpInstance;
use mfcvrp::multitask::TaskSet;

/// Toy task A: five clients around the depot, two or three routes needed.
pub fn toy_a() -> CvrpInstance {
    CvrpInstance::new(
        "toy-a",
        10,
        vec![(0, 0), (10, 1), (12, 6), (1, 11), (-8, 7), (-4, -9)],
        vec![0, 3, 4, 5, 2, 6],
    )
    .unwrap()
}

/// Toy task B: a different layout with a tighter vehicle.
pub fn toy_b() -> CvrpInstance {
    CvrpInstance::new(
        "toy-b",
        8,
        vec![(5, 5), (15, 7), (9, 16), (-3, 12), (-6, 0), (8, -6)],
        vec![0, 4, 3, 5, 4, 2],
    )
    .unwrap()
}

pub fn toy_taskset() -> TaskSet {
    TaskSet::new(vec![Task::new(toy_a()), Task::new(toy_b())])
}

/// TSPLIB nint Euclidean distance, written out independently of the crate.
pub fn nint_dist(a: (i64, i64), b: (i64, i64)) -> u64 {
    let dx = (a.0 - b.0) as f64;
    let dy = (a.1 - b.1) as f64;
    ((dx * dx + dy * dy).sqrt() + 0.5).floor() as u64
}

pub fn route_cost(inst: &CvrpInstance, route: &[usize]) -> u64 {
    let c = inst.coords();
    let mut cost = 0;
    let mut prev = 0;
    for &v in route {
        cost += nint_dist(c[prev], c[v]);
        prev = v;
    }
    cost + nint_dist(c[prev], c[0])
}

/// All permutations of `1..=n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    let mut a: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    heap(n, &mut a, &mut out);
    out
}

/// Cheapest capacity-feasible way to cut `perm` into routes, by trying every
/// subset of cut positions.
pub fn best_split_cost(inst: &CvrpInstance, perm: &[usize]) -> Option<u64> {
    let n = perm.len();
    let mut best: Option<u64> = None;
    for mask in 0u32..(1 << (n - 1)) {
        let mut cost = 0;
        let mut start = 0;
        let mut feasible = true;
        for end in 1..=n {
            let cut = end == n || mask & (1 << (end - 1)) != 0;
            if !cut {
                continue;
            }
            let route = &perm[start..end];
            let load: u32 = route.iter().map(|&v| inst.demand(v)).sum();
            if load > inst.capacity() {
                feasible = false;
                break;
            }
            cost += route_cost(inst, route);
            start = end;
        }
        if feasible {
            best = Some(best.map_or(cost, |b: u64| b.min(cost)));
        }
    }
    best
}

/// Greedy first-fit split, reimplemented for cross-checking.
pub fn greedy_split(inst: &CvrpInstance, perm: &[usize]) -> Vec<Vec<usize>> {
    let mut routes: Vec<Vec<usize>> = Vec::new();
    let mut load = 0;
    for &v in perm {
        let d = inst.demand(v);
        match routes.last_mut() {
            Some(r) if load + d <= inst.capacity() => {
                r.push(v);
                load += d;
            }
            _ => {
                routes.push(vec![v]);
                load = d;
            }
        }
    }
    routes
}

pub fn greedy_cost(inst: &CvrpInstance, perm: &[usize]) -> u64 {
    greedy_split(inst, perm).iter().map(|r| route_cost(inst, r)).sum()
}

/// Exhaustive optimum over all permutations and all feasible splits.
pub fn brute_force_optimum(inst: &CvrpInstance) -> u64 {
    permutations(inst.n_clients())
        .iter()
        .filter_map(|p| best_split_cost(inst, p))
        .min()
        .expect("some feasible solution")
}

/// Best cost any permutation reaches under the greedy split.
pub fn greedy_reachable_optimum(inst: &CvrpInstance) -> u64 {
    permutations(inst.n_clients())
        .iter()
        .map(|p| greedy_cost(inst, p))
        .min()
        .unwrap()
}

/// Directory holding the benchmark `.vrp` files: the environment override
/// or `instances/` at the workspace root.
pub fn instance_dir() -> PathBuf {
    std::env::var_os(INSTANCE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances"))
}

pub fn missing_instances() -> Vec<&'static str> {
    let dir = instance_dir();
    INSTANCES
        .iter()
        .copied()
        .filter(|n| !instance_path(&dir, n).is_file())
        .collect()
}

/// Pearson chi-square statistic against a uniform expectation.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}
