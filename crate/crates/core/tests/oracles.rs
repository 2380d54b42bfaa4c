mod common;

use common::*;
use mfcvrp::encoding::{evaluate, project, split_decode, unified_evaluate, EvalCounter, Genome, Task};
use mfcvrp::instance::{build_distance_matrix, CvrpInstance};
use mfcvrp::multitask::{full_evaluate, Member, TaskSet};
use mfcvrp::operators::{random_genome, rng_from_seed};
use rand::Rng;

#[test]
fn toy_optima_are_reachable_by_greedy_split() {
    for inst in [toy_a(), toy_b()] {
        let exact = brute_force_optimum(&inst);
        let greedy = greedy_reachable_optimum(&inst);
        assert_eq!(exact, greedy, "{}: greedy split cannot reach the optimum", inst.name());
    }
}

#[test]
fn unified_evaluate_matches_independent_decode() {
    let inst = CvrpInstance::new(
        "six",
        9,
        vec![(0, 0), (3, 4), (-6, 2), (7, -7), (10, 10), (-5, -5), (1, 9)],
        vec![0, 2, 5, 4, 3, 6, 1],
    )
    .unwrap();
    let task = Task::new(inst.clone());
    let mut rng = rng_from_seed(11);
    let mut counter = EvalCounter::default();
    for _ in 0..500 {
        // Genome longer than the task to exercise projection.
        let g = random_genome(&mut rng, 9);
        let expected = greedy_cost(&inst, &project(&g, 6));
        assert_eq!(unified_evaluate(&g, &task, &mut counter).unwrap(), expected);
    }
    assert_eq!(counter.get(), 500);
}

#[test]
fn unified_evaluate_on_largest_task_is_direct_evaluation() {
    let inst = toy_a();
    let task = Task::new(inst.clone());
    let dm = build_distance_matrix(&inst);
    let mut rng = rng_from_seed(3);
    let mut counter = EvalCounter::default();
    for _ in 0..100 {
        let g = random_genome(&mut rng, 5);
        let direct = evaluate(&split_decode(g.as_slice(), &inst).unwrap(), &dm).unwrap();
        assert_eq!(unified_evaluate(&g, &task, &mut counter).unwrap(), direct);
        assert_eq!(unified_evaluate(&g, &task, &mut counter).unwrap(), direct);
    }
}

#[test]
fn full_evaluate_matches_direct_calls() {
    let ts = TaskSet::new(vec![Task::new(toy_a())]);
    let mut rng = rng_from_seed(5);
    let mut pop: Vec<Member> = (0..3).map(|_| Member::new(random_genome(&mut rng, 5), 1)).collect();
    assert_eq!(full_evaluate(&mut pop, &ts), 3);
    for m in &pop {
        assert_eq!(m.costs[0].value().unwrap(), greedy_cost(&toy_a(), m.genome.as_slice()));
    }

    let ts = toy_taskset();
    let mut pop: Vec<Member> = (0..2).map(|_| Member::new(Genome::identity(5), 2)).collect();
    assert_eq!(full_evaluate(&mut pop, &ts), 4);
    assert_eq!(pop[0].costs, pop[1].costs);
}

/// Greedy split on random 8-client instances: always feasible and order
/// preserving; its cost is compared with the best split of the same order.
#[test]
fn greedy_split_gap_on_eight_clients() {
    let mut rng = rng_from_seed(2024);
    let mut optimal_hits = 0;
    let mut worst_gap = 0.0f64;
    let trials = 200;
    for _ in 0..trials {
        let capacity = rng.gen_range(8..20);
        let mut coords = vec![(0, 0)];
        let mut demands = vec![0];
        for _ in 0..8 {
            coords.push((rng.gen_range(-50..50), rng.gen_range(-50..50)));
            demands.push(rng.gen_range(1..=capacity.min(9)));
        }
        let inst = CvrpInstance::new("r8", capacity, coords, demands).unwrap();
        let perm = random_genome(&mut rng, 8);
        let plan = split_decode(perm.as_slice(), &inst).unwrap();
        assert_eq!(plan.flatten(), perm.as_slice());
        assert!(plan.loads().iter().all(|&l| l <= capacity));
        assert_eq!(plan.routes(), greedy_split(&inst, perm.as_slice()).as_slice());

        let greedy = evaluate(&plan, &build_distance_matrix(&inst)).unwrap();
        let best = best_split_cost(&inst, perm.as_slice()).unwrap();
        assert!(greedy >= best);
        if greedy == best {
            optimal_hits += 1;
        }
        worst_gap = worst_gap.max((greedy - best) as f64 / best as f64);
    }
    println!(
        "greedy split optimal for {optimal_hits}/{trials} orders; worst gap {:.1}%",
        100.0 * worst_gap
    );
}
