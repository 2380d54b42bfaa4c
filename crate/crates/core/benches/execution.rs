//! Sequential versus rayon execution of a seeded batch, plus the full
//! population evaluation that every solver starts with.
//!
//! `cargo bench -p mfcvrp` compares both modes; building with
//! `--no-default-features` turns the parallel mode into plain iteration.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mfcvrp::exec::Execution;
use mfcvrp::harness::runner::{run_on_taskset, ExperimentConfig};
use mfcvrp::mfcga::MfcgaConfig;
use mfcvrp::mfea::MfeaConfig;
use mfcvrp::multitask::{full_evaluate, Member};
use mfcvrp::operators::{random_genome, rng_from_seed};
use mfcvrp::{CvrpInstance, Task, TaskSet};
use rand::Rng;

fn synthetic_taskset() -> TaskSet {
    let mut rng = rng_from_seed(2024);
    let tasks = [20, 30, 45, 60]
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let mut coords = vec![(50, 50)];
            let mut demands = vec![0];
            for _ in 0..n {
                coords.push((rng.gen_range(0..100), rng.gen_range(0..100)));
                demands.push(rng.gen_range(1..=20));
            }
            Task::new(CvrpInstance::new(format!("s{i}"), 100, coords, demands).unwrap())
        })
        .collect();
    TaskSet::new(tasks)
}

fn batch(c: &mut Criterion) {
    let ts = synthetic_taskset();
    let mut cfg = ExperimentConfig::new("bench", ".");
    cfg.runs = 8;
    cfg.mfea = MfeaConfig {
        population_size: 40,
        evaluation_budget: 4_000,
        ..MfeaConfig::default()
    };
    cfg.mfcga = MfcgaConfig {
        population_size: 40,
        rows: 5,
        cols: 8,
        evaluation_budget: 4_000,
    };
    let mut group = c.benchmark_group("batch_8_runs");
    group.sample_size(10);
    for (label, mode) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        cfg.execution = mode;
        group.bench_with_input(BenchmarkId::from_parameter(label), &cfg, |b, cfg| {
            b.iter(|| black_box(run_on_taskset(&ts, cfg).unwrap()))
        });
    }
    group.finish();
}

fn initial_evaluation(c: &mut Criterion) {
    let ts = synthetic_taskset();
    let mut rng = rng_from_seed(1);
    let population: Vec<Member> = (0..200)
        .map(|_| Member::new(random_genome(&mut rng, ts.d_max()), ts.k()))
        .collect();
    c.bench_function("full_evaluate_200x4", |b| {
        b.iter_batched_ref(
            || population.clone(),
            |pop| black_box(full_evaluate(pop, &ts)),
            criterion::BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, batch, initial_evaluation);
criterion_main!(benches);
