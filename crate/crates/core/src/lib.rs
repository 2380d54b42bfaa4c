//! Evolutionary multitasking for the Capacitated Vehicle Routing Problem.
//!
//! Several CVRP instances ("tasks") are solved at once by a single
//! population over a shared permutation encoding. Two solvers are provided:
//!
//! - [`mfea`]: the Multifactorial Evolutionary Algorithm, a generational
//!   GA with assortative mating, selective evaluation and elitist survival
//!   on scalar fitness.
//! - [`mfcga`]: the Multifactorial Cellular GA, an asynchronous cellular GA
//!   on a toroidal Moore grid whose cells stay committed to one task, with
//!   a ledger of crossover-driven improvements between tasks.
//!
//! [`analysis`] holds the statistics used to compare runs (Wilcoxon
//! rank-sum, sign tables, client and solution overlap) and [`harness`] the
//! experiment orchestration behind the `mfcvrp` command-line tool.
//!
//! ```
//! use mfcvrp::encoding::Task;
//! use mfcvrp::instance::CvrpInstance;
//! use mfcvrp::mfcga::{run_mfcga, MfcgaConfig};
//! use mfcvrp::multitask::TaskSet;
//! use mfcvrp::operators::rng_from_seed;
//!
//! let coords = vec![(0, 0), (10, 0), (0, 10), (-10, 0), (0, -10)];
//! let a = CvrpInstance::new("a", 10, coords.clone(), vec![0, 4, 4, 4, 4]).unwrap();
//! let b = CvrpInstance::new("b", 12, coords, vec![0, 6, 6, 6, 6]).unwrap();
//! let tasks = TaskSet::new(vec![Task::new(a), Task::new(b)]);
//! let config = MfcgaConfig { population_size: 16, rows: 4, cols: 4, evaluation_budget: 1000 };
//! let out = run_mfcga(&tasks, config, rng_from_seed(7)).unwrap();
//! assert_eq!(out.result.best_cost_per_task.len(), 2);
//! ```

pub mod analysis;
pub mod encoding;
pub mod exec;
pub mod harness;
pub mod instance;
pub mod mfcga;
pub mod mfea;
pub mod multitask;
pub mod operators;
pub mod solver;

pub use encoding::{Genome, RoutePlan, Task};
pub use instance::{build_distance_matrix, parse_instance, CvrpInstance, DistanceMatrix};
pub use multitask::TaskSet;
pub use solver::{ConfigError, SolverResult};
