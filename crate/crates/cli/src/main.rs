//! `mfcvrp` command-line tool.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, unknown test
//! case, invalid solver parameters), 2 for runtime failures (missing or
//! malformed files, I/O).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mfcvrp::exec::Execution;
use mfcvrp::harness::heatmap::render_svg;
use mfcvrp::harness::registry::{known_optima, parse_optima, INSTANCES};
use mfcvrp::harness::report::build_report;
use mfcvrp::harness::runner::{
    read_csv, run_experiment, summary_from_ledger_rows, write_csv, AlgoChoice, ExperimentConfig, LedgerRow, ResultRow,
};
use mfcvrp::harness::similarity::{client_overlap_table, load_solution, solution_overlap_table, OverlapRow};
use mfcvrp::harness::{load_instance, parse_grid, HarnessError, INSTANCE_DIR_ENV};

#[derive(Parser)]
#[command(
    name = "mfcvrp",
    version,
    about = "Evolutionary multitasking for CVRP benchmark sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a test case with one or both solvers and write CSV artifacts.
    Solve(SolveArgs),
    /// Summarise results CSVs: means, deviations, rank-sum tests, signs.
    Report(ReportArgs),
    /// Client-overlap (and optionally solution-overlap) tables.
    Similarity(SimilarityArgs),
    /// Render a transfer ledger CSV as an SVG circle matrix.
    Heatmap(HeatmapArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Mfea,
    Mfcga,
    Both,
}

#[derive(Args)]
struct SolveArgs {
    /// Test case id, e.g. TC_4_1 or TC_12.
    #[arg(long)]
    testcase: String,
    #[arg(long, value_enum, default_value = "both")]
    algo: AlgoArg,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    /// Seed of run 0; run r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory holding the `.vrp` files.
    #[arg(long, env = INSTANCE_DIR_ENV, default_value = "instances")]
    instances: PathBuf,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Population size for both solvers.
    #[arg(long)]
    pop: Option<usize>,
    /// Evaluation budget for both solvers.
    #[arg(long)]
    budget: Option<u64>,
    /// MFCGA grid as ROWSxCOLS; must tile the population.
    #[arg(long)]
    grid: Option<String>,
    /// MFEA random mating probability.
    #[arg(long)]
    rmp: Option<f64>,
    /// Record wall-clock time per run (makes artifacts non-reproducible).
    #[arg(long)]
    timing: bool,
    /// Run the batch on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// One or more `*_results.csv` files.
    #[arg(long, num_args = 1.., required = true)]
    results: Vec<PathBuf>,
    /// `instance,optimum` CSV; defaults to the bundled table.
    #[arg(long)]
    optima: Option<PathBuf>,
    /// Also write summary.csv / comparison.csv here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimilarityArgs {
    #[arg(long, env = INSTANCE_DIR_ENV, default_value = "instances")]
    instances: PathBuf,
    /// Comma-separated instance names; all twelve by default.
    #[arg(long, value_delimiter = ',')]
    names: Vec<String>,
    /// Directory with `<name>.sol` files for the solution-overlap table.
    #[arg(long)]
    solutions: Option<PathBuf>,
    /// Write client_overlap.csv (and solution_overlap.csv) here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HeatmapArgs {
    /// Ledger CSVs: per-run files are averaged, a mean file is used as is.
    #[arg(long, num_args = 1.., required = true)]
    ledger: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

/// Usage errors map to exit code 1.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn classify(e: HarnessError) -> anyhow::Error {
    if e.is_usage() {
        Usage(e.to_string()).into()
    } else {
        e.into()
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Near-square grid for a population size.
fn default_grid(n: usize) -> (usize, usize) {
    let mut rows = (n as f64).sqrt() as usize;
    while rows > 1 && !n.is_multiple_of(rows) {
        rows -= 1;
    }
    (rows.max(1), n / rows.max(1))
}

fn solve(args: SolveArgs) -> Result<()> {
    if args.runs == 0 {
        return Err(usage("--runs must be at least 1"));
    }
    let mut config = ExperimentConfig::new(&args.testcase, &args.instances);
    config.algo = match args.algo {
        AlgoArg::Mfea => AlgoChoice::Mfea,
        AlgoArg::Mfcga => AlgoChoice::Mfcga,
        AlgoArg::Both => AlgoChoice::Both,
    };
    config.runs = args.runs;
    config.base_seed = args.seed;
    config.record_wall_clock = args.timing;
    if args.sequential {
        config.execution = Execution::Sequential;
    }
    if let Some(n) = args.pop {
        config.mfea.population_size = n;
        config.mfcga.population_size = n;
        (config.mfcga.rows, config.mfcga.cols) = default_grid(n);
    }
    if let Some(grid) = &args.grid {
        (config.mfcga.rows, config.mfcga.cols) = parse_grid(grid).map_err(classify)?;
    }
    if let Some(b) = args.budget {
        config.mfea.evaluation_budget = b;
        config.mfcga.evaluation_budget = b;
    }
    if let Some(rmp) = args.rmp {
        config.mfea.rmp = rmp;
    }

    let output = run_experiment(&config).map_err(classify)?;
    let written = output.write_to(&args.out).map_err(classify)?;
    // Artifacts are already on disk; a summary that cannot be built (too
    // few runs for the rank-sum test) is not an error.
    match build_report(&output.result_rows(), Some(&known_optima())) {
        Ok(report) => print!("{}", report.render()),
        Err(e) => eprintln!("no summary: {e}"),
    }
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn report(args: ReportArgs) -> Result<()> {
    let mut rows: Vec<ResultRow> = Vec::new();
    for path in &args.results {
        rows.extend(read_csv::<ResultRow>(path).map_err(classify)?);
    }
    let optima = match &args.optima {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_optima(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => known_optima(),
    };
    let report = build_report(&rows, Some(&optima)).map_err(classify)?;
    print!("{}", report.render());
    if let Some(out) = &args.out {
        for path in report.write_to(out).map_err(classify)? {
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn print_matrix(title: &str, names: &[String], rows: &[OverlapRow]) {
    println!("{title}");
    print!("{:<10}", "");
    for n in names {
        print!(" {n:>10}");
    }
    println!();
    for (i, n) in names.iter().enumerate() {
        print!("{n:<10}");
        for r in &rows[i * names.len()..(i + 1) * names.len()] {
            print!(" {:>10.0}", r.overlap_pct);
        }
        println!();
    }
}

fn similarity(args: SimilarityArgs) -> Result<()> {
    let names: Vec<String> = if args.names.is_empty() {
        INSTANCES.iter().map(|s| s.to_string()).collect()
    } else {
        args.names
    };
    let instances = names
        .iter()
        .map(|n| load_instance(&args.instances, n))
        .collect::<Result<Vec<_>, _>>()
        .map_err(classify)?;
    let clients = client_overlap_table(&instances);
    print_matrix("client overlap (%)", &names, &clients);
    if let Some(out) = &args.out {
        std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        write_csv(&out.join("client_overlap.csv"), &clients).map_err(classify)?;
    }
    if let Some(dir) = &args.solutions {
        let solutions = instances
            .iter()
            .map(|inst| load_solution(&dir.join(format!("{}.sol", inst.name())), inst).map(|p| (inst.clone(), p)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(classify)?;
        let arcs = solution_overlap_table(&solutions);
        println!();
        print_matrix("solution overlap (%)", &names, &arcs);
        if let Some(out) = &args.out {
            write_csv(&out.join("solution_overlap.csv"), &arcs).map_err(classify)?;
        }
    }
    Ok(())
}

fn heatmap(args: HeatmapArgs) -> Result<()> {
    let mut rows: Vec<LedgerRow> = Vec::new();
    for path in &args.ledger {
        rows.extend(read_csv::<LedgerRow>(path).map_err(classify)?);
    }
    let (names, summary) = summary_from_ledger_rows(&rows).map_err(classify)?;
    let svg = render_svg(&names, &summary).map_err(classify)?;
    write_file(&args.out, &svg)?;
    eprintln!("wrote {}", args.out.display());
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Report(a) => report(a),
        Command::Similarity(a) => similarity(a),
        Command::Heatmap(a) => heatmap(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_are_near_square() {
        assert_eq!(default_grid(200), (10, 20));
        assert_eq!(default_grid(16), (4, 4));
        assert_eq!(default_grid(14), (2, 7));
        assert_eq!(default_grid(13), (1, 13));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
