//! Experiment orchestration: test-case registry, seeded batch runs, CSV
//! artifacts, reports, similarity tables and transfer heatmaps.

pub mod heatmap;
pub mod registry;
pub mod report;
pub mod runner;
pub mod similarity;

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::encoding::{EncodingError, Task};
use crate::instance::{CvrpInstance, ParseError};
use crate::multitask::TaskSet;
use crate::solver::ConfigError;

/// Environment variable naming the directory holding the `.vrp` files.
pub const INSTANCE_DIR_ENV: &str = "MFCVRP_INSTANCES";

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown test case `{0}`")]
    UnknownTestCase(String),
    #[error("instance file not found: {}", .0.display())]
    MissingInstance(PathBuf),
    #[error("{}: {source}", path.display())]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("{}: {source}", path.display())]
    Solution {
        path: PathBuf,
        #[source]
        source: EncodingError,
    },
    #[error("{}: malformed solution line {line}: `{text}`", path.display())]
    SolutionSyntax { path: PathBuf, line: usize, text: String },
    #[error("solution file not found: {}", .0.display())]
    MissingSolution(PathBuf),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("instance {instance}: {mfcga} mfcga runs but {mfea} mfea runs")]
    RunCountMismatch {
        instance: String,
        mfcga: usize,
        mfea: usize,
    },
    #[error("no result rows found")]
    EmptyResults,
    #[error("transfer matrix is not square ({0} targets, {1} sources)")]
    NonSquare(usize, usize),
    #[error("invalid grid `{0}` (expected ROWSxCOLS)")]
    InvalidGrid(String),
}

impl HarnessError {
    /// Whether the error stems from bad user input rather than a failure
    /// while running.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            HarnessError::UnknownTestCase(_) | HarnessError::InvalidGrid(_) | HarnessError::Config(_)
        )
    }
}

pub(crate) fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> HarnessError + '_ {
    move |source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub(crate) fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> HarnessError + '_ {
    move |source| HarnessError::Csv {
        path: path.to_path_buf(),
        source,
    }
}

/// `<dir>/<name>.vrp`.
pub fn instance_path(dir: &Path, name: &str) -> PathBuf {
    dir.join(format!("{name}.vrp"))
}

pub fn load_instance(dir: &Path, name: &str) -> Result<CvrpInstance, HarnessError> {
    let path = instance_path(dir, name);
    if !path.is_file() {
        return Err(HarnessError::MissingInstance(path));
    }
    CvrpInstance::from_file(&path).map_err(|source| HarnessError::Parse { path, source })
}

pub fn load_taskset(dir: &Path, names: &[&str]) -> Result<TaskSet, HarnessError> {
    let tasks = names
        .iter()
        .map(|n| load_instance(dir, n).map(Task::new))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TaskSet::new(tasks))
}

/// Parses `ROWSxCOLS`.
pub fn parse_grid(text: &str) -> Result<(usize, usize), HarnessError> {
    let bad = || HarnessError::InvalidGrid(text.to_string());
    let (r, c) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    let rows: usize = r.trim().parse().map_err(|_| bad())?;
    let cols: usize = c.trim().parse().map_err(|_| bad())?;
    if rows == 0 || cols == 0 {
        return Err(bad());
    }
    Ok((rows, cols))
}
