//! Client-overlap and solution-overlap tables across instances.

use std::path::Path;

use serde::Serialize;

use super::HarnessError;
use crate::analysis::{client_overlap, solution_overlap};
use crate::encoding::RoutePlan;
use crate::instance::CvrpInstance;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapRow {
    pub row: String,
    pub col: String,
    pub overlap_pct: f64,
}

/// Every ordered pair, diagonal included (always 100).
pub fn client_overlap_table(instances: &[CvrpInstance]) -> Vec<OverlapRow> {
    let mut rows = Vec::new();
    for a in instances {
        for b in instances {
            rows.push(OverlapRow {
                row: a.name().to_string(),
                col: b.name().to_string(),
                overlap_pct: client_overlap(a, b),
            });
        }
    }
    rows
}

/// Arc overlap between best solutions for every ordered pair.
pub fn solution_overlap_table(solutions: &[(CvrpInstance, RoutePlan)]) -> Vec<OverlapRow> {
    let mut rows = Vec::new();
    for (ia, pa) in solutions {
        for (ib, pb) in solutions {
            rows.push(OverlapRow {
                row: ia.name().to_string(),
                col: ib.name().to_string(),
                overlap_pct: solution_overlap(ia, pa, ib, pb) as f64,
            });
        }
    }
    rows
}

/// Reads a CVRPLIB-style solution (`Route #1: 3 5 2` lines; a trailing
/// `Cost` line is ignored). Client numbers are 1-based with the depot
/// omitted, matching internal client ids.
pub fn parse_solution(text: &str, instance: &CvrpInstance, path: &Path) -> Result<RoutePlan, HarnessError> {
    let mut routes = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.to_ascii_lowercase().starts_with("cost") {
            continue;
        }
        let syntax = || HarnessError::SolutionSyntax {
            path: path.to_path_buf(),
            line: idx + 1,
            text: line.to_string(),
        };
        let (head, body) = line.split_once(':').ok_or_else(syntax)?;
        if !head.trim_start().to_ascii_lowercase().starts_with("route") {
            return Err(syntax());
        }
        let route = body
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| syntax()))
            .collect::<Result<Vec<_>, _>>()?;
        if !route.is_empty() {
            routes.push(route);
        }
    }
    RoutePlan::from_routes(routes, instance).map_err(|source| HarnessError::Solution {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_solution(path: &Path, instance: &CvrpInstance) -> Result<RoutePlan, HarnessError> {
    if !path.is_file() {
        return Err(HarnessError::MissingSolution(path.to_path_buf()));
    }
    let text = std::fs::read_to_string(path).map_err(super::io_err(path))?;
    parse_solution(&text, instance, path)
}
