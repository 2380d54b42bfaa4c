//! Comparative and similarity analytics over finished runs.

use std::collections::{HashMap, HashSet};

use statrs::distribution::{ContinuousCDF, Normal};
use thiserror::Error;

use crate::encoding::RoutePlan;
use crate::instance::CvrpInstance;
use crate::mfcga::TransferLedger;

pub const ALPHA: f64 = 0.05;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("rank-sum test needs at least 3 observations per sample (got {0} and {1})")]
    SampleTooSmall(usize, usize),
    #[error("no ledgers to aggregate")]
    NoLedgers,
    #[error("ledgers disagree on task count ({0} vs {1})")]
    LedgerShape(usize, usize),
}

/// Which sample tends to the smaller values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    First,
    Second,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignificanceVerdict {
    /// Rank sum of the first sample.
    pub statistic: f64,
    pub p_value: f64,
    pub significant: bool,
    pub direction: Direction,
    pub exact: bool,
}

/// Midranks (1-based) of the pooled sample, plus the tie-group sizes.
fn midranks(pooled: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && pooled[order[j]] == pooled[order[i]] {
            j += 1;
        }
        let rank = (i + 1 + j) as f64 / 2.0;
        for &idx in &order[i..j] {
            ranks[idx] = rank;
        }
        if j - i > 1 {
            ties.push(j - i);
        }
        i = j;
    }
    (ranks, ties)
}

/// Number of `m`-subsets of `{1..n}` for every possible rank sum.
fn rank_sum_counts(n: usize, m: usize) -> Vec<f64> {
    let max_sum = m * (2 * n - m + 1) / 2;
    // counts[j][s]: subsets of size j with sum s, built item by item.
    let mut counts = vec![vec![0.0f64; max_sum + 1]; m + 1];
    counts[0][0] = 1.0;
    for item in 1..=n {
        for j in (1..=m.min(item)).rev() {
            for s in (item..=max_sum).rev() {
                counts[j][s] += counts[j - 1][s - item];
            }
        }
    }
    counts.swap_remove(m)
}

struct Prepared {
    w: f64,
    n1: usize,
    n2: usize,
    ties: Vec<usize>,
    direction: Direction,
}

fn prepare(xs: &[f64], ys: &[f64]) -> Result<Prepared, AnalysisError> {
    let (n1, n2) = (xs.len(), ys.len());
    if n1 < 3 || n2 < 3 {
        return Err(AnalysisError::SampleTooSmall(n1, n2));
    }
    let pooled: Vec<f64> = xs.iter().chain(ys).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let w: f64 = ranks[..n1].iter().sum();
    let mean_x = w / n1 as f64;
    let mean_y = ranks[n1..].iter().sum::<f64>() / n2 as f64;
    let direction = if mean_x < mean_y {
        Direction::First
    } else if mean_y < mean_x {
        Direction::Second
    } else {
        Direction::Neither
    };
    Ok(Prepared {
        w,
        n1,
        n2,
        ties,
        direction,
    })
}

fn verdict(p: &Prepared, p_value: f64, exact: bool) -> SignificanceVerdict {
    let p_value = p_value.clamp(0.0, 1.0);
    SignificanceVerdict {
        statistic: p.w,
        p_value,
        significant: p_value < ALPHA,
        direction: p.direction,
        exact,
    }
}

/// Two-sided exact test on the rank-sum distribution. Only valid without ties.
pub fn wilcoxon_exact(xs: &[f64], ys: &[f64]) -> Result<SignificanceVerdict, AnalysisError> {
    let p = prepare(xs, ys)?;
    let n = p.n1 + p.n2;
    let counts = rank_sum_counts(n, p.n1);
    let total: f64 = counts.iter().sum();
    let w = p.w.round() as usize;
    let lower: f64 = counts[..=w.min(counts.len() - 1)].iter().sum();
    let upper: f64 = counts[w.min(counts.len())..].iter().sum();
    let p_value = (2.0 * lower.min(upper) / total).min(1.0);
    Ok(verdict(&p, p_value, true))
}

/// Two-sided normal approximation with tie-corrected variance and
/// continuity correction.
pub fn wilcoxon_normal(xs: &[f64], ys: &[f64]) -> Result<SignificanceVerdict, AnalysisError> {
    let p = prepare(xs, ys)?;
    let (n1, n2) = (p.n1 as f64, p.n2 as f64);
    let n = n1 + n2;
    let u = p.w - n1 * (n1 + 1.0) / 2.0;
    let mean = n1 * n2 / 2.0;
    let tie_term: f64 = p.ties.iter().map(|&t| (t * t * t - t) as f64).sum();
    let var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return Ok(verdict(&p, 1.0, false));
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    Ok(verdict(&p, 2.0 * normal.sf(z), false))
}

/// Wilcoxon rank-sum (Mann-Whitney) test, two-sided at [`ALPHA`]. Uses the
/// exact distribution when the smaller sample has at most 10 observations
/// and there are no ties, the normal approximation otherwise.
pub fn wilcoxon_rank_sum(xs: &[f64], ys: &[f64]) -> Result<SignificanceVerdict, AnalysisError> {
    let p = prepare(xs, ys)?;
    if p.ties.len() == 1 && p.ties[0] == p.n1 + p.n2 {
        return Ok(verdict(&p, 1.0, false));
    }
    if p.n1.min(p.n2) <= 10 && p.ties.is_empty() {
        wilcoxon_exact(xs, ys)
    } else {
        wilcoxon_normal(xs, ys)
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Outcome of comparing two algorithms by mean cost (minimisation).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Better,
    Similar,
    Worse,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Better => "better",
            Sign::Similar => "similar",
            Sign::Worse => "worse",
        }
    }
}

pub fn sign_of_means(first: f64, second: f64) -> Sign {
    const EPS: f64 = 1e-9;
    if (first - second).abs() <= EPS {
        Sign::Similar
    } else if first < second {
        Sign::Better
    } else {
        Sign::Worse
    }
}

/// Sign of `primary` against `baseline` for each instance, by mean cost.
pub fn compare_signs(primary: &[Vec<f64>], baseline: &[Vec<f64>]) -> Vec<Sign> {
    primary
        .iter()
        .zip(baseline)
        .map(|(a, b)| sign_of_means(mean(a), mean(b)))
        .collect()
}

/// Percentage of `b`'s clients whose coordinates also belong to one of
/// `a`'s clients.
pub fn client_overlap(a: &CvrpInstance, b: &CvrpInstance) -> f64 {
    let known: HashSet<(i64, i64)> = a.coords()[1..].iter().copied().collect();
    let shared = b.coords()[1..].iter().filter(|c| known.contains(c)).count();
    100.0 * shared as f64 / b.n_clients() as f64
}

fn arcs(plan: &RoutePlan) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for route in plan.routes() {
        let mut prev = 0;
        for &c in route {
            out.push((prev.min(c), prev.max(c)));
            prev = c;
        }
        out.push((0, prev));
    }
    out
}

/// Percentage (rounded down) of `plan_b`'s undirected arcs, depot arcs
/// included, that also appear in `plan_a`. Clients are identified across
/// instances by coordinates; the depots are identified with each other.
pub fn solution_overlap(inst_a: &CvrpInstance, plan_a: &RoutePlan, inst_b: &CvrpInstance, plan_b: &RoutePlan) -> u32 {
    let by_coord: HashMap<(i64, i64), usize> = inst_a
        .coords()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (c, i))
        .collect();
    let to_a = |c: usize| -> Option<usize> {
        if c == 0 {
            Some(0)
        } else {
            by_coord.get(&inst_b.coords()[c]).copied()
        }
    };
    let in_a: HashSet<(usize, usize)> = arcs(plan_a).into_iter().collect();
    let b_arcs = arcs(plan_b);
    if b_arcs.is_empty() {
        return 0;
    }
    let shared = b_arcs
        .iter()
        .filter(|&&(u, v)| match (to_a(u), to_a(v)) {
            (Some(x), Some(y)) => in_a.contains(&(x.min(y), x.max(y))),
            _ => false,
        })
        .count();
    (100 * shared / b_arcs.len()) as u32
}

/// Element-wise mean of several runs' ledgers.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferSummary {
    pub crossover: Vec<Vec<f64>>,
    pub mutation: Vec<f64>,
    pub runs: usize,
}

impl TransferSummary {
    pub fn k(&self) -> usize {
        self.mutation.len()
    }

    pub fn intra(&self, t: usize) -> f64 {
        self.crossover[t][t]
    }

    pub fn inter_into(&self, t: usize) -> f64 {
        (0..self.k()).filter(|&s| s != t).map(|s| self.crossover[t][s]).sum()
    }

    /// Sum of off-diagonal entries whose target and source fall in
    /// different groups, and the sum of all off-diagonal entries.
    pub fn cross_group(&self, group: &[usize]) -> (f64, f64) {
        let mut cross = 0.0;
        let mut inter = 0.0;
        for t in 0..self.k() {
            for s in 0..self.k() {
                if s == t {
                    continue;
                }
                inter += self.crossover[t][s];
                if group[t] != group[s] {
                    cross += self.crossover[t][s];
                }
            }
        }
        (cross, inter)
    }
}

pub fn aggregate_transfer(ledgers: &[TransferLedger]) -> Result<TransferSummary, AnalysisError> {
    let first = ledgers.first().ok_or(AnalysisError::NoLedgers)?;
    let k = first.k();
    let mut crossover = vec![vec![0.0; k]; k];
    let mut mutation = vec![0.0; k];
    for l in ledgers {
        if l.k() != k {
            return Err(AnalysisError::LedgerShape(k, l.k()));
        }
        for t in 0..k {
            mutation[t] += l.mutation[t] as f64;
            for (acc, &n) in crossover[t].iter_mut().zip(&l.crossover[t]) {
                *acc += n as f64;
            }
        }
    }
    let runs = ledgers.len() as f64;
    crossover.iter_mut().flatten().for_each(|v| *v /= runs);
    mutation.iter_mut().for_each(|v| *v /= runs);
    Ok(TransferSummary {
        crossover,
        mutation,
        runs: ledgers.len(),
    })
}
