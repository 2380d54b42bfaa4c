//! Random initialisation, Order Crossover (OX) and 2-opt mutation.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::encoding::Genome;

/// Per-run random stream. ChaCha8 output is identical on every platform.
pub type RngStream = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> RngStream {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error("parents differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("cut points {0}..{1} invalid for length {2}")]
    BadCuts(usize, usize, usize),
}

/// Uniform random permutation of `1..=d_max` (Fisher-Yates).
pub fn random_genome<R: Rng + ?Sized>(rng: &mut R, d_max: usize) -> Genome {
    let mut perm: Vec<usize> = (1..=d_max).collect();
    perm.shuffle(rng);
    Genome::from_vec_unchecked(perm)
}

/// OX with random cut points `a <= b` drawn from `0..=L`.
pub fn order_crossover<R: Rng + ?Sized>(p1: &Genome, p2: &Genome, rng: &mut R) -> Result<Genome, OperatorError> {
    let len = p1.len();
    if p2.len() != len {
        return Err(OperatorError::LengthMismatch(len, p2.len()));
    }
    let x = rng.gen_range(0..=len);
    let y = rng.gen_range(0..=len);
    order_crossover_with_cuts(p1, p2, x.min(y), x.max(y))
}

/// Classical Davis OX: `child[a..b]` comes from `p1`; the remaining slots are
/// filled from position `b` onwards (wrapping) with `p2`'s values read from
/// position `b` onwards (wrapping), skipping those already placed.
pub fn order_crossover_with_cuts(p1: &Genome, p2: &Genome, a: usize, b: usize) -> Result<Genome, OperatorError> {
    let len = p1.len();
    if p2.len() != len {
        return Err(OperatorError::LengthMismatch(len, p2.len()));
    }
    if a > b || b > len {
        return Err(OperatorError::BadCuts(a, b, len));
    }
    if len == 0 {
        return Ok(p1.clone());
    }
    let (s1, s2) = (p1.as_slice(), p2.as_slice());
    let mut child = vec![0usize; len];
    let mut used = vec![false; len + 1];
    for i in a..b {
        child[i] = s1[i];
        used[s1[i]] = true;
    }
    let mut pos = b % len;
    for k in 0..len {
        let v = s2[(b + k) % len];
        if used[v] {
            continue;
        }
        child[pos] = v;
        used[v] = true;
        pos = (pos + 1) % len;
    }
    Ok(Genome::from_vec_unchecked(child))
}

/// One random 2-opt move: reverses `p[i..=j]` for uniformly drawn `i < j`.
pub fn two_opt_mutation<R: Rng + ?Sized>(p: &Genome, rng: &mut R) -> Genome {
    let len = p.len();
    if len < 2 {
        return p.clone();
    }
    let i = rng.gen_range(0..len);
    let mut j = rng.gen_range(0..len - 1);
    if j >= i {
        j += 1;
    }
    reverse_segment(p, i.min(j), i.max(j))
}

/// Copy of `p` with the inclusive segment `i..=j` reversed.
pub fn reverse_segment(p: &Genome, i: usize, j: usize) -> Genome {
    let mut v = p.as_slice().to_vec();
    v[i..=j].reverse();
    Genome::from_vec_unchecked(v)
}
