// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Exhaustive reference solver and Monte Carlo estimates for small graphs.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::Assignment;
use crate::detect::{inclusion_probabilities, random_eigensign_trial, Scale};
use crate::error::{PolarError, Result};
use crate::graph::SignedGraph;
use crate::metrics::{polarity, Polarity};
use crate::spectral::SpectralResult;

pub const DEFAULT_CAP: usize = 14;

/// Digits fixed per parallel task.
const PREFIX_DIGITS: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub opt: f64,
    pub opt_ratio: Polarity,
    /// Canonical maximizer: first nonzero entry +1, then lexicographically
    /// smallest under `-1 < 0 < +1`.
    pub argmax: Assignment,
    /// Vectors visited, `3ⁿ`.
    pub evaluated: u64,
}

/// Exact maximum polarity over every nonzero `x ∈ {-1, 0, 1}ⁿ`.
///
/// Vectors are visited in reflected ternary Gray-code order, so each step
/// changes one coordinate by ±1 and `xᵀAx` is updated in `O(deg)`.
pub fn enumerate_opt(g: &SignedGraph, cap: usize) -> Result<OracleResult> {
    let n = g.n();
    if n > cap {
        return Err(PolarError::TooLarge { n, cap });
    }
    if n == 0 {
        return Ok(OracleResult {
            opt: 0.0,
            opt_ratio: Polarity::default(),
            argmax: Assignment::zeros(0),
            evaluated: 1,
        });
    }
    let prefix = PREFIX_DIGITS.min(n);
    let free = n - prefix;
    let tasks = 3u64.pow(prefix as u32);
    let best = (0..tasks)
        .into_par_iter()
        .map(|t| enumerate_block(g, free, t))
        .reduce_with(pick_better)
        .expect("at least one task")
        .expect("every block has a nonzero vector");
    let argmax = Assignment::new(best.1).expect("entries in range");
    Ok(OracleResult {
        opt: best.0.value(),
        opt_ratio: best.0,
        argmax,
        evaluated: 3u64.pow(n as u32),
    })
}

type Candidate = Option<(Polarity, Vec<i8>)>;

fn lex_cmp(a: &[i8], b: &[i8]) -> Ordering {
    a.cmp(b)
}

fn pick_better(a: Candidate, b: Candidate) -> Candidate {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => match a.0.cmp(&b.0) {
            Ordering::Greater => Some(a),
            Ordering::Less => Some(b),
            Ordering::Equal => {
                if lex_cmp(&b.1, &a.1) == Ordering::Less {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        },
    }
}

/// Enumerates the `3^free` vectors whose top `n - free` coordinates encode
/// `prefix` in base 3.
fn enumerate_block(g: &SignedGraph, free: usize, prefix: u64) -> Candidate {
    let n = g.n();
    let mut x = vec![-1i8; n];
    let mut p = prefix;
    for xi in x.iter_mut().skip(free) {
        *xi = (p % 3) as i8 - 1;
        p /= 3;
    }
    let mut field: Vec<i64> = (0..n)
        .map(|i| g.neighbors(i).map(|(j, a)| (a * x[j]) as i64).sum())
        .collect();
    let mut quad: i64 = (0..n).map(|i| x[i] as i64 * field[i]).sum();
    let mut size = x.iter().filter(|&&v| v != 0).count() as u64;
    let mut dir = vec![1i8; free];

    let mut best: Candidate = None;
    let consider = |x: &[i8], quad: i64, size: u64, best: &mut Candidate| {
        if size == 0 {
            return;
        }
        let p = Polarity::new(quad, size);
        let replace = match best {
            None => true,
            Some((b, bx)) => match p.cmp(b) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => lex_cmp(&canonical(x), bx) == Ordering::Less,
            },
        };
        if replace {
            *best = Some((p, canonical(x)));
        }
    };
    consider(&x, quad, size, &mut best);

    let total = 3u64.pow(free as u32);
    for k in 1..total {
        let mut i = 0;
        let mut kk = k;
        while kk % 3 == 0 {
            kk /= 3;
            i += 1;
        }
        let delta = dir[i];
        let old = x[i];
        let new = old + delta;
        if new == -1 || new == 1 {
            dir[i] = -dir[i];
        }
        quad += 2 * delta as i64 * field[i];
        x[i] = new;
        match (old, new) {
            (0, _) => size += 1,
            (_, 0) => size -= 1,
            _ => {}
        }
        for (j, a) in g.neighbors(i) {
            field[j] += (a * delta) as i64;
        }
        consider(&x, quad, size, &mut best);
    }
    best
}

fn canonical(x: &[i8]) -> Vec<i8> {
    match x.iter().find(|&&v| v != 0) {
        Some(&-1) => x.iter().map(|&v| -v).collect(),
        _ => x.to_vec(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub mean: f64,
    /// Standard error of the mean.
    pub stderr: f64,
    pub trials: usize,
}

/// Estimates `E[polarity]` of randomized rounding from `trials` independent
/// draws on streams `(seed, 0..trials)`.
pub fn expected_value_mc(
    g: &SignedGraph,
    spec: &SpectralResult,
    scale: Scale,
    trials: usize,
    seed: u64,
) -> Result<MonteCarlo> {
    if trials < 100 {
        return Err(PolarError::invalid("Monte Carlo estimates need at least 100 trials"));
    }
    let samples: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| polarity(g, &random_eigensign_trial(spec, scale, seed, t)))
        .collect();
    let k = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / k;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (k - 1.0);
    Ok(MonteCarlo {
        mean,
        stderr: (var / k).sqrt(),
        trials,
    })
}

/// True when every inclusion probability is 0 or 1, making the rounding
/// deterministic.
pub fn is_deterministic(spec: &SpectralResult, scale: Scale) -> bool {
    inclusion_probabilities(spec, scale)
        .iter()
        .all(|&p| p == 0.0 || p == 1.0)
}
