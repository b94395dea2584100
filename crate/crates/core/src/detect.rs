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

//! Spectral rounding detectors: deterministic sign rounding, its threshold
//! sweep, and randomized rounding with best-of-K restarts.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::{sign, Assignment};
use crate::graph::SignedGraph;
use crate::metrics::{polarity_ratio, Polarity};
use crate::seeds;
use crate::spectral::SpectralResult;

/// `x_i = sign(v_i)`.
pub fn eigensign(spec: &SpectralResult) -> Assignment {
    Assignment::signs_of(&spec.v)
}

/// Magnitudes are compared after rounding to this many steps per unit.
const TAU_SCALE: f64 = 1000.0;

fn tau_key(v: f64) -> u32 {
    (v.abs() * TAU_SCALE).round() as u32
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub tau: f64,
    pub polarity: f64,
    pub agreement_ratio: f64,
    /// `|S₁ ∪ S₂|`
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub best: Assignment,
    pub tau_best: f64,
    /// One point per candidate threshold, ascending in `tau`.
    pub curve: Vec<SweepPoint>,
}

/// Thresholded sign rounding over every candidate `τ`.
///
/// Vertex `i` is kept when `round(|v_i|, 3) ≥ τ`, with `x_i = sign(v_i)`.
/// Candidates are 0 and every distinct rounded magnitude. Vertices are added
/// in decreasing magnitude so each threshold costs only the degrees of the
/// newly admitted vertices. Ties in polarity go to the larger `τ`.
pub fn eigensign_sweep(g: &SignedGraph, spec: &SpectralResult) -> SweepResult {
    let n = g.n();
    assert_eq!(spec.v.len(), n, "eigenvector length must equal the vertex count");
    let keys: Vec<u32> = spec.v.iter().map(|&x| tau_key(x)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[b].cmp(&keys[a]).then(a.cmp(&b)));

    let mut xs = vec![0i8; n];
    let mut quad = 0i64;
    let mut size = 0u64;
    let (mut agree, mut total) = (0u64, 0u64);
    let mut curve = Vec::new();
    let mut best: Option<(Polarity, u32)> = None;

    let mut pos = 0;
    loop {
        let key = if pos < n { keys[order[pos]] } else { 0 };
        while pos < n && keys[order[pos]] == key {
            let i = order[pos];
            let s = sign(spec.v[i]);
            pos += 1;
            if s == 0 {
                continue;
            }
            let mut field = 0i64;
            for (j, a) in g.neighbors(i) {
                let xj = xs[j];
                if xj != 0 {
                    field += (a * xj) as i64;
                    total += 1;
                    if a * xj * s == 1 {
                        agree += 1;
                    }
                }
            }
            quad += 2 * s as i64 * field;
            size += 1;
            xs[i] = s;
        }
        let p = Polarity::new(quad, size);
        curve.push(SweepPoint {
            tau: key as f64 / TAU_SCALE,
            polarity: p.value(),
            agreement_ratio: if total == 0 { 1.0 } else { agree as f64 / total as f64 },
            size: size as usize,
        });
        if best.is_none_or(|(b, _)| p > b) {
            best = Some((p, key));
        }
        if key == 0 {
            break;
        }
    }
    curve.reverse();
    let (_, best_key) = best.expect("at least the τ = 0 candidate");
    let best = Assignment::new(
        spec.v
            .iter()
            .zip(&keys)
            .map(|(&x, &k)| if k >= best_key { sign(x) } else { 0 })
            .collect(),
    )
    .expect("signs are in range");
    SweepResult {
        best,
        tau_best: best_key as f64 / TAU_SCALE,
        curve,
    }
}

/// Inclusion probabilities for randomized rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    /// `p_i = |v_i|`
    None,
    /// `p_i = min(1, ‖v‖₁·|v_i|)`
    #[default]
    L1,
}

impl std::str::FromStr for Scale {
    type Err = crate::error::PolarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Scale::None),
            "l1" => Ok(Scale::L1),
            other => Err(crate::error::PolarError::invalid(format!("unknown scale '{other}'"))),
        }
    }
}

impl std::fmt::Display for Scale {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scale::None => "none",
            Scale::L1 => "l1",
        })
    }
}

pub fn inclusion_probabilities(spec: &SpectralResult, scale: Scale) -> Vec<f64> {
    let factor = match scale {
        Scale::None => 1.0,
        Scale::L1 => spec.l1_norm(),
    };
    spec.v.iter().map(|x| (factor * x.abs()).min(1.0)).collect()
}

fn round_with(spec: &SpectralResult, probs: &[f64], rng: &mut impl Rng) -> Assignment {
    let x = spec
        .v
        .iter()
        .zip(probs)
        .map(|(&v, &p)| {
            let u: f64 = rng.random();
            if u < p {
                sign(v)
            } else {
                0
            }
        })
        .collect();
    Assignment::new(x).expect("signs are in range")
}

/// Randomized rounding: independently, `x_i = sign(v_i)` with probability
/// `p_i` and 0 otherwise.
pub fn random_eigensign(spec: &SpectralResult, scale: Scale, seed: u64) -> Assignment {
    random_eigensign_trial(spec, scale, seed, 0)
}

/// Trial `trial` of the randomized rounding keyed by `seed`; trial 0 is
/// [`random_eigensign`] itself.
pub fn random_eigensign_trial(spec: &SpectralResult, scale: Scale, seed: u64, trial: u64) -> Assignment {
    let probs = inclusion_probabilities(spec, scale);
    round_with(spec, &probs, &mut seeds::stream_rng(seed, trial))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestOf {
    pub best: Assignment,
    pub best_trial: usize,
    pub polarity: f64,
    /// Polarity of every trial, in trial order.
    pub samples: Vec<f64>,
    /// Variance over mean of `samples` (0 when the mean is 0).
    pub dispersion: f64,
}

/// Best of `runs` independent randomized roundings by polarity.
///
/// Trials run in parallel on seeds `(seed, trial)`; the result depends only
/// on `seed` and `runs`. A nonempty solution is preferred over an empty one
/// regardless of polarity; remaining ties go to the lowest trial index.
pub fn best_of(g: &SignedGraph, spec: &SpectralResult, runs: usize, scale: Scale, seed: u64) -> BestOf {
    let runs = runs.max(1);
    let probs = inclusion_probabilities(spec, scale);
    let trials: Vec<(Polarity, bool)> = (0..runs as u64)
        .into_par_iter()
        .map(|t| {
            let x = round_with(spec, &probs, &mut seeds::stream_rng(seed, t));
            (polarity_ratio(g, &x), x.support_size() > 0)
        })
        .collect();
    let mut best_trial = 0;
    for (t, cand) in trials.iter().enumerate().skip(1) {
        let cur = &trials[best_trial];
        if (cand.1, cand.0) > (cur.1, cur.0) {
            best_trial = t;
        }
    }
    let samples: Vec<f64> = trials.iter().map(|(p, _)| p.value()).collect();
    let best = round_with(spec, &probs, &mut seeds::stream_rng(seed, best_trial as u64));
    BestOf {
        polarity: samples[best_trial],
        best,
        best_trial,
        dispersion: index_of_dispersion(&samples),
        samples,
    }
}

/// Population variance divided by the mean.
pub fn index_of_dispersion(samples: &[f64]) -> f64 {
    if samples.is_empty() {
        return 0.0;
    }
    let k = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / k;
    if mean == 0.0 {
        return 0.0;
    }
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / k;
    var / mean
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{BuildOptions, Sign::*};
    use crate::metrics::polarity;
    use crate::spectral::{leading_eigenpair, SpectralConfig};

    fn spectral(g: &SignedGraph) -> SpectralResult {
        leading_eigenpair(g, &SpectralConfig::default()).unwrap()
    }

    #[test]
    fn single_negative_edge() {
        let g = SignedGraph::from_edges(&[(0, 1, Negative)]).unwrap();
        let spec = spectral(&g);
        let x = eigensign(&spec);
        assert_eq!(x.as_slice(), &[1, -1]);
        assert_eq!(polarity(&g, &x), 1.0);
    }

    #[test]
    fn sweep_on_constant_magnitude_has_two_candidates() {
        let g = SignedGraph::from_edges(&[(0, 1, Positive), (1, 2, Negative), (0, 2, Negative)]).unwrap();
        let h = 1.0 / 3f64.sqrt();
        let spec = SpectralResult::from_vector(&g, vec![h, h, -h]).unwrap();
        let sweep = eigensign_sweep(&g, &spec);
        assert_eq!(sweep.curve.len(), 2);
        assert_eq!(sweep.curve[0].tau, 0.0);
        assert_eq!(sweep.curve[1].tau, 0.577);
        assert!(sweep.curve.iter().all(|p| p.size == 3));
        assert_eq!(sweep.tau_best, 0.577);
        assert_eq!(sweep.best.as_slice(), &[1, 1, -1]);
    }

    #[test]
    fn sweep_threshold_drops_small_entries() {
        // 0 and 2 antagonistic; 1 weakly attached to both.
        let g = SignedGraph::from_edges(&[(0, 2, Negative), (0, 1, Positive), (1, 2, Negative)]).unwrap();
        let spec = SpectralResult::from_vector(&g, vec![0.9, 0.1, -0.9]).unwrap();
        let sweep = eigensign_sweep(&g, &spec);
        let taus: Vec<f64> = sweep.curve.iter().map(|p| p.tau).collect();
        assert_eq!(taus.len(), 3);
        assert!(taus.windows(2).all(|w| w[0] < w[1]));
        let top = sweep.curve.last().unwrap();
        assert!(top.tau > 0.1);
        assert_eq!(top.size, 2);
        assert_eq!(sweep.curve[0].size, 3);
    }

    #[test]
    fn best_of_one_matches_single_call() {
        let g = SignedGraph::from_edges(&[(0, 1, Positive), (1, 2, Negative), (2, 3, Positive), (0, 3, Negative)])
            .unwrap();
        let spec = spectral(&g);
        for seed in 0..5 {
            let b = best_of(&g, &spec, 1, Scale::None, seed);
            assert_eq!(b.best, random_eigensign(&spec, Scale::None, seed));
            assert_eq!(b.dispersion, 0.0);
        }
    }

    #[test]
    fn deterministic_probabilities_ignore_the_seed() {
        let g = SignedGraph::build(&[], BuildOptions { n: Some(1), ..Default::default() }).unwrap();
        let spec = spectral(&g);
        assert_eq!(spec.v, vec![1.0]);
        let first = random_eigensign(&spec, Scale::None, 0);
        for seed in 1..20 {
            assert_eq!(random_eigensign(&spec, Scale::None, seed), first);
        }
        let b = best_of(&g, &spec, 10, Scale::None, 3);
        assert_eq!(b.dispersion, 0.0);
    }

    #[test]
    fn best_of_prefers_nonempty_solutions() {
        // Positive triangle where every singleton and empty set scores 0.
        let g = SignedGraph::from_edges(&[(0, 1, Positive), (1, 2, Positive), (0, 2, Positive)]).unwrap();
        let spec = spectral(&g);
        let b = best_of(&g, &spec, 50, Scale::None, 11);
        assert!(b.best.support_size() > 0);
        assert_eq!(b.polarity, b.samples.iter().cloned().fold(f64::MIN, f64::max));
    }

    #[test]
    fn dispersion_of_known_samples() {
        assert_eq!(index_of_dispersion(&[2.0, 2.0, 2.0]), 0.0);
        assert!((index_of_dispersion(&[1.0, 3.0]) - 0.5).abs() < 1e-15);
        assert_eq!(index_of_dispersion(&[0.0, 0.0]), 0.0);
    }
}
