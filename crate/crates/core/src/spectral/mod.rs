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

//! Leading (largest algebraic) eigenpair of the signed adjacency matrix.

mod lanczos;
mod power;
mod tridiag;

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::deadline::Deadline;
use crate::error::{PolarError, Result};
use crate::graph::SignedGraph;
use crate::seeds;

pub use tridiag::symmetric_tridiagonal_eigen;

/// Rows per parallel task; smaller graphs run the product sequentially.
const PAR_MIN_ROWS: usize = 32_768;

/// `y = A x`.
pub fn matvec(g: &SignedGraph, x: &[f64]) -> Result<Vec<f64>> {
    if x.len() != g.n() {
        return Err(PolarError::DimensionMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    let mut y = vec![0.0; g.n()];
    matvec_into(g, x, &mut y);
    Ok(y)
}

pub(crate) fn matvec_into(g: &SignedGraph, x: &[f64], y: &mut [f64]) {
    let offsets = g.row_offsets();
    let cols = g.col_indices();
    let signs = g.signs();
    let row = |i: usize| -> f64 {
        let (lo, hi) = (offsets[i], offsets[i + 1]);
        cols[lo..hi]
            .iter()
            .zip(&signs[lo..hi])
            .map(|(&j, &s)| s as f64 * x[j as usize])
            .sum()
    };
    if g.n() >= PAR_MIN_ROWS {
        y.par_iter_mut().enumerate().for_each(|(i, yi)| *yi = row(i));
    } else {
        y.iter_mut().enumerate().for_each(|(i, yi)| *yi = row(i));
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Power iteration on `A + σI`, `σ = 1 + max degree`.
    Power,
    /// Restarted Lanczos with full reorthogonalization.
    #[default]
    Lanczos,
}

impl std::str::FromStr for Backend {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(Backend::Power),
            "lanczos" => Ok(Backend::Lanczos),
            other => Err(PolarError::invalid(format!("unknown eigensolver backend '{other}'"))),
        }
    }
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Power => "power",
            Backend::Lanczos => "lanczos",
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SpectralConfig {
    /// Bound on `‖Av − λv‖₂` at convergence.
    pub tol: f64,
    /// Matrix-vector products allowed; `None` means `max(10·n, 10_000)`.
    pub max_iter: Option<usize>,
    pub seed: u64,
    pub backend: Backend,
    /// Krylov subspace size per Lanczos cycle.
    pub krylov_dim: usize,
    pub deadline: Deadline,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig {
            tol: 1e-10,
            max_iter: None,
            seed: 0,
            backend: Backend::default(),
            krylov_dim: 40,
            deadline: Deadline::none(),
        }
    }
}

impl SpectralConfig {
    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn iteration_budget(&self, n: usize) -> usize {
        self.max_iter.unwrap_or_else(|| (10 * n).max(10_000))
    }
}

/// Leading eigenpair with solver diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub lambda1: f64,
    /// Unit eigenvector; its first nonzero entry is positive.
    pub v: Vec<f64>,
    /// Matrix-vector products spent.
    pub iterations: usize,
    /// `‖Av − λ₁v‖₂`.
    pub residual: f64,
    pub backend: Backend,
    /// The graph had no edges: `A = 0`, `λ₁ = 0`, `v = e₀`.
    pub edgeless: bool,
}

impl SpectralResult {
    pub fn l1_norm(&self) -> f64 {
        self.v.iter().map(|x| x.abs()).sum()
    }

    /// Wraps a known eigenvector (used by tests and external solvers).
    /// Normalizes and canonicalizes `v`; `λ₁` is its Rayleigh quotient.
    pub fn from_vector(g: &SignedGraph, mut v: Vec<f64>) -> Result<Self> {
        let nv = norm(&v);
        if v.len() != g.n() {
            return Err(PolarError::DimensionMismatch {
                expected: g.n(),
                got: v.len(),
            });
        }
        if nv == 0.0 || !nv.is_finite() {
            return Err(PolarError::invalid("vector must be nonzero and finite"));
        }
        v.iter_mut().for_each(|x| *x /= nv);
        canonicalize_sign(&mut v);
        let av = matvec(g, &v)?;
        let lambda1 = dot(&v, &av);
        let residual = residual_norm(&av, &v, lambda1);
        Ok(SpectralResult {
            lambda1,
            v,
            iterations: 1,
            residual,
            backend: Backend::default(),
            edgeless: g.m() == 0,
        })
    }
}

/// Computes the eigenpair of `A` with the largest algebraic eigenvalue.
///
/// When `λ₁` is degenerate the returned vector is some unit vector of the
/// leading eigenspace, fixed by the seeded start vector.
pub fn leading_eigenpair(g: &SignedGraph, cfg: &SpectralConfig) -> Result<SpectralResult> {
    let n = g.n();
    if n == 0 {
        return Err(PolarError::invalid("eigenpair of an empty (n = 0) graph"));
    }
    if !(cfg.tol > 0.0) {
        return Err(PolarError::invalid("tolerance must be positive"));
    }
    if g.m() == 0 {
        let mut v = vec![0.0; n];
        v[0] = 1.0;
        return Ok(SpectralResult {
            lambda1: 0.0,
            v,
            iterations: 0,
            residual: 0.0,
            backend: cfg.backend,
            edgeless: true,
        });
    }
    let start = start_vector(n, cfg.seed);
    let raw = match cfg.backend {
        Backend::Power => power::solve(g, start, cfg)?,
        Backend::Lanczos => lanczos::solve(g, start, cfg)?,
    };
    Ok(finish(g, raw, cfg))
}

/// Uniform random point on the unit sphere.
fn start_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = seeds::rng(seed);
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let nv = norm(&v);
        if nv > 0.0 {
            v.iter_mut().for_each(|x| *x /= nv);
            return v;
        }
    }
}

pub(crate) struct RawEigenpair {
    pub lambda: f64,
    pub v: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

pub(crate) fn residual_norm(av: &[f64], v: &[f64], lambda: f64) -> f64 {
    av.iter()
        .zip(v)
        .map(|(a, x)| (a - lambda * x).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Entries below this are indistinguishable from zero given the residual
/// bound, and are snapped to exactly zero so that `sign(0) = 0` applies.
fn snap_threshold(tol: f64) -> f64 {
    10.0 * tol
}

/// Snaps round-off entries to zero, renormalizes and fixes the global sign.
fn finish(g: &SignedGraph, raw: RawEigenpair, cfg: &SpectralConfig) -> SpectralResult {
    let RawEigenpair {
        lambda,
        mut v,
        residual,
        mut iterations,
    } = raw;
    let threshold = snap_threshold(cfg.tol);
    let mut result = (lambda, residual);
    if v.iter().any(|&x| x != 0.0 && x.abs() < threshold) {
        let mut snapped: Vec<f64> = v
            .iter()
            .map(|&x| if x.abs() < threshold { 0.0 } else { x })
            .collect();
        let ns = norm(&snapped);
        snapped.iter_mut().for_each(|x| *x /= ns);
        let mut av = vec![0.0; g.n()];
        matvec_into(g, &snapped, &mut av);
        iterations += 1;
        let lam = dot(&snapped, &av);
        let res = residual_norm(&av, &snapped, lam);
        if res <= cfg.tol {
            v = snapped;
            result = (lam, res);
        }
    }
    canonicalize_sign(&mut v);
    SpectralResult {
        lambda1: result.0,
        v,
        iterations,
        residual: result.1,
        backend: cfg.backend,
        edgeless: false,
    }
}

/// Makes the first nonzero component positive.
pub(crate) fn canonicalize_sign(v: &mut [f64]) {
    if let Some(&first) = v.iter().find(|&&x| x != 0.0) {
        if first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}
