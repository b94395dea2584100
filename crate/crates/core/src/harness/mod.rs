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

//! Experiment runner: single runs, planted-recovery grids, scalability
//! sweeps and report emission.

mod grid;
mod output;
mod scale;

pub use grid::{grid_f1, GridAxis, GridRow, GridSpec};
pub use output::{write_rows, write_rows_to, OutputFormat};
pub use scale::{scalability_run, ScaleConfig, ScaleRow, TIMEOUT_MARKER};

use std::path::Path;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::assignment::Assignment;
use crate::baselines::{
    bansal_with, greedy_peel_trace, local_search_best_of, pick_an_edge, BansalConfig, LocalSearchConfig, PickRule,
};
use crate::deadline::Deadline;
use crate::detect::{best_of, eigensign, eigensign_sweep, Scale};
use crate::error::{PolarError, Result};
use crate::graph::SignedGraph;
use crate::io::{load_edge_list, LoadOptions};
use crate::metrics::{evaluate, GroundTruth};
use crate::spectral::{leading_eigenpair, SpectralConfig, SpectralResult};

/// Algorithm and its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    Eigensign,
    EigensignSweep,
    RandomEigensign { runs: usize, scale: Scale },
    PickAnEdge { rule: PickRule },
    Greedy,
    Bansal { sample: Option<usize> },
    LocalSearch { runs: usize, min_gain: f64, init_fraction: f64 },
}

impl Algorithm {
    /// `random-eigensign` with best-of-100 and L1 scaling.
    pub fn random_eigensign() -> Self {
        Algorithm::RandomEigensign {
            runs: 100,
            scale: Scale::L1,
        }
    }

    /// `local-search` with the default parameters and 100 restarts.
    pub fn local_search() -> Self {
        let d = LocalSearchConfig::default();
        Algorithm::LocalSearch {
            runs: 100,
            min_gain: d.min_gain,
            init_fraction: d.init_fraction,
        }
    }

    pub fn bansal() -> Self {
        Algorithm::Bansal { sample: None }
    }

    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::Eigensign => "eigensign",
            Algorithm::EigensignSweep => "eigensign-sweep",
            Algorithm::RandomEigensign { .. } => "random-eigensign",
            Algorithm::PickAnEdge { .. } => "pick-an-edge",
            Algorithm::Greedy => "greedy",
            Algorithm::Bansal { .. } => "bansal",
            Algorithm::LocalSearch { .. } => "local-search",
        }
    }

    /// Whether the algorithm reads the leading eigenvector.
    pub fn needs_spectrum(&self) -> bool {
        !matches!(self, Algorithm::PickAnEdge { .. } | Algorithm::Bansal { .. })
    }

    pub fn is_stochastic(&self) -> bool {
        matches!(
            self,
            Algorithm::RandomEigensign { .. }
                | Algorithm::LocalSearch { .. }
                | Algorithm::PickAnEdge { rule: PickRule::Seeded(_) }
                | Algorithm::Bansal { sample: Some(_) }
        )
    }

    /// The four baselines with their default parameters.
    pub fn baselines() -> Vec<Algorithm> {
        vec![
            Algorithm::PickAnEdge { rule: PickRule::First },
            Algorithm::Greedy,
            Algorithm::bansal(),
            Algorithm::local_search(),
        ]
    }
}

/// Settings shared by every run.
#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Master seed for every stochastic step.
    pub seed: u64,
    pub spectral: SpectralConfig,
    /// Per-algorithm wall-clock budget.
    pub timeout: Option<Duration>,
}

impl RunOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.spectral.seed = seed;
        self
    }

    fn deadline(&self) -> Deadline {
        self.timeout.map(Deadline::after).unwrap_or_default()
    }
}

/// One row per run. Flat so the CSV schema does not depend on the algorithm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub algorithm: String,
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub tau: Option<f64>,
    pub runs: Option<usize>,
    pub scale: Option<String>,
    pub min_gain: Option<f64>,
    pub init_fraction: Option<f64>,
    pub polarity: f64,
    pub s1_size: usize,
    pub s2_size: usize,
    pub normalized_size: f64,
    pub edge_agreement: f64,
    pub f1: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    /// Algorithm time plus the eigenpair time when the algorithm uses it.
    pub wall_clock_seconds: f64,
    pub eigen_seconds: Option<f64>,
    pub lambda1: Option<f64>,
    pub eigen_iterations: Option<usize>,
    pub eigen_residual: Option<f64>,
    pub backend: Option<String>,
    /// Index of dispersion of the per-trial polarities.
    pub dispersion: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub report: Report,
    pub solution: Assignment,
}

/// A graph plus its lazily computed, shared leading eigenpair.
pub struct Workload<'a> {
    pub graph: &'a SignedGraph,
    pub dataset: String,
    pub truth: Option<&'a GroundTruth>,
    spectrum: OnceLock<(SpectralResult, f64)>,
}

impl<'a> Workload<'a> {
    pub fn new(graph: &'a SignedGraph, dataset: impl Into<String>, truth: Option<&'a GroundTruth>) -> Self {
        Workload {
            graph,
            dataset: dataset.into(),
            truth,
            spectrum: OnceLock::new(),
        }
    }

    /// Leading eigenpair and the seconds spent computing it. Computed on
    /// first use; failures are not cached.
    pub fn spectrum(&self, opts: &RunOptions) -> Result<&(SpectralResult, f64)> {
        if let Some(s) = self.spectrum.get() {
            return Ok(s);
        }
        let mut cfg = opts.spectral;
        cfg.deadline = opts.deadline();
        let start = Instant::now();
        let spec = leading_eigenpair(self.graph, &cfg)?;
        let _ = self.spectrum.set((spec, start.elapsed().as_secs_f64()));
        Ok(self.spectrum.get().expect("just set"))
    }

    pub fn run(&self, algo: &Algorithm, opts: &RunOptions) -> Result<RunOutput> {
        run_on_workload(self, algo, opts)
    }
}

/// Loads an edge list and runs one algorithm on it.
pub fn run_detect(
    path: impl AsRef<Path>,
    load: LoadOptions,
    truth: Option<&GroundTruth>,
    algo: &Algorithm,
    opts: &RunOptions,
) -> Result<RunOutput> {
    let path = path.as_ref();
    let loaded = load_edge_list(path, load)?;
    let dataset = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Workload::new(&loaded.graph, dataset, truth).run(algo, opts)
}

/// Runs `algo` on an in-memory graph.
pub fn run_on_graph(
    g: &SignedGraph,
    dataset: &str,
    truth: Option<&GroundTruth>,
    algo: &Algorithm,
    opts: &RunOptions,
) -> Result<RunOutput> {
    Workload::new(g, dataset, truth).run(algo, opts)
}

fn run_on_workload(w: &Workload<'_>, algo: &Algorithm, opts: &RunOptions) -> Result<RunOutput> {
    let g = w.graph;
    if let Some(gt) = w.truth {
        if gt.n() != g.n() {
            return Err(PolarError::DimensionMismatch {
                expected: g.n(),
                got: gt.n(),
            });
        }
    }
    let spectrum = if algo.needs_spectrum() {
        Some(w.spectrum(opts)?)
    } else {
        None
    };
    let spec = spectrum.map(|s| &s.0);
    let deadline = opts.deadline();
    let seed = opts.seed;

    let mut tau = None;
    let mut runs_param = None;
    let mut scale_param = None;
    let mut min_gain_param = None;
    let mut init_param = None;
    let mut dispersion = None;

    let start = Instant::now();
    let solution = match *algo {
        Algorithm::Eigensign => eigensign(spec.expect("spectrum")),
        Algorithm::EigensignSweep => {
            let r = eigensign_sweep(g, spec.expect("spectrum"));
            tau = Some(r.tau_best);
            r.best
        }
        Algorithm::RandomEigensign { runs, scale } => {
            let r = best_of(g, spec.expect("spectrum"), runs, scale, seed);
            runs_param = Some(runs);
            scale_param = Some(scale.to_string());
            dispersion = Some(r.dispersion);
            r.best
        }
        Algorithm::PickAnEdge { rule } => {
            if g.m() == 0 {
                Assignment::zeros(g.n())
            } else {
                pick_an_edge(g, rule)?
            }
        }
        Algorithm::Greedy => greedy_peel_trace(g, spec.expect("spectrum"), deadline)?.best,
        Algorithm::Bansal { sample } => bansal_with(g, &BansalConfig { sample, seed, deadline })?,
        Algorithm::LocalSearch {
            runs,
            min_gain,
            init_fraction,
        } => {
            let cfg = LocalSearchConfig {
                seed,
                min_gain,
                init_fraction,
                deadline,
            };
            runs_param = Some(runs);
            min_gain_param = Some(min_gain);
            init_param = Some(init_fraction);
            local_search_best_of(g, spec.expect("spectrum"), &cfg, runs)?.best
        }
    };
    let algo_seconds = start.elapsed().as_secs_f64();

    let scores = evaluate(g, &solution, w.truth);
    let n = g.n();
    let report = Report {
        algorithm: algo.id().to_string(),
        dataset: w.dataset.clone(),
        n,
        m: g.m(),
        seed,
        tau,
        runs: runs_param,
        scale: scale_param,
        min_gain: min_gain_param,
        init_fraction: init_param,
        polarity: scores.polarity,
        s1_size: scores.s1_size,
        s2_size: scores.s2_size,
        normalized_size: if n == 0 { 0.0 } else { scores.size as f64 / n as f64 },
        edge_agreement: scores.agreement_ratio,
        f1: scores.f1.map(|f| f.f1),
        precision: scores.f1.map(|f| f.precision),
        recall: scores.f1.map(|f| f.recall),
        wall_clock_seconds: algo_seconds + spectrum.map_or(0.0, |s| s.1),
        eigen_seconds: spectrum.map(|s| s.1),
        lambda1: spec.map(|s| s.lambda1),
        eigen_iterations: spec.map(|s| s.iterations),
        eigen_residual: spec.map(|s| s.residual),
        backend: spec.map(|s| s.backend.to_string()),
        dispersion,
    };
    Ok(RunOutput { report, solution })
}
