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

//! Detection of two polarized communities in signed networks.
//!
//! Finds disjoint vertex sets `S₁`, `S₂` that are internally friendly and
//! mutually antagonistic by maximizing the polarity `xᵀAx / xᵀx` over
//! `x ∈ {-1, 0, 1}ⁿ`. The spectral detectors round the leading eigenvector of
//! the signed adjacency matrix; baselines, a planted-community generator, an
//! exhaustive oracle and an experiment harness are included.
//!
//! ```
//! use polarsign::{eigensign_sweep, leading_eigenpair, SignedGraph, Sign, SpectralConfig};
//!
//! let g = SignedGraph::from_edges(&[(0, 1, Sign::Positive), (1, 2, Sign::Negative)]).unwrap();
//! let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
//! let sweep = eigensign_sweep(&g, &spec);
//! assert!(sweep.best.support_size() > 0);
//! ```

pub mod assignment;
pub mod baselines;
pub mod deadline;
pub mod detect;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod metrics;
pub mod oracle;
pub mod seeds;
pub mod spectral;
pub mod synth;

pub use assignment::Assignment;
pub use baselines::{bansal, greedy_peel, local_search, pick_an_edge, BansalConfig, LocalSearchConfig, PickRule};
pub use deadline::Deadline;
pub use detect::{best_of, eigensign, eigensign_sweep, random_eigensign, BestOf, Scale, SweepPoint, SweepResult};
pub use error::{PolarError, Result};
pub use graph::{BuildOptions, DuplicatePolicy, GraphStats, Sign, SignedGraph};
pub use harness::{Algorithm, Report, RunOptions};
pub use io::{load_edge_list, EdgeListFormat, LoadOptions, SymmetrizePolicy};
pub use metrics::{ccbar, edge_agreement_ratio, evaluate, f1, polarity, EvalScores, F1Score, GroundTruth, Polarity};
pub use oracle::{enumerate_opt, expected_value_mc, OracleResult};
pub use spectral::{leading_eigenpair, Backend, SpectralConfig, SpectralResult};
pub use synth::{augment, augment_with, generate_planted, Attach, DummyDegree, PlantedSpec};
