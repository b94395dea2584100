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

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by graph construction, IO, solvers and experiment drivers.
#[derive(Debug, Error)]
pub enum PolarError {
    #[error("edge ({u}, {v}) appears with both signs")]
    ConflictingSign { u: usize, v: usize },
    #[error("edge ({u}, {v}) appears more than once")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("vertex {0} is unassigned; a full partition is required")]
    NotAPartition(usize),
    #[error("graph with {n} vertices exceeds the enumeration cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("deadline exceeded")]
    Timeout,
    #[error("serialization error: {0}")]
    Serialize(String),
}

impl PolarError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        PolarError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        PolarError::InvalidParameter(msg.into())
    }

    /// True for errors caused by bad user input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            PolarError::ConflictingSign { .. }
                | PolarError::DuplicateEdge { .. }
                | PolarError::SelfLoop(_)
                | PolarError::VertexOutOfRange { .. }
                | PolarError::Parse { .. }
                | PolarError::Io { .. }
                | PolarError::DimensionMismatch { .. }
                | PolarError::NotAPartition(_)
                | PolarError::TooLarge { .. }
                | PolarError::InvalidParameter(_)
                | PolarError::EmptyGraph
        )
    }
}

pub type Result<T, E = PolarError> = std::result::Result<T, E>;
