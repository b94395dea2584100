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

use rayon::prelude::*;
use serde::Serialize;

use super::{Algorithm, RunOptions, Workload};
use crate::error::{PolarError, Result};
use crate::seeds::derive_seed;
use crate::synth::{generate_planted, PlantedSpec};

/// Parameter varied across the grid; the other one is held fixed.
#[derive(Debug, Clone, PartialEq)]
pub enum GridAxis {
    Eta(Vec<f64>),
    NoiseVertices(Vec<usize>),
}

impl GridAxis {
    fn len(&self) -> usize {
        match self {
            GridAxis::Eta(v) => v.len(),
            GridAxis::NoiseVertices(v) => v.len(),
        }
    }

    fn param(&self, i: usize) -> f64 {
        match self {
            GridAxis::Eta(v) => v[i],
            GridAxis::NoiseVertices(v) => v[i] as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub axis: GridAxis,
    pub n_c: usize,
    /// Used when the axis is `Eta`.
    pub n_n: usize,
    /// Used when the axis is `NoiseVertices`.
    pub eta: f64,
    pub replicates: usize,
    pub algorithms: Vec<Algorithm>,
}

impl GridSpec {
    fn planted(&self, point: usize, seed: u64) -> PlantedSpec {
        match &self.axis {
            GridAxis::Eta(v) => PlantedSpec::new(self.n_c, self.n_n, v[point], seed),
            GridAxis::NoiseVertices(v) => PlantedSpec::new(self.n_c, v[point], self.eta, seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRow {
    pub param: f64,
    pub algorithm: String,
    pub mean_f1: f64,
    /// Sample standard deviation over replicates (0 for one replicate).
    pub std: f64,
    pub replicates: usize,
}

/// Mean F1 per grid point and algorithm over planted replicates.
///
/// Replicate `r` uses seed `derive_seed(opts.seed, r)` for both the graph and
/// the algorithms, at every grid point. Cells `(point, replicate)` run in
/// parallel; rows come out in grid order, then algorithm order.
pub fn grid_f1(spec: &GridSpec, opts: &RunOptions) -> Result<Vec<GridRow>> {
    if spec.axis.len() == 0 || spec.algorithms.is_empty() || spec.replicates == 0 {
        return Err(PolarError::invalid("grid, algorithm list and replicate count must be nonempty"));
    }
    let points = spec.axis.len();
    let algos = spec.algorithms.len();
    let cells: Vec<(usize, usize)> = (0..points)
        .flat_map(|p| (0..spec.replicates).map(move |r| (p, r)))
        .collect();
    let scores: Vec<Vec<f64>> = cells
        .par_iter()
        .map(|&(p, r)| {
            let seed = derive_seed(opts.seed, r as u64);
            let (g, gt) = generate_planted(&spec.planted(p, seed))?;
            let cell_opts = opts.with_seed(seed);
            let w = Workload::new(&g, "planted", Some(&gt));
            spec.algorithms
                .iter()
                .map(|a| Ok(w.run(a, &cell_opts)?.report.f1.unwrap_or(0.0)))
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(points * algos);
    for p in 0..points {
        for (a, algo) in spec.algorithms.iter().enumerate() {
            let xs: Vec<f64> = (0..spec.replicates)
                .map(|r| scores[p * spec.replicates + r][a])
                .collect();
            let k = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / k;
            let std = if xs.len() > 1 {
                (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0)).sqrt()
            } else {
                0.0
            };
            rows.push(GridRow {
                param: spec.axis.param(p),
                algorithm: algo.id().to_string(),
                mean_f1: mean,
                std,
                replicates: spec.replicates,
            });
        }
    }
    Ok(rows)
}
