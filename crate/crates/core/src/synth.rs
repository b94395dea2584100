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

//! Synthetic benchmarks: planted polarized communities and dummy-vertex
//! augmentation of real graphs.

use rand::Rng;
use rand_distr::{Distribution, Geometric};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{PolarError, Result};
use crate::graph::{BuildOptions, Sign, SignedGraph};
use crate::metrics::GroundTruth;
use crate::seeds;

/// Noise densities below this are sampled by geometric skipping.
const SKIP_SAMPLING_BELOW: f64 = 0.25;

/// Parameters of the planted model.
///
/// Vertices `0..n_c` form `S₁`, `n_c..2n_c` form `S₂`, the remaining `n_n`
/// are noise. Within a community a pair is positive with probability `1-η`,
/// negative with `η/2`, absent with `η/2`; across the communities the roles
/// of the signs swap. Every pair touching a noise vertex is present with
/// probability `η` with a uniformly random sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlantedSpec {
    pub n_c: usize,
    pub n_n: usize,
    pub eta: f64,
    pub seed: u64,
}

impl PlantedSpec {
    pub fn new(n_c: usize, n_n: usize, eta: f64, seed: u64) -> Self {
        PlantedSpec { n_c, n_n, eta, seed }
    }

    pub fn n(&self) -> usize {
        2 * self.n_c + self.n_n
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_c == 0 {
            return Err(PolarError::invalid("community size n_c must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(PolarError::invalid("noise level eta must lie in [0, 1]"));
        }
        Ok(())
    }

    pub fn ground_truth(&self) -> GroundTruth {
        let s1: Vec<usize> = (0..self.n_c).collect();
        let s2: Vec<usize> = (self.n_c..2 * self.n_c).collect();
        GroundTruth::new(self.n(), &s1, &s2).expect("disjoint ranges")
    }
}

/// Unordered vertex pairs of one block of the model.
#[derive(Debug, Clone, Copy)]
enum PairSpace {
    /// All pairs `i < j` within `base..base + k`.
    Triangle { base: usize, k: usize },
    /// `rows × cols`, rows from `row_base`, columns from `col_base`.
    Rect {
        row_base: usize,
        rows: usize,
        col_base: usize,
        cols: usize,
    },
}

impl PairSpace {
    fn len(&self) -> u64 {
        match *self {
            PairSpace::Triangle { k, .. } => (k as u64 * k.saturating_sub(1) as u64) / 2,
            PairSpace::Rect { rows, cols, .. } => rows as u64 * cols as u64,
        }
    }

    fn for_each(&self, mut f: impl FnMut(usize, usize)) {
        match *self {
            PairSpace::Triangle { base, k } => {
                for i in 0..k {
                    for j in i + 1..k {
                        f(base + i, base + j);
                    }
                }
            }
            PairSpace::Rect {
                row_base,
                rows,
                col_base,
                cols,
            } => {
                for i in 0..rows {
                    for j in 0..cols {
                        f(row_base + i, col_base + j);
                    }
                }
            }
        }
    }

    /// Visits each pair independently with probability `p` in `O(p·len)`
    /// expected time, by jumping over geometrically distributed gaps.
    fn for_each_sampled(&self, p: f64, rng: &mut impl Rng, mut f: impl FnMut(usize, usize, &mut dyn FnMut() -> bool)) {
        let len = self.len();
        if p <= 0.0 || len == 0 {
            return;
        }
        let gap = Geometric::new(p).expect("0 < p ≤ 1");
        let mut idx: u64 = 0;
        // cursor into the triangle: row and first linear index of that row
        let (mut row, mut row_start) = (0usize, 0u64);
        loop {
            let skip = gap.sample(rng);
            idx = match idx.checked_add(skip) {
                Some(i) if i < len => i,
                _ => break,
            };
            let (u, v) = match *self {
                PairSpace::Triangle { base, k } => {
                    let mut row_len = (k - 1 - row) as u64;
                    while idx >= row_start + row_len {
                        row_start += row_len;
                        row += 1;
                        row_len = (k - 1 - row) as u64;
                    }
                    let col = row + 1 + (idx - row_start) as usize;
                    (base + row, base + col)
                }
                PairSpace::Rect {
                    row_base,
                    col_base,
                    cols,
                    ..
                } => (
                    row_base + (idx / cols as u64) as usize,
                    col_base + (idx % cols as u64) as usize,
                ),
            };
            let mut coin = || rng.random::<bool>();
            f(u, v, &mut coin);
            idx += 1;
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum BlockKind {
    Within,
    Across,
    Noise,
}

/// Samples a planted instance; the same spec always yields the same graph.
pub fn generate_planted(spec: &PlantedSpec) -> Result<(SignedGraph, GroundTruth)> {
    spec.validate()?;
    let (nc, nn, eta) = (spec.n_c, spec.n_n, spec.eta);
    let blocks = [
        (BlockKind::Within, PairSpace::Triangle { base: 0, k: nc }),
        (BlockKind::Within, PairSpace::Triangle { base: nc, k: nc }),
        (
            BlockKind::Across,
            PairSpace::Rect {
                row_base: 0,
                rows: nc,
                col_base: nc,
                cols: nc,
            },
        ),
        (BlockKind::Noise, PairSpace::Triangle { base: 2 * nc, k: nn }),
        (
            BlockKind::Noise,
            PairSpace::Rect {
                row_base: 0,
                rows: 2 * nc,
                col_base: 2 * nc,
                cols: nn,
            },
        ),
    ];
    let parts: Vec<Vec<(usize, usize, Sign)>> = blocks
        .par_iter()
        .enumerate()
        .map(|(b, &(kind, space))| {
            let mut rng = seeds::stream_rng(spec.seed, b as u64);
            let mut edges = Vec::new();
            match kind {
                BlockKind::Within | BlockKind::Across => {
                    let (major, minor) = match kind {
                        BlockKind::Within => (Sign::Positive, Sign::Negative),
                        _ => (Sign::Negative, Sign::Positive),
                    };
                    space.for_each(|u, v| {
                        let r: f64 = rng.random();
                        if r < 1.0 - eta {
                            edges.push((u, v, major));
                        } else if r < 1.0 - eta / 2.0 {
                            edges.push((u, v, minor));
                        }
                    });
                }
                BlockKind::Noise if eta < SKIP_SAMPLING_BELOW => {
                    space.for_each_sampled(eta, &mut rng, |u, v, coin| {
                        let s = if coin() { Sign::Positive } else { Sign::Negative };
                        edges.push((u, v, s));
                    });
                }
                BlockKind::Noise => {
                    space.for_each(|u, v| {
                        let r: f64 = rng.random();
                        if r < eta / 2.0 {
                            edges.push((u, v, Sign::Positive));
                        } else if r < eta {
                            edges.push((u, v, Sign::Negative));
                        }
                    });
                }
            }
            edges
        })
        .collect();
    let edges: Vec<_> = parts.into_iter().flatten().collect();
    let g = SignedGraph::build(
        &edges,
        BuildOptions {
            n: Some(spec.n()),
            ..Default::default()
        },
    )?;
    Ok((g, spec.ground_truth()))
}

/// Which existing vertices a dummy vertex may attach to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Attach {
    /// Any vertex present when the dummy is added, earlier dummies included.
    #[default]
    All,
    OriginalOnly,
}

impl std::str::FromStr for Attach {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Attach::All),
            "original-only" => Ok(Attach::OriginalOnly),
            other => Err(PolarError::invalid(format!("unknown attach mode '{other}'"))),
        }
    }
}

/// Edge count given to each dummy vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DummyDegree {
    /// `round(avg degree)`; the average degree of the result drifts upward.
    #[default]
    Average,
    /// `round(avg degree / 2)`, which keeps `2m / n` fixed.
    PreserveAverage,
}

impl std::str::FromStr for DummyDegree {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "average" => Ok(DummyDegree::Average),
            "preserve-average" => Ok(DummyDegree::PreserveAverage),
            other => Err(PolarError::invalid(format!("unknown dummy degree mode '{other}'"))),
        }
    }
}

/// Appends `extra` dummy vertices, each with `round(avg degree)` edges to
/// distinct uniformly chosen endpoints, negative with the original graph's
/// negative-edge ratio. Existing edges are untouched. Fractional average
/// degrees round half to even.
pub fn augment(g: &SignedGraph, extra: usize, seed: u64, attach: Attach) -> Result<SignedGraph> {
    augment_with(g, extra, seed, attach, DummyDegree::Average)
}

/// [`augment`] with a choice of per-dummy edge count.
pub fn augment_with(
    g: &SignedGraph,
    extra: usize,
    seed: u64,
    attach: Attach,
    degree: DummyDegree,
) -> Result<SignedGraph> {
    if extra == 0 {
        return Err(PolarError::invalid("augment needs at least one dummy vertex"));
    }
    if g.m() == 0 {
        return Err(PolarError::EmptyGraph);
    }
    let stats = g.stats();
    let per_dummy = match degree {
        DummyDegree::Average => stats.avg_degree,
        DummyDegree::PreserveAverage => stats.avg_degree / 2.0,
    }
    .round_ties_even() as usize;
    let rho = stats.rho_neg;
    let n = g.n();
    let mut rng = seeds::rng(seed);
    let mut edges: Vec<(usize, usize, Sign)> = g.edges().collect();
    edges.reserve(extra * per_dummy);
    let mut chosen: Vec<usize> = Vec::with_capacity(per_dummy);
    for t in 0..extra {
        let dummy = n + t;
        let pool = match attach {
            Attach::All => dummy,
            Attach::OriginalOnly => n,
        };
        let k = per_dummy.min(pool);
        chosen.clear();
        while chosen.len() < k {
            let c = rng.random_range(0..pool);
            if !chosen.contains(&c) {
                chosen.push(c);
            }
        }
        for &c in &chosen {
            let s = if rng.random::<f64>() < rho {
                Sign::Negative
            } else {
                Sign::Positive
            };
            edges.push((c, dummy, s));
        }
    }
    SignedGraph::build(
        &edges,
        BuildOptions {
            n: Some(n + extra),
            ..Default::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{edge_agreement_ratio, polarity};

    #[test]
    fn noiseless_model_is_perfect() {
        let spec = PlantedSpec::new(3, 2, 0.0, 1);
        let (g, gt) = generate_planted(&spec).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 3 + 3 + 9);
        for u in 0..6 {
            for v in u + 1..6 {
                let same = (u < 3) == (v < 3);
                let want = if same { Sign::Positive } else { Sign::Negative };
                assert_eq!(g.edge_sign(u, v), Some(want));
            }
        }
        assert_eq!(g.degree(6) + g.degree(7), 0);
        assert_eq!(edge_agreement_ratio(&g, gt.labels()), 1.0);
        assert_eq!(polarity(&g, gt.labels()), 5.0);
    }

    #[test]
    fn generation_is_deterministic() {
        let spec = PlantedSpec::new(10, 30, 0.1, 42);
        let a = generate_planted(&spec).unwrap().0;
        let b = generate_planted(&spec).unwrap().0;
        assert_eq!(a, b);
        let c = generate_planted(&PlantedSpec { seed: 43, ..spec }).unwrap().0;
        assert_ne!(a, c);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate_planted(&PlantedSpec::new(0, 3, 0.1, 0)).is_err());
        assert!(generate_planted(&PlantedSpec::new(2, 3, 1.5, 0)).is_err());
    }

    #[test]
    fn skip_sampler_covers_every_pair_when_p_is_one() {
        let mut rng = seeds::rng(0);
        for space in [
            PairSpace::Triangle { base: 3, k: 6 },
            PairSpace::Rect {
                row_base: 0,
                rows: 3,
                col_base: 5,
                cols: 4,
            },
        ] {
            let mut dense = Vec::new();
            space.for_each(|u, v| dense.push((u, v)));
            let mut sparse = Vec::new();
            space.for_each_sampled(1.0, &mut rng, |u, v, _| sparse.push((u, v)));
            assert_eq!(dense, sparse);
            assert_eq!(dense.len() as u64, space.len());
        }
    }

    #[test]
    fn augment_adds_rounded_average_degree_edges() {
        let spec = PlantedSpec::new(5, 10, 0.3, 3);
        let (g, _) = generate_planted(&spec).unwrap();
        let d = g.stats().avg_degree.round_ties_even() as usize;
        let aug = augment(&g, 7, 9, Attach::All).unwrap();
        assert_eq!(aug.n(), g.n() + 7);
        assert_eq!(aug.m(), g.m() + 7 * d);
        for (u, v, s) in g.edges() {
            assert_eq!(aug.edge_sign(u, v), Some(s));
        }
        let only = augment(&g, 7, 9, Attach::OriginalOnly).unwrap();
        for t in 0..7 {
            assert!(only.neighbors(g.n() + t).all(|(v, _)| v < g.n()));
        }
    }

    #[test]
    fn preserving_the_average_degree() {
        let (g, _) = generate_planted(&PlantedSpec::new(20, 80, 0.1, 3)).unwrap();
        let d = g.stats().avg_degree;
        let aug = augment_with(&g, 120, 4, Attach::All, DummyDegree::PreserveAverage).unwrap();
        assert_eq!(aug.m() - g.m(), 120 * (d / 2.0).round_ties_even() as usize);
        assert!((aug.stats().avg_degree - d).abs() < 1.0);
        assert_eq!("preserve-average".parse::<DummyDegree>().unwrap(), DummyDegree::PreserveAverage);
    }

    #[test]
    fn augment_preconditions() {
        let g = SignedGraph::from_edges(&[(0, 1, Sign::Positive)]).unwrap();
        assert!(augment(&g, 0, 0, Attach::All).is_err());
        let empty = SignedGraph::build(&[], BuildOptions { n: Some(3), ..Default::default() }).unwrap();
        assert!(augment(&empty, 2, 0, Attach::All).is_err());
        // avg degree 1: the first dummy can only reach the two originals
        let aug = augment(&g, 3, 1, Attach::All).unwrap();
        assert_eq!(aug.m(), 1 + 3);
    }
}
