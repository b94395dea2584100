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

use std::cmp::Reverse;

use rand::seq::index;
use rayon::prelude::*;

use crate::assignment::Assignment;
use crate::deadline::Deadline;
use crate::error::Result;
use crate::graph::SignedGraph;
use crate::metrics::Polarity;
use crate::seeds;

#[derive(Debug, Clone, Copy, Default)]
pub struct BansalConfig {
    /// Evaluate only this many uniformly sampled centers instead of all `n`.
    pub sample: Option<usize>,
    pub seed: u64,
    pub deadline: Deadline,
}

/// Neighborhood heuristic: for every center `u`, put `u` and its positive
/// neighbors in `S₁` and its negative neighbors in `S₂`; keep the candidate
/// of highest polarity (ties to the smaller center).
pub fn bansal(g: &SignedGraph) -> Assignment {
    bansal_with(g, &BansalConfig::default()).expect("no deadline")
}

pub fn bansal_with(g: &SignedGraph, cfg: &BansalConfig) -> Result<Assignment> {
    let n = g.n();
    if n == 0 {
        return Ok(Assignment::zeros(0));
    }
    let centers: Vec<usize> = match cfg.sample {
        Some(k) if k < n => {
            let mut c = index::sample(&mut seeds::rng(cfg.seed), n, k.max(1)).into_vec();
            c.sort_unstable();
            c
        }
        _ => (0..n).collect(),
    };
    let best = centers
        .par_iter()
        .map_init(
            || vec![0i8; n],
            |labels, &u| -> Result<(Polarity, Reverse<usize>)> {
                if u % 256 == 0 {
                    cfg.deadline.check()?;
                }
                Ok((candidate_polarity(g, u, labels), Reverse(u)))
            },
        )
        .try_reduce_with(|a, b| Ok(a.max(b)))
        .expect("at least one center")?;
    let u = best.1 .0;
    Ok(candidate(g, u))
}

fn candidate(g: &SignedGraph, u: usize) -> Assignment {
    let mut x = vec![0i8; g.n()];
    x[u] = 1;
    for (w, a) in g.neighbors(u) {
        x[w] = a;
    }
    Assignment::new(x).expect("signs are in range")
}

/// Polarity of the candidate centered at `u`. `labels` is all-zero on entry
/// and on exit.
fn candidate_polarity(g: &SignedGraph, u: usize, labels: &mut [i8]) -> Polarity {
    labels[u] = 1;
    for (w, a) in g.neighbors(u) {
        labels[w] = a;
    }
    let mut quad = 0i64;
    let mut tally = |w: usize, labels: &[i8]| {
        let xw = labels[w];
        for (z, a) in g.neighbors(w) {
            quad += (xw * labels[z] * a) as i64;
        }
    };
    tally(u, labels);
    for (w, _) in g.neighbors(u) {
        tally(w, labels);
    }
    labels[u] = 0;
    for (w, _) in g.neighbors(u) {
        labels[w] = 0;
    }
    Polarity::new(quad, 1 + g.degree(u) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::*;
    use crate::metrics::polarity;

    #[test]
    fn positive_star() {
        let g = SignedGraph::from_edges(&[(0, 1, Positive), (0, 2, Positive), (0, 3, Positive)]).unwrap();
        let x = bansal(&g);
        assert_eq!(x.as_slice(), &[1, 1, 1, 1]);
        assert_eq!(polarity(&g, &x), 1.5);
        let mut labels = vec![0i8; 4];
        assert_eq!(candidate_polarity(&g, 2, &mut labels).value(), 1.0);
        assert_eq!(labels, vec![0; 4]);
    }

    #[test]
    fn single_negative_edge() {
        let g = SignedGraph::from_edges(&[(0, 1, Negative)]).unwrap();
        let x = bansal(&g);
        assert_eq!(x.as_slice(), &[1, -1]);
        assert_eq!(polarity(&g, &x), 1.0);
    }

    #[test]
    fn sampling_restricts_the_centers() {
        let g = SignedGraph::from_edges(&[(0, 1, Positive), (0, 2, Positive), (0, 3, Positive), (4, 5, Negative)])
            .unwrap();
        let full = bansal(&g);
        let cfg = BansalConfig {
            sample: Some(6),
            ..Default::default()
        };
        assert_eq!(bansal_with(&g, &cfg).unwrap(), full);
        let cfg = BansalConfig {
            sample: Some(1),
            seed: 5,
            ..Default::default()
        };
        let x = bansal_with(&g, &cfg).unwrap();
        assert!(polarity(&g, &x) <= polarity(&g, &full));
    }
}
