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

use std::collections::BTreeSet;

use crate::assignment::{sign, Assignment};
use crate::deadline::Deadline;
use crate::error::Result;
use crate::graph::SignedGraph;
use crate::metrics::Polarity;
use crate::spectral::SpectralResult;

/// Full record of one peeling run.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyTrace {
    /// Vertices in the order they were removed.
    pub removal_order: Vec<usize>,
    /// Polarity of the retained set after `k` removals, `k = 0..=n`.
    pub polarity: Vec<Polarity>,
    /// Number of removals at the best retained set.
    pub best_step: usize,
    pub best: Assignment,
}

/// Peeling heuristic: repeatedly drop the vertex with the smallest
/// `d₊ − d₋` in the remaining subgraph (ties to the smallest id) and keep the
/// visited set of highest polarity. Retained vertices take the sign of their
/// eigenvector entry.
pub fn greedy_peel(g: &SignedGraph, spec: &SpectralResult) -> Assignment {
    greedy_peel_trace(g, spec, Deadline::none())
        .expect("no deadline")
        .best
}

pub fn greedy_peel_trace(g: &SignedGraph, spec: &SpectralResult, deadline: Deadline) -> Result<GreedyTrace> {
    let n = g.n();
    assert_eq!(spec.v.len(), n, "eigenvector length must equal the vertex count");
    let side: Vec<i8> = spec.v.iter().map(|&x| sign(x)).collect();
    let mut present = vec![true; n];
    let mut score: Vec<i64> = (0..n)
        .map(|v| {
            let (p, m) = g.signed_degree(v);
            p as i64 - m as i64
        })
        .collect();
    let mut queue: BTreeSet<(i64, usize)> = (0..n).map(|v| (score[v], v)).collect();

    let mut quad: i64 = (0..n)
        .map(|u| {
            g.neighbors(u)
                .map(|(v, a)| (side[u] * side[v] * a) as i64)
                .sum::<i64>()
        })
        .sum();
    let mut size = side.iter().filter(|&&s| s != 0).count() as u64;
    let mut polarity = Vec::with_capacity(n + 1);
    polarity.push(Polarity::new(quad, size));
    let mut removal_order = Vec::with_capacity(n);
    let mut best_step = 0;

    while let Some((_, u)) = queue.pop_first() {
        if removal_order.len() % 1024 == 1023 {
            deadline.check()?;
        }
        present[u] = false;
        let mut field = 0i64;
        for (v, a) in g.neighbors(u) {
            if !present[v] {
                continue;
            }
            field += (a * side[v]) as i64;
            queue.remove(&(score[v], v));
            score[v] -= a as i64;
            queue.insert((score[v], v));
        }
        quad -= 2 * side[u] as i64 * field;
        if side[u] != 0 {
            size -= 1;
        }
        removal_order.push(u);
        let p = Polarity::new(quad, size);
        // later (smaller) sets win ties, except the empty set
        let incumbent = polarity[best_step];
        if p > incumbent || (p == incumbent && size > 0) {
            best_step = polarity.len();
        }
        polarity.push(p);
    }

    let mut keep = vec![true; n];
    for &u in &removal_order[..best_step] {
        keep[u] = false;
    }
    let best = Assignment::new((0..n).map(|v| if keep[v] { side[v] } else { 0 }).collect())?;
    Ok(GreedyTrace {
        removal_order,
        polarity,
        best_step,
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::*;
    use crate::metrics::{polarity, polarity_ratio};
    use crate::spectral::{leading_eigenpair, SpectralConfig};

    #[test]
    fn positive_triangle_keeps_everything() {
        let g = SignedGraph::from_edges(&[(0, 1, Positive), (1, 2, Positive), (0, 2, Positive)]).unwrap();
        let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
        let x = greedy_peel(&g, &spec);
        assert_eq!(x.as_slice(), &[1, 1, 1]);
        assert_eq!(polarity(&g, &x), 2.0);
    }

    #[test]
    fn single_negative_edge() {
        let g = SignedGraph::from_edges(&[(0, 1, Negative)]).unwrap();
        let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
        assert_eq!(polarity(&g, &greedy_peel(&g, &spec)), 1.0);
    }

    #[test]
    fn trace_visits_n_plus_one_nested_sets() {
        let g = SignedGraph::from_edges(&[
            (0, 1, Positive),
            (1, 2, Negative),
            (2, 3, Negative),
            (3, 4, Positive),
            (0, 4, Negative),
            (1, 3, Positive),
        ])
        .unwrap();
        let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
        let t = greedy_peel_trace(&g, &spec, Deadline::none()).unwrap();
        assert_eq!(t.polarity.len(), g.n() + 1);
        let mut sorted = t.removal_order.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..g.n()).collect::<Vec<_>>());
        // Recompute every prefix from scratch.
        let side = Assignment::signs_of(&spec.v);
        for k in 0..=g.n() {
            let mut x = side.clone().into_inner();
            for &u in &t.removal_order[..k] {
                x[u] = 0;
            }
            let x = Assignment::new(x).unwrap();
            assert_eq!(polarity_ratio(&g, &x), t.polarity[k], "prefix {k}");
        }
        let best = t.polarity.iter().max().unwrap();
        assert_eq!(&polarity_ratio(&g, &t.best), best);
    }

    #[test]
    fn first_removal_is_the_most_negative_vertex() {
        // Vertex 2 has net degree -2, the minimum.
        let g = SignedGraph::from_edges(&[(0, 1, Positive), (0, 2, Negative), (1, 2, Negative)]).unwrap();
        let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
        let t = greedy_peel_trace(&g, &spec, Deadline::none()).unwrap();
        assert_eq!(t.removal_order[0], 2);
    }
}
