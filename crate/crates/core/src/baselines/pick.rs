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

use rand::Rng;

use crate::assignment::Assignment;
use crate::error::{PolarError, Result};
use crate::graph::{Sign, SignedGraph};
use crate::seeds;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PickRule {
    /// The smallest `(u, v)` edge in canonical order.
    #[default]
    First,
    /// A uniformly random edge.
    Seeded(u64),
}

/// Places the endpoints of a single edge: together in `S₁` if positive,
/// on opposite sides if negative. The result has polarity exactly 1.
pub fn pick_an_edge(g: &SignedGraph, rule: PickRule) -> Result<Assignment> {
    let m = g.m();
    if m == 0 {
        return Err(PolarError::EmptyGraph);
    }
    let index = match rule {
        PickRule::First => 0,
        PickRule::Seeded(seed) => seeds::rng(seed).random_range(0..m),
    };
    let (u, v, s) = g.edges().nth(index).expect("index below m");
    let mut x = vec![0i8; g.n()];
    x[u] = 1;
    x[v] = match s {
        Sign::Positive => 1,
        Sign::Negative => -1,
    };
    Assignment::new(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::*;
    use crate::metrics::polarity;

    #[test]
    fn single_edges() {
        let g = SignedGraph::from_edges(&[(0, 1, Positive)]).unwrap();
        let x = pick_an_edge(&g, PickRule::First).unwrap();
        assert_eq!(x.as_slice(), &[1, 1]);
        assert_eq!(polarity(&g, &x), 1.0);

        let g = SignedGraph::from_edges(&[(0, 1, Negative)]).unwrap();
        let x = pick_an_edge(&g, PickRule::Seeded(9)).unwrap();
        assert_eq!(x.as_slice(), &[1, -1]);
        assert_eq!(polarity(&g, &x), 1.0);
    }

    #[test]
    fn empty_graph_errors() {
        let g = SignedGraph::from_edges(&[]).unwrap();
        assert!(matches!(pick_an_edge(&g, PickRule::First), Err(PolarError::EmptyGraph)));
    }

    #[test]
    fn seeded_rule_always_scores_one() {
        let g = SignedGraph::from_edges(&[(0, 1, Positive), (1, 2, Negative), (2, 3, Negative), (0, 3, Positive)])
            .unwrap();
        for seed in 0..20 {
            let x = pick_an_edge(&g, PickRule::Seeded(seed)).unwrap();
            assert_eq!(polarity(&g, &x), 1.0);
        }
    }
}
