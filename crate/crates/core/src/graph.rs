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

//! Undirected signed graphs in compressed sparse row form.

use serde::Serialize;

use crate::error::{PolarError, Result};

/// Edge label: friendly (+1) or antagonistic (-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn from_i8(s: i8) -> Option<Sign> {
        match s {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    /// Sign of a real rating; `None` for zero and NaN.
    pub fn of_weight(w: f64) -> Option<Sign> {
        if w > 0.0 {
            Some(Sign::Positive)
        } else if w < 0.0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// What to do when the same unordered pair is listed twice with the same sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    #[default]
    Reject,
    Dedupe,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    /// Vertex count override; must be at least `1 + max id`.
    pub n: Option<usize>,
    pub duplicates: DuplicatePolicy,
}

/// Immutable undirected signed graph.
///
/// Every undirected edge is stored twice, once in each endpoint's row, and
/// rows are sorted by neighbor id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<u32>,
    signs: Vec<i8>,
    m_pos: usize,
    m_neg: usize,
}

impl SignedGraph {
    /// Builds a graph from `(u, v, sign)` triples with default options.
    pub fn from_edges(edges: &[(usize, usize, Sign)]) -> Result<Self> {
        Self::build(edges, BuildOptions::default())
    }

    pub fn build(edges: &[(usize, usize, Sign)], opts: BuildOptions) -> Result<Self> {
        let mut canon: Vec<(u32, u32, Sign)> = Vec::with_capacity(edges.len());
        let mut max_id: Option<usize> = None;
        for &(u, v, s) in edges {
            if u == v {
                return Err(PolarError::SelfLoop(u));
            }
            if u > u32::MAX as usize || v > u32::MAX as usize {
                return Err(PolarError::invalid(format!(
                    "vertex id {} does not fit in 32 bits",
                    u.max(v)
                )));
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            canon.push((a as u32, b as u32, s));
        }
        let min_n = max_id.map_or(0, |m| m + 1);
        let n = match opts.n {
            Some(n) if n < min_n => {
                return Err(PolarError::VertexOutOfRange {
                    vertex: min_n - 1,
                    n,
                })
            }
            Some(n) => n,
            None => min_n,
        };
        if n > u32::MAX as usize {
            return Err(PolarError::invalid("vertex count does not fit in 32 bits"));
        }
        canon.sort_unstable();

        let mut unique: Vec<(u32, u32, Sign)> = Vec::with_capacity(canon.len());
        for e in canon {
            if let Some(&last) = unique.last() {
                if (last.0, last.1) == (e.0, e.1) {
                    if last.2 != e.2 {
                        return Err(PolarError::ConflictingSign {
                            u: e.0 as usize,
                            v: e.1 as usize,
                        });
                    }
                    match opts.duplicates {
                        DuplicatePolicy::Reject => {
                            return Err(PolarError::DuplicateEdge {
                                u: e.0 as usize,
                                v: e.1 as usize,
                            })
                        }
                        DuplicatePolicy::Dedupe => continue,
                    }
                }
            }
            unique.push(e);
        }
        Ok(Self::from_canonical(n, &unique))
    }

    /// `edges` must be sorted, unique, with `u < v < n`.
    fn from_canonical(n: usize, edges: &[(u32, u32, Sign)]) -> Self {
        let mut degree = vec![0usize; n];
        let mut m_pos = 0;
        for &(u, v, s) in edges {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            if s == Sign::Positive {
                m_pos += 1;
            }
        }
        let mut row_offsets = Vec::with_capacity(n + 1);
        row_offsets.push(0);
        for d in &degree {
            row_offsets.push(row_offsets.last().unwrap() + d);
        }
        let nnz = *row_offsets.last().unwrap();
        let mut col_indices = vec![0u32; nnz];
        let mut signs = vec![0i8; nnz];
        let mut cursor: Vec<usize> = row_offsets[..n].to_vec();
        // Lower-triangle entries of row v arrive in ascending u, upper-triangle
        // entries of row u in ascending v; filling lower first keeps rows sorted.
        for &(u, v, s) in edges {
            let c = &mut cursor[v as usize];
            col_indices[*c] = u;
            signs[*c] = s.as_i8();
            *c += 1;
        }
        for &(u, v, s) in edges {
            let c = &mut cursor[u as usize];
            col_indices[*c] = v;
            signs[*c] = s.as_i8();
            *c += 1;
        }
        SignedGraph {
            n,
            row_offsets,
            col_indices,
            signs,
            m_pos,
            m_neg: edges.len() - m_pos,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.m_pos + self.m_neg
    }

    pub fn m_pos(&self) -> usize {
        self.m_pos
    }

    pub fn m_neg(&self) -> usize {
        self.m_neg
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[u32] {
        &self.col_indices
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row_offsets[v + 1] - self.row_offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `(d₊(v), d₋(v))`.
    pub fn signed_degree(&self, v: usize) -> (usize, usize) {
        let s = &self.signs[self.row_offsets[v]..self.row_offsets[v + 1]];
        let pos = s.iter().filter(|&&x| x > 0).count();
        (pos, s.len() - pos)
    }

    /// Neighbors of `v` with the sign of the connecting edge, ascending by id.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, i8)> + '_ {
        let range = self.row_offsets[v]..self.row_offsets[v + 1];
        self.col_indices[range.clone()]
            .iter()
            .zip(&self.signs[range])
            .map(|(&u, &s)| (u as usize, s))
    }

    /// Sign of the edge `{u, v}`, if present.
    pub fn edge_sign(&self, u: usize, v: usize) -> Option<Sign> {
        let range = self.row_offsets[u]..self.row_offsets[u + 1];
        let row = &self.col_indices[range.clone()];
        row.binary_search(&(v as u32))
            .ok()
            .and_then(|i| Sign::from_i8(self.signs[range.start + i]))
    }

    /// Every undirected edge once, as `(u, v, sign)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| v > u)
                .map(move |(v, s)| (u, v, Sign::from_i8(s).expect("stored signs are ±1")))
        })
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats::of(self)
    }
}

/// Summary statistics of a signed graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub m_pos: usize,
    pub m_neg: usize,
    /// Fraction of negative edges.
    pub rho_neg: f64,
    /// Fraction of nonzero off-diagonal entries of the adjacency matrix.
    pub delta: f64,
    pub avg_degree: f64,
}

impl GraphStats {
    pub fn of(g: &SignedGraph) -> Self {
        let n = g.n();
        let m = g.m();
        let rho_neg = if m == 0 {
            0.0
        } else {
            g.m_neg() as f64 / m as f64
        };
        let pairs = n as f64 * (n as f64 - 1.0);
        let delta = if n < 2 { 0.0 } else { 2.0 * m as f64 / pairs };
        let avg_degree = if n == 0 { 0.0 } else { 2.0 * m as f64 / n as f64 };
        GraphStats {
            n,
            m,
            m_pos: g.m_pos(),
            m_neg: g.m_neg(),
            rho_neg,
            delta,
            avg_degree,
        }
    }
}
