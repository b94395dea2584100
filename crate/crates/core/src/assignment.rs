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

use crate::error::{PolarError, Result};

/// A vector over `{-1, 0, +1}` splitting the vertices into `S₁` (+1), `S₂` (-1)
/// and the neutral set `S₀` (0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<i8>);

impl Assignment {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !(-1..=1).contains(v)) {
            return Err(PolarError::invalid(format!(
                "assignment entry {i} is {}, expected -1, 0 or 1",
                values[i]
            )));
        }
        Ok(Assignment(values))
    }

    pub fn zeros(n: usize) -> Self {
        Assignment(vec![0; n])
    }

    /// Builds an assignment from the two clusters; vertices in neither are neutral.
    pub fn from_sets(n: usize, s1: &[usize], s2: &[usize]) -> Result<Self> {
        let mut x = vec![0i8; n];
        for (set, label) in [(s1, 1i8), (s2, -1i8)] {
            for &v in set {
                if v >= n {
                    return Err(PolarError::VertexOutOfRange { vertex: v, n });
                }
                if x[v] != 0 {
                    return Err(PolarError::invalid(format!("vertex {v} is in both clusters")));
                }
                x[v] = label;
            }
        }
        Ok(Assignment(x))
    }

    /// `x_i = sign(values_i)` with `sign(0) = 0`.
    pub fn signs_of(values: &[f64]) -> Self {
        Assignment(values.iter().map(|&v| sign(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i8 {
        self.0[i]
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }

    /// `xᵀx`, the number of vertices in `S₁ ∪ S₂`.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&v| v != 0).count()
    }

    /// No vertex assigned to either cluster.
    pub fn is_neutral(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    /// `(|S₁|, |S₂|)`.
    pub fn cluster_sizes(&self) -> (usize, usize) {
        self.0.iter().fold((0, 0), |(a, b), &v| match v {
            1 => (a + 1, b),
            -1 => (a, b + 1),
            _ => (a, b),
        })
    }

    pub fn s1(&self) -> Vec<usize> {
        self.members(1)
    }

    pub fn s2(&self) -> Vec<usize> {
        self.members(-1)
    }

    pub fn s0(&self) -> Vec<usize> {
        self.members(0)
    }

    fn members(&self, label: i8) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v == label)
            .map(|(i, _)| i)
            .collect()
    }

    /// `-x`: the same pair of communities with the labels exchanged.
    pub fn flipped(&self) -> Self {
        Assignment(self.0.iter().map(|&v| -v).collect())
    }

    /// Representative of `{x, -x}` whose first nonzero entry is +1.
    pub fn canonical(&self) -> Self {
        match self.0.iter().find(|&&v| v != 0) {
            Some(&-1) => self.flipped(),
            _ => self.clone(),
        }
    }
}

pub(crate) fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}
