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

use super::{dot, matvec_into, norm, residual_norm, RawEigenpair, SpectralConfig};
use crate::error::{PolarError, Result};
use crate::graph::SignedGraph;

/// Power iteration on `A + σI`.
///
/// With `σ = 1 + max degree` every eigenvalue of the shifted matrix is
/// positive (Gershgorin), so the dominant one is `λ₁ + σ` and the iteration
/// converges to the largest algebraic eigenvalue of `A` rather than the
/// largest in magnitude.
pub(super) fn solve(g: &SignedGraph, mut v: Vec<f64>, cfg: &SpectralConfig) -> Result<RawEigenpair> {
    let n = g.n();
    let shift = 1.0 + g.max_degree() as f64;
    let budget = cfg.iteration_budget(n);
    let mut av = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for it in 1..=budget {
        if it % 64 == 0 {
            cfg.deadline.check()?;
        }
        matvec_into(g, &v, &mut av);
        let lambda = dot(&v, &av);
        residual = residual_norm(&av, &v, lambda);
        if residual <= cfg.tol {
            return Ok(RawEigenpair {
                lambda,
                v,
                residual,
                iterations: it,
            });
        }
        for (x, a) in v.iter_mut().zip(&av) {
            *x = a + shift * *x;
        }
        let nv = norm(&v);
        v.iter_mut().for_each(|x| *x /= nv);
    }
    Err(PolarError::NoConvergence {
        iterations: budget,
        residual,
    })
}
