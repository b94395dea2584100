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

use super::tridiag::symmetric_tridiagonal_eigen;
use super::{dot, matvec_into, norm, residual_norm, RawEigenpair, SpectralConfig};
use crate::error::{PolarError, Result};
use crate::graph::SignedGraph;

/// `β·|s_k|` for the top Ritz pair of the current tridiagonal matrix, where
/// `β` is the next off-diagonal and `s_k` the last Ritz vector component.
fn ritz_residual_estimate(alpha: &[f64], beta: &[f64], next: f64) -> Result<f64> {
    let k = alpha.len();
    let (vals, vecs) = symmetric_tridiagonal_eigen(alpha, beta)?;
    let top = (0..k)
        .max_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .expect("nonempty spectrum");
    Ok(next * vecs[(k - 1) * k + top].abs())
}

/// Explicitly restarted Lanczos with full reorthogonalization.
///
/// Each cycle builds a Krylov basis of at most `krylov_dim` vectors from the
/// current estimate, takes the Ritz pair with the largest algebraic Ritz
/// value and restarts from its Ritz vector. A cycle ends early once the
/// Ritz residual estimate drops below the tolerance; the returned pair is
/// always checked with a true product.
pub(super) fn solve(g: &SignedGraph, start: Vec<f64>, cfg: &SpectralConfig) -> Result<RawEigenpair> {
    let n = g.n();
    let dim = cfg.krylov_dim.clamp(2, n.max(2)).min(n);
    let budget = cfg.iteration_budget(n);
    let mut products = 0usize;
    let mut q = start;
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(dim);
    let mut w = vec![0.0; n];
    let mut residual = f64::INFINITY;

    while products < budget {
        cfg.deadline.check()?;
        basis.clear();
        basis.push(q.clone());
        let mut alpha: Vec<f64> = Vec::with_capacity(dim);
        let mut beta: Vec<f64> = Vec::with_capacity(dim);
        for j in 0..dim {
            if products >= budget {
                break;
            }
            matvec_into(g, &basis[j], &mut w);
            products += 1;
            let a = dot(&basis[j], &w);
            alpha.push(a);
            if j + 1 == dim {
                break;
            }
            // Two passes of classical Gram-Schmidt against the whole basis.
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    w.iter_mut().zip(b).for_each(|(wi, bi)| *wi -= c * bi);
                }
            }
            let b = norm(&w);
            if b <= 1e-12 * a.abs().max(1.0) {
                // invariant subspace
                break;
            }
            if ritz_residual_estimate(&alpha, &beta, b)? <= 0.5 * cfg.tol {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }
        let k = alpha.len();
        if k == 0 {
            break;
        }
        let (vals, vecs) = symmetric_tridiagonal_eigen(&alpha, &beta[..k - 1])?;
        let top = (0..k)
            .max_by(|&a, &b| vals[a].total_cmp(&vals[b]))
            .expect("nonempty spectrum");
        let mut y = vec![0.0; n];
        for (i, b) in basis.iter().take(k).enumerate() {
            let c = vecs[i * k + top];
            y.iter_mut().zip(b).for_each(|(yi, bi)| *yi += c * bi);
        }
        let ny = norm(&y);
        y.iter_mut().for_each(|x| *x /= ny);

        matvec_into(g, &y, &mut w);
        products += 1;
        let lambda = dot(&y, &w);
        residual = residual_norm(&w, &y, lambda);
        if residual <= cfg.tol {
            return Ok(RawEigenpair {
                lambda,
                v: y,
                residual,
                iterations: products,
            });
        }
        q = y;
    }
    Err(PolarError::NoConvergence {
        iterations: products,
        residual,
    })
}
