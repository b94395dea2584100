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

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a symmetric tridiagonal matrix by implicit QL.
///
/// `diag` has length `k`, `offdiag` length `k - 1`. Returns the eigenvalues
/// and the row-major `k × k` matrix whose column `j` is the eigenvector of
/// eigenvalue `j`. Eigenvalues are not sorted.
pub fn symmetric_tridiagonal_eigen(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let k = diag.len();
    if k == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    if offdiag.len() + 1 != k {
        return Err(PolarError::DimensionMismatch {
            expected: k - 1,
            got: offdiag.len(),
        });
    }
    let mut d = diag.to_vec();
    let mut e: Vec<f64> = offdiag.iter().copied().chain(std::iter::once(0.0)).collect();
    let mut z = vec![0.0; k * k];
    for i in 0..k {
        z[i * k + i] = 1.0;
    }

    for l in 0..k {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < k {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(PolarError::NoConvergence {
                    iterations: sweeps,
                    residual: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in 0..k {
                    let zi = z[row * k + i];
                    let zi1 = z[row * k + i + 1];
                    z[row * k + i + 1] = s * zi + c * zi1;
                    z[row * k + i] = c * zi - s * zi1;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, z))
}
