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


use polarsign::detect::{eigensign, eigensign_sweep, inclusion_probabilities, random_eigensign};
use polarsign::io::{parse_edge_list, write_edge_list_to, LoadOptions};
use polarsign::metrics::{complete_partition, migration_property_check};
use polarsign::{
    ccbar, leading_eigenpair, polarity, Assignment, Backend, BuildOptions, Scale, Sign, SignedGraph, SpectralConfig,
};
use polarsign::spectral::matvec;
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Graph on `n` vertices from one state in {-1, 0, 1} per vertex pair.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = SignedGraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-1i8..=1, n * (n - 1) / 2).prop_map(move |states| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if let Some(s) = Sign::from_i8(states[k]) {
                        edges.push((u, v, s));
                    }
                    k += 1;
                }
            }
            let opts = BuildOptions {
                n: Some(n),
                ..Default::default()
            };
            SignedGraph::build(&edges, opts).unwrap()
        })
    })
}

fn graph_and_assignment(max_n: usize) -> impl Strategy<Value = (SignedGraph, Assignment)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(-1i8..=1, n).prop_map(|x| Assignment::new(x).unwrap()))
    })
}

/// Convergence rate `|μ₂ / μ₁|` of power iteration on `A + (1 + max degree)I`.
fn power_rate(g: &SignedGraph) -> f64 {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for (u, v, s) in g.edges() {
        a[(u, v)] = s.as_i8() as f64;
        a[(v, u)] = s.as_i8() as f64;
    }
    let shift = 1.0 + g.max_degree() as f64;
    let mut mu: Vec<f64> = SymmetricEigen::new(a).eigenvalues.iter().map(|l| l + shift).collect();
    mu.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let second = mu[1..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    second / mu[0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn polarity_is_a_scaled_quadratic_form((g, x) in graph_and_assignment(16)) {
        let size = x.support_size() as f64;
        prop_assert!((polarity(&g, &x) * size - ccbar(&g, &x) as f64).abs() <= 1e-9);
        prop_assert_eq!(polarity(&g, &x), polarity(&g, &x.flipped()));
    }

    #[test]
    fn absorbing_neutral_vertices_never_hurts((g, x) in graph_and_assignment(16)) {
        prop_assert!(migration_property_check(&g, &x));
        let full = complete_partition(&g, &x);
        prop_assert_eq!(full.support_size(), g.n());
    }

    #[test]
    fn polarity_is_bounded_by_the_leading_eigenvalue((g, x) in graph_and_assignment(16)) {
        let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
        prop_assert!(polarity(&g, &x) <= spec.lambda1 + 1e-9);
    }

    #[test]
    fn sweep_dominates_plain_rounding(g in graph_strategy(20)) {
        let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
        let sweep = eigensign_sweep(&g, &spec);
        prop_assert!(polarity(&g, &sweep.best) >= polarity(&g, &eigensign(&spec)) - 1e-12);
        let best_on_curve = sweep.curve.iter().map(|p| p.polarity).fold(f64::NEG_INFINITY, f64::max);
        prop_assert_eq!(polarity(&g, &sweep.best), best_on_curve);
        prop_assert!(sweep.curve.windows(2).all(|w| w[0].tau < w[1].tau));
    }

    #[test]
    fn leading_eigenvalue_dominates_random_directions(g in graph_strategy(20), seed in any::<u64>()) {
        let tol = 1e-10;
        let spec = leading_eigenpair(&g, &SpectralConfig::default().with_tol(tol)).unwrap();
        let av = matvec(&g, &spec.v).unwrap();
        let rayleigh: f64 = spec.v.iter().zip(&av).map(|(a, b)| a * b).sum();
        prop_assert!((rayleigh - spec.lambda1).abs() <= 10.0 * tol);
        prop_assert!(spec.lambda1.abs() <= g.max_degree() as f64 + 1e-12);
        prop_assert!(spec.lambda1 <= g.n() as f64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..100 {
            let u: Vec<f64> = (0..g.n()).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
            let au = matvec(&g, &u).unwrap();
            let q: f64 = u.iter().zip(&au).map(|(a, b)| a * b).sum::<f64>() / (nu * nu);
            prop_assert!(q <= spec.lambda1 + 10.0 * tol);
        }
    }

    #[test]
    fn backends_agree_and_converge(g in graph_strategy(20)) {
        let a = leading_eigenpair(&g, &SpectralConfig::default().with_backend(Backend::Lanczos)).unwrap();
        prop_assert!(a.residual <= 1e-10);
        let unit = a.v.iter().map(|x| x * x).sum::<f64>();
        prop_assert!((unit - 1.0).abs() <= 1e-12);
        let cfg = SpectralConfig { max_iter: Some(10_000), ..SpectralConfig::default().with_backend(Backend::Power) };
        match leading_eigenpair(&g, &cfg) {
            Ok(b) => {
                prop_assert!((a.lambda1 - b.lambda1).abs() <= 1e-8);
                prop_assert!(b.residual <= 1e-10);
            }
            Err(_) => {
                // only a nearly tied top of the spectrum may stall the power backend
                let rate = power_rate(&g);
                prop_assert!(rate.powi(10_000) > 1e-14, "rate {rate}");
            }
        }
    }

    #[test]
    fn rounding_support_lies_in_the_eigenvector_support(g in graph_strategy(16), seed in any::<u64>()) {
        let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
        for scale in [Scale::None, Scale::L1] {
            let x = random_eigensign(&spec, scale, seed);
            let probs = inclusion_probabilities(&spec, scale);
            for i in 0..g.n() {
                let xi = x.get(i);
                prop_assert!(xi == 0 || (xi as f64) * spec.v[i] > 0.0);
                prop_assert!((0.0..=1.0).contains(&probs[i]));
            }
        }
    }

    #[test]
    fn edge_lists_round_trip(g in graph_strategy(16)) {
        let mut buf = Vec::new();
        write_edge_list_to(&g, &mut buf).unwrap();
        let back = parse_edge_list(&buf[..], std::path::Path::new("mem"), LoadOptions::default()).unwrap().graph;
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}
