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


use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polarsign::spectral::matvec;
use polarsign::{
    bansal, best_of, eigensign_sweep, generate_planted, greedy_peel, leading_eigenpair, Backend, PlantedSpec, Scale,
    SignedGraph, SpectralConfig,
};

fn planted(n_c: usize, n_n: usize, eta: f64) -> SignedGraph {
    generate_planted(&PlantedSpec::new(n_c, n_n, eta, 7)).unwrap().0
}

fn bench_matvec(c: &mut Criterion) {
    let g = planted(100, 20_000, 0.001);
    let x: Vec<f64> = (0..g.n()).map(|i| (i % 7) as f64 - 3.0).collect();
    c.bench_function("matvec_20k", |b| b.iter(|| black_box(matvec(&g, &x).unwrap())));
}

fn bench_eigenpair(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigenpair");
    for &eta in &[0.1, 0.5] {
        let g = planted(100, 800, eta);
        for backend in [Backend::Lanczos, Backend::Power] {
            let cfg = SpectralConfig::default().with_backend(backend);
            group.bench_with_input(BenchmarkId::new(backend.to_string(), eta), &g, |b, g| {
                b.iter(|| black_box(leading_eigenpair(g, &cfg).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_detectors(c: &mut Criterion) {
    let g = planted(100, 800, 0.3);
    let spec = leading_eigenpair(&g, &SpectralConfig::default()).unwrap();
    c.bench_function("eigensign_sweep", |b| b.iter(|| black_box(eigensign_sweep(&g, &spec))));
    c.bench_function("random_eigensign_100", |b| {
        b.iter(|| black_box(best_of(&g, &spec, 100, Scale::L1, 1)))
    });
    c.bench_function("greedy_peel", |b| b.iter(|| black_box(greedy_peel(&g, &spec))));
    c.bench_function("bansal", |b| b.iter(|| black_box(bansal(&g))));
}

criterion_group!(benches, bench_matvec, bench_eigenpair, bench_detectors);
criterion_main!(benches);
