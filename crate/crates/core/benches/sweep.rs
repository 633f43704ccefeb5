// Copyright 2026 The Transmon Maser Contributors
// SPDX-License-Identifier: Apache-2.0

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use maser::dynamics::SteadyOptions;
use maser::model::{mhz, SystemParams};
use maser::par;
use maser::simulation::solve_steady;

fn grid(n_r: usize) -> Vec<SystemParams> {
    (0..16)
        .map(|i| {
            let mut p = SystemParams::coupling_point(8.0, 15.0, 20.0, n_r);
            p.drive = mhz(4.0 + 2.0 * i as f64);
            p
        })
        .collect()
}

fn solve(p: &SystemParams) -> f64 {
    solve_steady(p, &SteadyOptions::default()).map(|r| r.mean_n()).unwrap_or(f64::NAN)
}

fn sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("steady_sweep_16");
    group.sample_size(10);
    for n_r in [6, 12] {
        let points = grid(n_r);
        group.bench_with_input(BenchmarkId::new("sequential", n_r), &points, |b, pts| {
            b.iter(|| pts.iter().map(solve).collect::<Vec<_>>())
        });
        group.bench_with_input(BenchmarkId::new(if par::PARALLEL { "rayon" } else { "fallback" }, n_r), &points, |b, pts| {
            b.iter(|| par::map(pts, solve))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
