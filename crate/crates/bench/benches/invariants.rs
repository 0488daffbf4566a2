use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use quasihyp::invariants::Quadruple;
use quasihyp::optimize::snowflake_line;
use quasihyp::spaces::poincare_distance;
use quasihyp::{c0_finite, delta_hyp_finite, maximize_delta, roundness_finite, SpaceSpec};

use quasihyp_bench::{fixture_metric, planar_quadruples, planar_sample};

fn bench_finite(c: &mut Criterion) {
    let mut group = c.benchmark_group("finite");
    for n in [12usize, 24, 48] {
        let fm = fixture_metric(n, 7);
        group.bench_with_input(BenchmarkId::new("c0", n), &fm, |b, fm| {
            b.iter(|| c0_finite(black_box(fm)).unwrap().value)
        });
    }
    let fm = planar_sample(24, 3);
    group.bench_function("delta_hyp_24", |b| {
        b.iter(|| delta_hyp_finite(black_box(&fm)).unwrap().value)
    });
    let fm = planar_sample(10, 4);
    group.bench_function("roundness_10", |b| {
        b.iter(|| roundness_finite(black_box(&fm), 1e-6).unwrap().value)
    });
    group.finish();
}

fn bench_quadruple(c: &mut Criterion) {
    let quads: Vec<Quadruple> = planar_quadruples(256, 11)
        .iter()
        .map(|[x, y, z, w]| {
            Quadruple::from_points(&SpaceSpec::lp(2, 2.0), [x, y, z, w]).unwrap()
        })
        .collect();
    c.bench_function("delta_ratio_256", |b| {
        b.iter(|| {
            quads
                .iter()
                .map(|q| q.delta_ratio().unwrap())
                .fold(0.0f64, f64::max)
        })
    });
    c.bench_function("poincare_distance", |b| {
        b.iter(|| poincare_distance(black_box(&[0.3, -0.2]), black_box(&[-0.8, 0.1])).unwrap())
    });
}

fn bench_optimize(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimize");
    group.sample_size(10);
    group.bench_function("maximize_lp2_budget20k", |b| {
        b.iter(|| {
            maximize_delta(&SpaceSpec::lp(2, 2.0), 20_000, 8, 1, None)
                .unwrap()
                .best_value
        })
    });
    group.bench_function("snowflake_line_solve", |b| {
        b.iter(|| snowflake_line::solve(black_box(0.37)).unwrap().constant)
    });
    group.bench_function("diagonal_crossing", |b| {
        b.iter(|| snowflake_line::diagonal_crossing(black_box(0.37)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_finite, bench_quadruple, bench_optimize);
criterion_main!(benches);
