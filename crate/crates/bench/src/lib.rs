//! Shared fixtures for the benchmark targets.

use quasihyp::{random_finite_metric, FiniteMetricSpace, Point, SampleBounds, SpaceSpec};

/// A reproducible metric of `n` points (mixture of cloud and graph metrics).
pub fn fixture_metric(n: usize, seed: u64) -> FiniteMetricSpace {
    random_finite_metric(n, seed)
}

/// A reproducible planar Euclidean sample restricted to a matrix.
pub fn planar_sample(n: usize, seed: u64) -> FiniteMetricSpace {
    let plane = SpaceSpec::lp(2, 2.0);
    let pts = plane
        .sample(n, &SampleBounds::Interval { lo: -10.0, hi: 10.0 }, seed)
        .expect("sampling succeeds");
    plane.restrict(&pts).expect("restriction succeeds")
}

/// Reproducible coordinate quadruples in the p-norm plane.
pub fn planar_quadruples(count: usize, seed: u64) -> Vec<[Point; 4]> {
    let plane = SpaceSpec::lp(2, 2.0);
    let pts = plane
        .sample(
            4 * count,
            &SampleBounds::Interval { lo: -10.0, hi: 10.0 },
            seed,
        )
        .expect("sampling succeeds");
    pts.chunks_exact(4)
        .map(|c| [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
        .collect()
}
