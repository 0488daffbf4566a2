//! Cross-module property tests for the space and quadruple invariants.

use proptest::prelude::*;

use quasihyp::invariants::{gromov_product, Quadruple};
use quasihyp::spaces::{lp_norm, validate_metric, Point, SampleBounds, SpaceSpec};
use quasihyp::{c0_finite, random_finite_metric};

fn coords2() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-50.0..50.0f64, 2)
}

#[test]
fn hyperbolic_disk_samples_are_log2_hyperbolic() {
    // Any finite restriction of the disk has defect/2 at most log 2.
    let disk = SpaceSpec::HyperbolicPlane;
    for seed in 0..5 {
        let pts = disk.sample(12, &SampleBounds::Radius(0.99), seed).unwrap();
        let fm = disk.restrict(&pts).unwrap();
        let delta = quasihyp::delta_hyp_finite(&fm).unwrap().value;
        assert!(
            delta <= std::f64::consts::LN_2 + 1e-9,
            "delta {delta} exceeds log 2 at seed {seed}"
        );
    }
}

#[test]
fn tiny_hyperbolic_clusters_look_euclidean() {
    // A cluster of diameter ≤ 1e−3 containing a square quadruple pushes the
    // restricted constant into [√2 − 0.01, √2 + ε].
    let disk = SpaceSpec::HyperbolicPlane;
    for (cx, cy) in [(0.0, 0.0), (0.5, 0.2), (-0.3, 0.6)] {
        let scale = 1e-4 * (1.0 - (cx * cx + cy * cy));
        let mut pts = Vec::new();
        for k in 0..4 {
            let a = std::f64::consts::FRAC_PI_2 * k as f64 + 0.3;
            pts.push(Point::Coords(vec![cx + scale * a.cos(), cy + scale * a.sin()]));
        }
        pts.push(Point::Coords(vec![cx + 0.4 * scale, cy - 0.2 * scale]));
        let fm = disk.restrict(&pts).unwrap();
        let diameter = fm
            .matrix()
            .iter()
            .flatten()
            .fold(0.0f64, |m, &d| m.max(d));
        assert!(diameter <= 1e-3, "cluster diameter {diameter}");
        let c0 = c0_finite(&fm).unwrap().value;
        assert!(
            c0 >= std::f64::consts::SQRT_2 - 1e-2,
            "c0 {c0} below the near-Euclidean bound at ({cx}, {cy})"
        );
        assert!(c0 <= std::f64::consts::SQRT_2 + 1e-6, "c0 {c0}");
    }
}

proptest! {
    #[test]
    fn snowflake_distance_is_base_power(
        a in coords2(),
        b in coords2(),
        alpha in 0.05..1.0f64,
        p in 1.0..4.0f64,
    ) {
        let base = SpaceSpec::lp(2, p);
        let snow = SpaceSpec::snowflake(base.clone(), alpha);
        let (pa, pb) = (Point::Coords(a), Point::Coords(b));
        let d_base = base.distance(&pa, &pb).unwrap();
        let d_snow = snow.distance(&pa, &pb).unwrap();
        // Exact up to the single rounding of powf.
        prop_assert_eq!(d_snow, d_base.powf(alpha));
    }

    #[test]
    fn nested_snowflakes_compose_exponents(
        a in coords2(),
        b in coords2(),
        a1 in 0.1..1.0f64,
        a2 in 0.1..1.0f64,
    ) {
        let base = SpaceSpec::lp(2, 2.0);
        let nested = SpaceSpec::snowflake(SpaceSpec::snowflake(base.clone(), a1), a2);
        let flat = SpaceSpec::snowflake(base, a1 * a2);
        prop_assert!((nested.snowflake_exponent() - a1 * a2).abs() <= 1e-15);
        let (pa, pb) = (Point::Coords(a), Point::Coords(b));
        let dn = nested.distance(&pa, &pb).unwrap();
        let df = flat.distance(&pa, &pb).unwrap();
        prop_assert!(
            (dn - df).abs() <= 1e-12 * dn.abs().max(df.abs()).max(1e-300),
            "nested {} vs flat {}", dn, df
        );
    }

    #[test]
    fn half_line_is_roughly_the_euclidean_half_line(
        x in 0.0..1e6f64,
        y in 0.0..1e6f64,
        alpha in 0.01..0.5f64,
    ) {
        let s = SpaceSpec::HalfLineAlpha { alpha };
        let d = s.distance(&x.into(), &y.into()).unwrap();
        let gap = d - (x - y).abs();
        prop_assert!(gap >= 0.0, "gap {}", gap);
        prop_assert!(gap <= 1.0, "gap {}", gap);
    }

    #[test]
    fn p_norms_are_comparable(
        v in prop::collection::vec(-10.0..10.0f64, 1..6),
        pi in 0usize..4,
        qi in 0usize..4,
    ) {
        // ‖x‖_q ≤ ‖x‖_p ≤ n^{1/p−1/q}·‖x‖_q for p ≤ q.
        let ladder = [1.0, 1.5, 2.0, f64::INFINITY];
        let (p, q) = (ladder[pi.min(qi)], ladder[pi.max(qi)]);
        let np = lp_norm(p, &v);
        let nq = lp_norm(q, &v);
        let n = v.len() as f64;
        let inv = |e: f64| if e.is_infinite() { 0.0 } else { 1.0 / e };
        prop_assert!(nq <= np * (1.0 + 1e-12));
        prop_assert!(np <= n.powf(inv(p) - inv(q)) * nq * (1.0 + 1e-12));
    }

    #[test]
    fn restriction_always_validates(seed in 0u64..200, count in 2usize..8) {
        let spaces = [
            SpaceSpec::lp(2, 1.0),
            SpaceSpec::lp(3, 2.5),
            SpaceSpec::HalfLineAlpha { alpha: 0.6 },
            SpaceSpec::snowflake(SpaceSpec::EuclideanLine, 0.4),
            SpaceSpec::GraphVm { m: 1.5 },
        ];
        let space = &spaces[(seed % 5) as usize];
        let bounds = if matches!(space, SpaceSpec::HalfLineAlpha { .. }) {
            SampleBounds::Interval { lo: 0.0, hi: 20.0 }
        } else {
            SampleBounds::Interval { lo: -20.0, hi: 20.0 }
        };
        let pts = space.sample(count, &bounds, seed).unwrap();
        let fm = space.restrict(&pts).unwrap();
        prop_assert!(validate_metric(fm.matrix()).unwrap().is_empty());
    }

    #[test]
    fn delta_is_pair_symmetric_bounded_and_scale_free(
        seed in 0u64..500,
        lambda in 0.001..1000.0f64,
    ) {
        let fm = random_finite_metric(5, seed);
        let q = Quadruple::from_indices(&fm, [0, 1, 2, 3]).unwrap();
        let r = q.delta_ratio().unwrap();
        prop_assert!((0.0..=2.0 + 1e-12).contains(&r));

        // Swapping within a pair and swapping the pairs preserves Δ.
        let swapped_xy = Quadruple::from_indices(&fm, [1, 0, 2, 3]).unwrap();
        prop_assert_eq!(swapped_xy.delta_ratio().unwrap(), r);
        let swapped_pairs = Quadruple::from_indices(&fm, [2, 3, 0, 1]).unwrap();
        prop_assert_eq!(swapped_pairs.delta_ratio().unwrap(), r);

        // Rescaling all six distances is invisible to Δ.
        let scaled = Quadruple {
            d_xy: q.d_xy * lambda,
            d_zw: q.d_zw * lambda,
            d_xz: q.d_xz * lambda,
            d_yw: q.d_yw * lambda,
            d_xw: q.d_xw * lambda,
            d_yz: q.d_yz * lambda,
            ..q.clone()
        };
        let rs = scaled.delta_ratio().unwrap();
        prop_assert!((rs - r).abs() <= 1e-9 * r.max(1.0), "{} vs {}", rs, r);
    }

    #[test]
    fn gromov_products_are_nonnegative(seed in 0u64..300) {
        let plane = SpaceSpec::lp(2, 2.0);
        let pts = plane
            .sample(3, &SampleBounds::Interval { lo: -10.0, hi: 10.0 }, seed)
            .unwrap();
        let g = gromov_product(&plane, &pts[0], &pts[1], &pts[2]).unwrap();
        prop_assert!(g >= -1e-12);
    }

    #[test]
    fn euclidean_quadruples_are_ptolemaic_two_round_and_sqrt2_bounded(seed in 0u64..500) {
        let space = SpaceSpec::lp(3, 2.0);
        let pts = space
            .sample(4, &SampleBounds::Interval { lo: -10.0, hi: 10.0 }, seed)
            .unwrap();
        let q = Quadruple::from_points(&space, [&pts[0], &pts[1], &pts[2], &pts[3]]).unwrap();

        let cross = q.d_xz * q.d_yw + q.d_xw * q.d_yz;
        prop_assert!(q.ptolemy_defect() <= 1e-12 * cross.max(1.0));

        let scale: f64 = q.distances().iter().map(|d| d * d).sum();
        prop_assert!(q.p_round_defect(2.0).unwrap() <= 1e-12 * scale.max(1.0));

        // Ptolemy + quadrilateral together force Δ ≤ √2.
        prop_assert!(q.delta_ratio().unwrap() <= std::f64::consts::SQRT_2 + 1e-9);
    }

    #[test]
    fn snowflaked_matrices_respect_the_cap(seed in 0u64..120, alpha in 0.05..1.0f64) {
        let fm = random_finite_metric(6, seed);
        let snow = fm.snowflake(alpha).unwrap();
        let c0 = c0_finite(&snow).unwrap().value;
        prop_assert!(c0 <= 2f64.powf(alpha) + 1e-12, "c0 {} vs cap {}", c0, 2f64.powf(alpha));
    }

    #[test]
    fn filtered_suprema_are_non_increasing_in_the_floor(seed in 0u64..100) {
        // Finite-sample sweep: sup over quadruples with max(S₂,S₃) ≥ R can
        // only shrink as R grows.
        let space = SpaceSpec::lp(2, 1.5);
        let pts = space
            .sample(10, &SampleBounds::Interval { lo: -20.0, hi: 20.0 }, seed)
            .unwrap();
        let mut quads = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                for k in 0..10 {
                    for l in 0..10 {
                        let q = Quadruple::from_points(&space, [&pts[i], &pts[j], &pts[k], &pts[l]])
                            .unwrap();
                        if !q.is_degenerate() {
                            quads.push(q);
                        }
                    }
                }
            }
        }
        let sup_at = |r: f64| -> f64 {
            quads
                .iter()
                .filter(|q| {
                    let [_, s2, s3] = q.pair_sums();
                    s2.max(s3) >= r
                })
                .map(|q| q.delta_ratio().unwrap())
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let mut prev = f64::INFINITY;
        for r in [0.0, 1.0, 5.0, 20.0, 60.0] {
            let s = sup_at(r);
            prop_assert!(s <= prev + 1e-12);
            prev = s;
        }
    }
}
