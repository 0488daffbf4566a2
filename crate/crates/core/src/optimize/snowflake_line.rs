//! Closed-form machinery for the α-snowflake of the Euclidean line.
//!
//! Every quadruple of the snowflaked line reduces, after translation and
//! scaling, to `(0, 1+s, 1−t, 2)` with `(t, s)` in the triangle
//! `D = {(t,s) ∈ [−1,1]² : t+s ≥ 0}`. Its ratio `Δ` is the pointwise
//! minimum of the two ratios [`ratio_f`] and [`ratio_g`], the maximum of
//! which is attained on the diagonal crossing `F(a,a) = G(a,a)`. The
//! constant of the space is `m^α` where `m = (1+a)/(1−a)` solves
//! `(m−1)^α + (m+1)^α = 2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::roots::bisect;

/// Solution bundle for one exponent: the root `m`, the diagonal crossing
/// `a = (m−1)/(m+1)`, and the constant `m^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnowflakeLineSolution {
    pub alpha: f64,
    pub m: f64,
    pub a: f64,
    pub constant: f64,
}

fn check_alpha_closed(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(())
}

fn check_domain(t: f64, s: f64) -> Result<()> {
    if !((-1.0..=1.0).contains(&t) && (-1.0..=1.0).contains(&s) && t + s >= 0.0) {
        return Err(Error::Domain(format!(
            "(t, s) = ({t}, {s}) outside the triangle [−1,1]² ∩ {{t+s ≥ 0}}"
        )));
    }
    Ok(())
}

/// `F(t,s) = ((1+t)^α + (1+s)^α) / ((1−t)^α + (1−s)^α)`; undefined at the
/// corner `(1, 1)`.
pub fn ratio_f(t: f64, s: f64, alpha: f64) -> Result<f64> {
    check_alpha_closed(alpha)?;
    check_domain(t, s)?;
    let denom = (1.0 - t).powf(alpha) + (1.0 - s).powf(alpha);
    if denom == 0.0 {
        return Err(Error::Domain(
            "F is undefined at (1, 1): zero denominator".into(),
        ));
    }
    Ok(((1.0 + t).powf(alpha) + (1.0 + s).powf(alpha)) / denom)
}

/// `G(t,s) = ((1+t)^α + (1+s)^α) / ((t+s)^α + 2^α)`.
pub fn ratio_g(t: f64, s: f64, alpha: f64) -> Result<f64> {
    check_alpha_closed(alpha)?;
    check_domain(t, s)?;
    Ok(((1.0 + t).powf(alpha) + (1.0 + s).powf(alpha))
        / ((t + s).powf(alpha) + 2f64.powf(alpha)))
}

/// Unique `m ≥ 1` with `(m−1)^α + (m+1)^α = 2`, to residual `≤ 1e−13`.
/// The left side is strictly increasing in `m` from `2^α ≤ 2`, so the
/// bracket `[1, 3]` is widened upward until it straddles the root.
pub fn root_m(alpha: f64) -> Result<f64> {
    check_alpha_closed(alpha)?;
    let f = |m: f64| (m - 1.0).powf(alpha) + (m + 1.0).powf(alpha) - 2.0;
    let lo = 1.0;
    let mut hi = 3.0;
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    Ok(bisect(f, lo, hi, 1e-13, 200)?.root)
}

/// The constant of the α-snowflaked line: `root_m(α)^α`.
pub fn constant(alpha: f64) -> Result<f64> {
    Ok(root_m(alpha)?.powf(alpha))
}

/// Unique `a ∈ (0, 1)` with `F(a,a) = G(a,a)`, to residual `≤ 1e−12`;
/// consistent with [`root_m`] through `m = (1+a)/(1−a)`.
pub fn diagonal_crossing(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "diagonal crossing needs alpha in (0, 1), got {alpha}"
        )));
    }
    let g = |a: f64| {
        let f_aa = ((1.0 + a) / (1.0 - a)).powf(alpha);
        let g_aa = 2.0 * (1.0 + a).powf(alpha) / ((2.0 * a).powf(alpha) + 2f64.powf(alpha));
        f_aa - g_aa
    };
    Ok(bisect(g, 1e-16, 1.0 - 1e-12, 1e-12, 200)?.root)
}

/// Solves the exponent end to end. At `α = 1` the line itself is
/// 0-hyperbolic and `m = 1`, `a = 0`, constant 1.
pub fn solve(alpha: f64) -> Result<SnowflakeLineSolution> {
    let m = root_m(alpha)?;
    Ok(SnowflakeLineSolution {
        alpha,
        m,
        a: (m - 1.0) / (m + 1.0),
        constant: m.powf(alpha),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn alpha_one_degenerates_to_the_line() {
        assert_eq!(root_m(1.0).unwrap(), 1.0);
        let sol = solve(1.0).unwrap();
        assert_eq!((sol.m, sol.a, sol.constant), (1.0, 0.0, 1.0));
    }

    #[test]
    fn alpha_half_is_five_quarters() {
        // √(1/4) + √(9/4) = 2 exactly.
        assert!((root_m(0.5).unwrap() - 1.25).abs() <= 1e-12);
        assert!((constant(0.5).unwrap() - 5f64.sqrt() / 2.0).abs() <= 1e-12);
    }

    #[test]
    fn residual_is_tight_for_generic_alpha() {
        for alpha in [0.1, 0.25, 0.75, 0.9] {
            let m = root_m(alpha).unwrap();
            let residual = (m - 1.0).powf(alpha) + (m + 1.0).powf(alpha) - 2.0;
            assert!(residual.abs() <= 1e-13, "residual {residual} at {alpha}");
            assert!(m >= 1.0);
        }
    }

    #[test]
    fn solution_invariants() {
        for alpha in [0.2, 0.5, 0.8] {
            let sol = solve(alpha).unwrap();
            let res = (sol.m - 1.0).powf(alpha) + (sol.m + 1.0).powf(alpha) - 2.0;
            assert!(res.abs() <= 1e-12);
            assert!((sol.m - (1.0 + sol.a) / (1.0 - sol.a)).abs() <= 1e-10);
            assert_eq!(sol.constant, sol.m.powf(alpha));
            assert!(sol.constant > 1.0);
        }
        assert_eq!(solve(1.0).unwrap().constant, 1.0);
    }

    #[test]
    fn crossing_alpha_half_is_one_ninth() {
        // m = 5/4 gives a = (m−1)/(m+1) = 1/9.
        let a = diagonal_crossing(0.5).unwrap();
        assert!((a - 1.0 / 9.0).abs() <= 1e-9);
    }

    #[test]
    fn crossing_is_consistent_with_root_m() {
        for alpha in [0.25, 0.5, 0.75, 0.9] {
            let a = diagonal_crossing(alpha).unwrap();
            let m = root_m(alpha).unwrap();
            assert!(((1.0 + a) / (1.0 - a) - m).abs() <= 1e-9, "alpha {alpha}");
            let f_aa = ratio_f(a, a, alpha).unwrap();
            assert!((f_aa - constant(alpha).unwrap()).abs() <= 1e-9);
        }
        // Continuity toward the degenerate end.
        assert!(diagonal_crossing(0.999).unwrap() < 0.01);
    }

    #[test]
    fn ratio_values_at_the_origin() {
        for alpha in [0.25, 0.5, 0.75] {
            assert_relative_eq!(ratio_f(0.0, 0.0, alpha).unwrap(), 1.0);
            assert_relative_eq!(
                ratio_g(0.0, 0.0, alpha).unwrap(),
                2f64.powf(1.0 - alpha),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn f_is_one_exactly_on_the_antidiagonal() {
        // F(t, −t) = 1 identically, and F > 1 as soon as t + s > 0.
        let alpha = 0.6;
        for t in [0.25, 0.9, -0.5, 1.0] {
            assert_relative_eq!(ratio_f(t, -t, alpha).unwrap(), 1.0, epsilon = 1e-14);
        }
        for (t, s) in [(0.3, 0.3), (0.9, 0.2), (0.25, 0.75)] {
            assert!((ratio_f(t, s, alpha).unwrap() - 1.0).abs() > 1e-6);
        }
    }

    #[test]
    fn corner_and_domain_errors() {
        assert!(matches!(ratio_f(1.0, 1.0, 0.5), Err(Error::Domain(_))));
        assert!(matches!(ratio_f(-0.9, 0.2, 0.5), Err(Error::Domain(_))));
        assert!(matches!(ratio_g(0.0, 1.5, 0.5), Err(Error::Domain(_))));
        assert!(matches!(root_m(0.0), Err(Error::Domain(_))));
        assert!(matches!(root_m(1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn min_of_f_and_g_is_the_quadruple_ratio() {
        use crate::invariants::Quadruple;
        use crate::spaces::{Point, SpaceSpec};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let alpha = rng.random_range(0.05..1.0);
            let t: f64 = rng.random_range(-1.0..1.0);
            let s = rng.random_range(-t.min(1.0)..1.0);
            let space = SpaceSpec::snowflake(SpaceSpec::EuclideanLine, alpha);
            let pts = [
                Point::from(0.0),
                Point::from(1.0 + s),
                Point::from(1.0 - t),
                Point::from(2.0),
            ];
            let q = Quadruple::from_points(&space, [&pts[0], &pts[1], &pts[2], &pts[3]]).unwrap();
            let expected = ratio_f(t, s, alpha)
                .unwrap()
                .min(ratio_g(t, s, alpha).unwrap());
            assert_relative_eq!(
                q.delta_ratio().unwrap(),
                expected,
                max_relative = 1e-12,
                epsilon = 1e-12
            );
        }
    }
}
