//! Propagation of pairwise λ-max bounds to pair-sum bounds on 4×4 arrays.
//!
//! If a symmetric array satisfies `a_ij ≤ λ·max(a_ik, a_kj)` for all index
//! triples, then `a_ij + a_kl ≤ λ·max(a_ik + a_jl, a_il + a_jk)` for all
//! index choices. This is the combinatorial engine behind the `2^α` bound
//! for snowflaked metrics: apply it to `a_ij = d(x_i, x_j)^α` with
//! `λ = 2^α`.

use crate::error::{Error, Result};
use crate::tol;

/// Whether the λ-max hypothesis holds, and (when it does) whether the
/// pair-sum conclusion holds. The conclusion must always be true when the
/// hypothesis is; the property tests target exactly that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UltraCheck {
    pub hypothesis: bool,
    pub conclusion: Option<bool>,
}

/// Verifies hypothesis and conclusion on a symmetric 4×4 array with
/// `λ ≥ 1`. Conclusion defects inside the default tolerance band count as
/// satisfied.
pub fn ultra_check(a: &[[f64; 4]; 4], lambda: f64) -> Result<UltraCheck> {
    if !(lambda >= 1.0) {
        return Err(Error::Domain(format!("λ must be ≥ 1, got {lambda}")));
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            if a[i][j] != a[j][i] {
                return Err(Error::Domain(format!(
                    "array is not symmetric at ({i}, {j}): {} vs {}",
                    a[i][j], a[j][i]
                )));
            }
        }
    }

    let mut hypothesis = true;
    'hyp: for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                if a[i][j] > lambda * a[i][k].max(a[k][j]) {
                    hypothesis = false;
                    break 'hyp;
                }
            }
        }
    }
    if !hypothesis {
        return Ok(UltraCheck {
            hypothesis: false,
            conclusion: None,
        });
    }

    let mut conclusion = true;
    'conc: for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let lhs = a[i][j] + a[k][l];
                    let rhs = lambda * (a[i][k] + a[j][l]).max(a[i][l] + a[j][k]);
                    if !tol::satisfied(lhs - rhs, lhs.abs().max(rhs.abs())) {
                        conclusion = false;
                        break 'conc;
                    }
                }
            }
        }
    }
    Ok(UltraCheck {
        hypothesis: true,
        conclusion: Some(conclusion),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{random_finite_metric, SampleBounds, SpaceSpec};
    use rand::{Rng, SeedableRng};

    #[test]
    fn zero_array_passes_both() {
        let out = ultra_check(&[[0.0; 4]; 4], 1.3).unwrap();
        assert_eq!(
            out,
            UltraCheck {
                hypothesis: true,
                conclusion: Some(true)
            }
        );
    }

    #[test]
    fn snowflaked_distances_satisfy_hypothesis_and_conclusion() {
        let plane = SpaceSpec::lp(2, 2.0);
        for seed in 0..20 {
            let pts = plane
                .sample(4, &SampleBounds::Interval { lo: -3.0, hi: 3.0 }, seed)
                .unwrap();
            let fm = plane.restrict(&pts).unwrap();
            for alpha in [0.3, 0.6, 1.0] {
                let mut a = [[0.0; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        a[i][j] = fm.d(i, j).powf(alpha);
                    }
                }
                let out = ultra_check(&a, 2f64.powf(alpha)).unwrap();
                assert!(out.hypothesis, "hypothesis failed at seed {seed}");
                assert_eq!(out.conclusion, Some(true), "conclusion failed at seed {seed}");
            }
        }
    }

    #[test]
    fn snowflaked_random_metrics_too() {
        for seed in 0..10 {
            let fm = random_finite_metric(4, seed);
            let alpha = 0.5;
            let mut a = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    a[i][j] = fm.d(i, j).powf(alpha);
                }
            }
            let out = ultra_check(&a, 2f64.powf(alpha)).unwrap();
            assert_eq!(out.conclusion, Some(true));
        }
    }

    #[test]
    fn rejection_sampled_arrays_never_break_the_conclusion() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(123);
        let mut accepted = 0usize;
        while accepted < 300 {
            let lambda = rng.random_range(1.0..2.0);
            let mut a = [[0.0f64; 4]; 4];
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let v = rng.random_range(-1.0..1.0);
                    a[i][j] = v;
                    a[j][i] = v;
                }
            }
            let out = ultra_check(&a, lambda).unwrap();
            if out.hypothesis {
                accepted += 1;
                assert_eq!(out.conclusion, Some(true), "λ = {lambda}, a = {a:?}");
            }
        }
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let mut a = [[0.0; 4]; 4];
        a[0][1] = 1.0;
        assert!(matches!(ultra_check(&a, 1.0), Err(Error::Domain(_))));
        assert!(matches!(ultra_check(&[[0.0; 4]; 4], 0.5), Err(Error::Domain(_))));
    }
}
