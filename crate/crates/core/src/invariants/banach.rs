//! Normed-plane estimators: James constant lower bounds and the roundness
//! inequality for norms.

use crate::error::{Error, Result};
use crate::spaces::lp_norm;

/// Roundness of a non-trivial `L_p` space: `p` for `1 ≤ p ≤ 2`, and the
/// conjugate `p/(p−1)` for `p ≥ 2` (so 1 at `p = ∞`).
pub fn lp_roundness(p: f64) -> f64 {
    if p <= 2.0 {
        p
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

fn check_p(p: f64) -> Result<()> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p must satisfy 1 ≤ p ≤ ∞, got {p}")));
    }
    Ok(())
}

/// Unit vectors of `ℓ²_p` in `grid` directions, with the axis and diagonal
/// directions always included.
fn unit_sphere_grid(p: f64, grid: usize) -> Vec<[f64; 2]> {
    let mut dirs: Vec<f64> = (0..grid)
        .map(|k| std::f64::consts::TAU * k as f64 / grid as f64)
        .collect();
    dirs.extend((0..8).map(|k| std::f64::consts::TAU * k as f64 / 8.0));
    dirs
        .into_iter()
        .map(|theta| {
            let v = [theta.cos(), theta.sin()];
            let norm = lp_norm(p, &v);
            [v[0] / norm, v[1] / norm]
        })
        .collect()
}

/// Lower bound for the James constant of `ℓ²_p`:
/// `max over sampled unit pairs (x, y) of min(‖x−y‖_p, ‖x+y‖_p)`.
/// Requires `grid ≥ 4`.
pub fn james_lower_bound(p: f64, grid: usize) -> Result<f64> {
    check_p(p)?;
    if grid < 4 {
        return Err(Error::Domain(format!("grid must be ≥ 4, got {grid}")));
    }
    let pts = unit_sphere_grid(p, grid);
    let mut best = 0.0f64;
    for a in &pts {
        for b in &pts {
            let diff = [a[0] - b[0], a[1] - b[1]];
            let sum = [a[0] + b[0], a[1] + b[1]];
            best = best.max(lp_norm(p, &diff).min(lp_norm(p, &sum)));
        }
    }
    Ok(best)
}

/// Lower bound for the quasi-hyperbolicity constant of `ℓ²_p` through the
/// midpoint quadruple: `max over sampled unit pairs of ½(‖x−y‖ + ‖x+y‖)`,
/// which equals `Δ(x, y, 0, x+y)` and dominates the James form.
pub fn half_sum_lower_bound(p: f64, grid: usize) -> Result<f64> {
    check_p(p)?;
    if grid < 4 {
        return Err(Error::Domain(format!("grid must be ≥ 4, got {grid}")));
    }
    let pts = unit_sphere_grid(p, grid);
    let mut best = 0.0f64;
    for a in &pts {
        for b in &pts {
            let diff = [a[0] - b[0], a[1] - b[1]];
            let sum = [a[0] + b[0], a[1] + b[1]];
            best = best.max(0.5 * (lp_norm(p, &diff) + lp_norm(p, &sum)));
        }
    }
    Ok(best)
}

/// Defect of the norm roundness inequality
/// `(‖e‖ + ‖f‖)^r ≤ ‖e−f‖^r + ‖e+f‖^r`
/// in the `p`-norm at exponent `r`; ≤ 0 whenever the space is r-round.
pub fn norm_round_defect(p: f64, r: f64, e: &[f64], f: &[f64]) -> Result<f64> {
    check_p(p)?;
    if !(r >= 1.0) || r.is_infinite() {
        return Err(Error::Domain(format!(
            "roundness exponent must be a finite r ≥ 1, got {r}"
        )));
    }
    if e.len() != f.len() {
        return Err(Error::Domain(format!(
            "vector dimensions differ: {} vs {}",
            e.len(),
            f.len()
        )));
    }
    let diff: Vec<f64> = e.iter().zip(f).map(|(a, b)| a - b).collect();
    let sum: Vec<f64> = e.iter().zip(f).map(|(a, b)| a + b).collect();
    Ok((lp_norm(p, e) + lp_norm(p, f)).powf(r)
        - (lp_norm(p, &diff).powf(r) + lp_norm(p, &sum).powf(r)))
}

/// [`norm_round_defect`] at the guaranteed exponent [`lp_roundness`]`(p)`.
pub fn norm_round_check(p: f64, e: &[f64], f: &[f64]) -> Result<f64> {
    norm_round_defect(p, lp_roundness(p), e, f)
}
