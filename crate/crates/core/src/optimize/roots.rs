//! Bracketing bisection to a residual target.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct BisectResult {
    pub root: f64,
    pub residual: f64,
    pub iterations: u32,
    /// Final bracket; its endpoints straddle the root.
    pub bracket: [f64; 2],
}

/// Bisects `f` on `[lo, hi]` until `|f(mid)| ≤ residual_tol` or `max_iter`
/// halvings. The endpoints must straddle a sign change.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, residual_tol: f64, max_iter: u32) -> Result<BisectResult>
where
    F: FnMut(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo.abs() <= residual_tol {
        return Ok(BisectResult {
            root: lo,
            residual: flo,
            iterations: 0,
            bracket: [lo, hi],
        });
    }
    if fhi.abs() <= residual_tol {
        return Ok(BisectResult {
            root: hi,
            residual: fhi,
            iterations: 0,
            bracket: [lo, hi],
        });
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBracket { lo, hi });
    }

    let mut mid = 0.5 * (lo + hi);
    let mut fmid = f(mid);
    let mut iterations = 0;
    while fmid.abs() > residual_tol && iterations < max_iter {
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        debug_assert!(flo.signum() != fhi.signum(), "bracket lost the sign change");
        mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break; // bracket narrowed to adjacent floats
        }
        fmid = f(mid);
        iterations += 1;
    }
    Ok(BisectResult {
        root: mid,
        residual: fmid,
        iterations,
        bracket: [lo, hi],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_root() {
        let r = bisect(|x| x * x * x - 2.0, 0.0, 2.0, 1e-13, 200).unwrap();
        assert!((r.root - 2f64.powf(1.0 / 3.0)).abs() < 1e-12);
        assert!(r.residual.abs() <= 1e-13);
        // Endpoints still straddle the root.
        let f = |x: f64| x * x * x - 2.0;
        assert!(f(r.bracket[0]) <= 0.0 && f(r.bracket[1]) >= 0.0);
    }

    #[test]
    fn endpoint_root_short_circuits() {
        let r = bisect(|x| x - 1.0, 1.0, 3.0, 1e-13, 100).unwrap();
        assert_eq!(r.root, 1.0);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn no_bracket_is_reported() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-13, 100),
            Err(Error::NoBracket { .. })
        ));
    }
}
