//! Exact four-point suprema over finite metric spaces.
//!
//! All operations enumerate index multisets `i ≤ j ≤ k ≤ l` (points may
//! repeat; the all-identical quadruple is excluded) and consider the three
//! pairings of each multiset. For the ratio and defect suprema it suffices
//! to compare the largest pair-sum `L` against the medium one `M`:
//! the best pairing of a multiset always puts `L` in the numerator.
//!
//! Enumeration is partitioned across workers; reductions are max-reductions
//! with deterministic lexicographic tie-breaking on the witness index, so
//! results do not depend on the worker count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spaces::{FiniteMetricSpace, EXHAUSTIVE_CAP};
use crate::tol;

use super::quadruple::Quadruple;
use super::transfer::BoundCertificate;

/// Largest roundness exponent probed before reporting "unbounded at cap".
pub const ROUNDNESS_P_MAX: f64 = 64.0;

/// Number of index multisets scanned for an `n`-point space: `C(n+3, 4)`.
pub fn multiset_count(n: usize) -> u64 {
    let n = n as u64;
    n * (n + 1) * (n + 2) * (n + 3) / 24
}

/// A supremum together with a quadruple attaining it.
#[derive(Debug, Clone)]
pub struct Extremum {
    pub value: f64,
    pub witness: Quadruple,
}

/// Outcome of a `(μ, δ)` check over every quadruple.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub holds: bool,
    /// Maximal slack `S₁ − (μ·max(S₂,S₃) + 2δ)` observed (negative when
    /// the inequality holds strictly everywhere).
    pub worst_defect: f64,
    pub worst: Quadruple,
}

/// Result of the roundness search.
#[derive(Debug, Clone)]
pub struct RoundnessResult {
    pub value: f64,
    /// No violating quadruple exists at [`ROUNDNESS_P_MAX`]; the supremum is
    /// unbounded at the cap.
    pub capped: bool,
    /// The monotonicity precondition of the bisection failed and the value
    /// was recovered by a grid scan.
    pub used_grid: bool,
}

/// Distances of one index multiset, in the fixed order
/// `[d_ij, d_ik, d_il, d_jk, d_jl, d_kl]`.
#[derive(Clone, Copy)]
struct Multiset {
    idx: [usize; 4],
    d: [f64; 6],
}

impl Multiset {
    #[inline]
    fn new(fm: &FiniteMetricSpace, i: usize, j: usize, k: usize, l: usize) -> Self {
        Self {
            idx: [i, j, k, l],
            d: [
                fm.d(i, j),
                fm.d(i, k),
                fm.d(i, l),
                fm.d(j, k),
                fm.d(j, l),
                fm.d(k, l),
            ],
        }
    }

    /// The three pair-sums, one per perfect matching of the four indices.
    #[inline]
    fn pair_sums(&self) -> [f64; 3] {
        [
            self.d[0] + self.d[5],
            self.d[1] + self.d[4],
            self.d[2] + self.d[3],
        ]
    }

    #[inline]
    fn all_zero(&self) -> bool {
        self.d.iter().all(|&d| d == 0.0)
    }

    /// Quadruple ordering that puts pairing `t` into the `(xy, zw)` slots.
    fn quad_order(&self, t: usize) -> [usize; 4] {
        let [i, j, k, l] = self.idx;
        match t {
            0 => [i, j, k, l],
            1 => [i, k, j, l],
            _ => [i, l, j, k],
        }
    }

    /// Index of the largest pair-sum (first on ties) and the maximum of the
    /// other two.
    #[inline]
    fn top_and_medium(&self) -> (usize, f64, f64) {
        let s = self.pair_sums();
        let mut t = 0;
        if s[1] > s[t] {
            t = 1;
        }
        if s[2] > s[t] {
            t = 2;
        }
        let m = match t {
            0 => s[1].max(s[2]),
            1 => s[0].max(s[2]),
            _ => s[0].max(s[1]),
        };
        (t, s[t], m)
    }
}

/// Best candidate so far: value, multiset index, pairing.
#[derive(Debug, Clone, Copy)]
struct Best {
    value: f64,
    idx: [usize; 4],
    pairing: usize,
}

fn better(a: &Option<Best>, b: &Best) -> bool {
    match a {
        None => true,
        Some(a) => {
            b.value > a.value
                || (b.value == a.value && (b.idx, b.pairing) < (a.idx, a.pairing))
        }
    }
}

fn merge_best(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (a, Some(b)) if better(&a, &b) => Some(b),
        (a, _) => a,
    }
}

fn check_cap(fm: &FiniteMetricSpace) -> Result<()> {
    if fm.n() > EXHAUSTIVE_CAP {
        return Err(Error::EnumerationCap {
            n: fm.n(),
            cap: EXHAUSTIVE_CAP,
        });
    }
    Ok(())
}

/// Below this point count, parallel dispatch costs more than the scan.
const PAR_THRESHOLD: usize = 16;

fn par_scan<A, F>(fm: &FiniteMetricSpace, step: F, merge: fn(A, A) -> A) -> A
where
    A: Send + Default,
    F: Fn(&mut A, &Multiset) + Sync,
{
    let n = fm.n();
    let scan_row = |i: usize| {
        let mut acc = A::default();
        for j in i..n {
            for k in j..n {
                for l in k..n {
                    let ms = Multiset::new(fm, i, j, k, l);
                    step(&mut acc, &ms);
                }
            }
        }
        acc
    };
    if n <= PAR_THRESHOLD {
        (0..n).map(scan_row).fold(A::default(), merge)
    } else {
        (0..n).into_par_iter().map(scan_row).reduce(A::default, merge)
    }
}

#[derive(Default)]
struct RatioAcc {
    best: Option<Best>,
    violation: Option<[usize; 4]>,
}

/// Exact supremum of `Δ` over all quadruples of the space: the restricted
/// quasi-hyperbolicity constant `C₀`, with an attaining witness. Lies in
/// `[1, 2]` for any valid metric with at least two distinct points.
pub fn c0_finite(fm: &FiniteMetricSpace) -> Result<Extremum> {
    if fm.n() < 2 {
        return Err(Error::TooFewPoints {
            got: fm.n(),
            need: 2,
        });
    }
    check_cap(fm)?;
    let acc = par_scan::<RatioAcc, _>(
        fm,
        |acc, ms| {
            if ms.all_zero() {
                return;
            }
            let (t, l, m) = ms.top_and_medium();
            if m <= 0.0 {
                if acc.violation.map_or(true, |v| ms.idx < v) {
                    acc.violation = Some(ms.idx);
                }
                return;
            }
            let cand = Best {
                value: l / m,
                idx: ms.idx,
                pairing: t,
            };
            if better(&acc.best, &cand) {
                acc.best = Some(cand);
            }
        },
        |a, b| RatioAcc {
            best: merge_best(a.best, b.best),
            violation: match (a.violation, b.violation) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
        },
    );
    if let Some(idx) = acc.violation {
        return Err(Error::MetricViolation(format!(
            "quadruple {idx:?} has a positive pair-sum but zero cross sums"
        )));
    }
    let best = acc.best.ok_or(Error::UndefinedRatio)?;
    Ok(Extremum {
        value: best.value,
        witness: Quadruple::from_indices(fm, {
            let ms = Multiset::new(fm, best.idx[0], best.idx[1], best.idx[2], best.idx[3]);
            ms.quad_order(best.pairing)
        })?,
    })
}

#[derive(Default)]
struct DefectAcc {
    best: Option<Best>,
}

/// Least `δ` such that the space satisfies the `(1, δ)`-four-point
/// inequality: half the maximal defect `L − M` over all quadruples.
/// Zero exactly when the space is 0-hyperbolic.
pub fn delta_hyp_finite(fm: &FiniteMetricSpace) -> Result<Extremum> {
    if fm.n() < 1 {
        return Err(Error::TooFewPoints { got: 0, need: 1 });
    }
    check_cap(fm)?;
    let acc = par_scan::<DefectAcc, _>(
        fm,
        |acc, ms| {
            let (t, l, m) = ms.top_and_medium();
            let cand = Best {
                value: (l - m).max(0.0),
                idx: ms.idx,
                pairing: t,
            };
            if better(&acc.best, &cand) {
                acc.best = Some(cand);
            }
        },
        |a, b| DefectAcc {
            best: merge_best(a.best, b.best),
        },
    );
    let best = acc.best.expect("n >= 1 yields at least one multiset");
    Ok(Extremum {
        value: 0.5 * best.value,
        witness: Quadruple::from_indices(fm, {
            let ms = Multiset::new(fm, best.idx[0], best.idx[1], best.idx[2], best.idx[3]);
            ms.quad_order(best.pairing)
        })?,
    })
}

/// Checks `S₁ ≤ μ·max(S₂, S₃) + 2δ` over every quadruple; violations inside
/// the default tolerance band count as satisfied.
pub fn mu_delta_check(fm: &FiniteMetricSpace, cert: &BoundCertificate) -> Result<CheckOutcome> {
    if fm.n() < 1 {
        return Err(Error::TooFewPoints { got: 0, need: 1 });
    }
    check_cap(fm)?;
    let (mu, two_delta) = (cert.mu, 2.0 * cert.delta);
    let acc = par_scan::<DefectAcc, _>(
        fm,
        |acc, ms| {
            let (t, l, m) = ms.top_and_medium();
            let cand = Best {
                value: l - (mu * m + two_delta),
                idx: ms.idx,
                pairing: t,
            };
            if better(&acc.best, &cand) {
                acc.best = Some(cand);
            }
        },
        |a, b| DefectAcc {
            best: merge_best(a.best, b.best),
        },
    );
    let best = acc.best.expect("n >= 1 yields at least one multiset");
    let ms = Multiset::new(fm, best.idx[0], best.idx[1], best.idx[2], best.idx[3]);
    let (_, l, m) = ms.top_and_medium();
    let scale = l.abs().max(mu * m + two_delta);
    Ok(CheckOutcome {
        holds: tol::satisfied(best.value, scale),
        worst_defect: best.value,
        worst: Quadruple::from_indices(fm, ms.quad_order(best.pairing))?,
    })
}

/// Worst p-roundness violation at exponent `p`, if any quadruple violates
/// beyond tolerance. Defects are `2·(pair-sum of p-th powers) − (total of
/// all six p-th powers)`, maximized over the three pairings.
fn worst_p_violation(fm: &FiniteMetricSpace, p: f64) -> Option<Best> {
    #[derive(Default)]
    struct ViolAcc {
        best: Option<Best>,
    }
    let acc = par_scan::<ViolAcc, _>(
        fm,
        |acc, ms| {
            let dp = [
                ms.d[0].powf(p),
                ms.d[1].powf(p),
                ms.d[2].powf(p),
                ms.d[3].powf(p),
                ms.d[4].powf(p),
                ms.d[5].powf(p),
            ];
            let total: f64 = dp.iter().sum();
            let sums = [dp[0] + dp[5], dp[1] + dp[4], dp[2] + dp[3]];
            for (t, s) in sums.iter().enumerate() {
                let defect = 2.0 * s - total;
                if !tol::satisfied(defect, total) {
                    let cand = Best {
                        value: defect,
                        idx: ms.idx,
                        pairing: t,
                    };
                    if better(&acc.best, &cand) {
                        acc.best = Some(cand);
                    }
                }
            }
        },
        |a, b| ViolAcc {
            best: merge_best(a.best, b.best),
        },
    );
    acc.best
}

/// Sign of `d/dp` of the violation defect at the violating quadruple,
/// the monotonicity precondition for bisecting on `p`.
fn violation_grows_with_p(fm: &FiniteMetricSpace, p: f64, v: &Best) -> bool {
    let ms = Multiset::new(fm, v.idx[0], v.idx[1], v.idx[2], v.idx[3]);
    let term = |d: f64| if d > 0.0 { d.powf(p) * d.ln() } else { 0.0 };
    let pair = match v.pairing {
        0 => [0usize, 5],
        1 => [1, 4],
        _ => [2, 3],
    };
    let mut deriv = 0.0;
    for (i, &d) in ms.d.iter().enumerate() {
        if pair.contains(&i) {
            deriv += term(d);
        } else {
            deriv -= term(d);
        }
    }
    let scale: f64 = ms.d.iter().map(|&d| term(d).abs()).sum();
    deriv >= -(tol::ABS + tol::REL * scale)
}

/// Supremal `p` (within `tol`) such that every quadruple is p-round, found
/// by bisection over `[1, ROUNDNESS_P_MAX]`.
///
/// The bisection assumes a quadruple violating at `p₀` violates at every
/// `p > p₀`; the assumption is verified on each violating quadruple through
/// the sign of the defect derivative in `p`, and the search falls back to a
/// grid scan when the check fails. `capped` is set when no violation exists
/// even at the cap.
pub fn roundness_finite(fm: &FiniteMetricSpace, tol_p: f64) -> Result<RoundnessResult> {
    if fm.n() < 2 {
        return Err(Error::TooFewPoints {
            got: fm.n(),
            need: 2,
        });
    }
    check_cap(fm)?;
    let tol_p = if tol_p > 0.0 { tol_p } else { 1e-9 };
    if let Some(v) = worst_p_violation(fm, 1.0) {
        return Err(Error::MetricViolation(format!(
            "quadruple {:?} violates 1-roundness (defect {:.3e}); every metric is 1-round",
            v.idx, v.value
        )));
    }
    if worst_p_violation(fm, ROUNDNESS_P_MAX).is_none() {
        return Ok(RoundnessResult {
            value: ROUNDNESS_P_MAX,
            capped: true,
            used_grid: false,
        });
    }
    let (mut lo, mut hi) = (1.0f64, ROUNDNESS_P_MAX);
    while hi - lo > tol_p {
        let mid = 0.5 * (lo + hi);
        match worst_p_violation(fm, mid) {
            None => lo = mid,
            Some(v) => {
                if violation_grows_with_p(fm, mid, &v) {
                    hi = mid;
                } else {
                    return grid_roundness(fm, tol_p);
                }
            }
        }
    }
    Ok(RoundnessResult {
        value: lo,
        capped: false,
        used_grid: false,
    })
}

/// Fallback for non-monotone violations: coarse scan from the top of the
/// range for the upper boundary of the round set, then a local bisection.
fn grid_roundness(fm: &FiniteMetricSpace, tol_p: f64) -> Result<RoundnessResult> {
    const STEPS: usize = 1024;
    let step = (ROUNDNESS_P_MAX - 1.0) / STEPS as f64;
    let mut upper_round = None;
    for k in (0..=STEPS).rev() {
        let p = 1.0 + k as f64 * step;
        if worst_p_violation(fm, p).is_none() {
            upper_round = Some(k);
            break;
        }
    }
    let k = upper_round.expect("p = 1 is always round for a metric");
    if k == STEPS {
        return Ok(RoundnessResult {
            value: ROUNDNESS_P_MAX,
            capped: true,
            used_grid: true,
        });
    }
    let (mut lo, mut hi) = (1.0 + k as f64 * step, 1.0 + (k + 1) as f64 * step);
    while hi - lo > tol_p {
        let mid = 0.5 * (lo + hi);
        if worst_p_violation(fm, mid).is_none() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RoundnessResult {
        value: lo,
        capped: false,
        used_grid: true,
    })
}
