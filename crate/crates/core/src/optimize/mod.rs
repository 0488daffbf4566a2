//! Derivative-free maximization of the four-point ratio over parametric
//! spaces, and the scale-filtered profile that estimates the
//! quasi-hyperbolicity constant.

pub mod nelder_mead;
pub mod roots;
pub mod snowflake_line;

pub use roots::{bisect, BisectResult};
pub use snowflake_line::SnowflakeLineSolution;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::Quadruple;
use crate::spaces::{Point, SpaceSpec};

use nelder_mead::maximize_simplex;

/// Smallest accepted evaluation budget.
pub const MIN_BUDGET: u64 = 100;

/// Simplex diameter below which a restart counts as converged.
const DIAM_TOL: f64 = 1e-10;

/// Outcome of a maximization run. `best_value` is a certified lower bound
/// for the supremum it chases; the witness re-evaluates to it exactly.
#[derive(Debug, Clone, Serialize)]
pub struct OptimizationResult {
    pub best_value: f64,
    pub witness: Quadruple,
    pub evaluations: u64,
    pub restarts: u32,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale_profile: Option<Vec<ScaleEntry>>,
}

/// One row of a scale profile: the supremum of Δ over quadruples with
/// `max(S₂, S₃) ≥ r`, or `None` when no such quadruple was found.
#[derive(Debug, Clone, Serialize)]
pub struct ScaleEntry {
    pub r: f64,
    pub sup_delta: Option<f64>,
    pub evaluations: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScaleProfile {
    pub entries: Vec<ScaleEntry>,
}

impl ScaleProfile {
    pub fn is_non_increasing(&self) -> bool {
        self.entries
            .windows(2)
            .all(|w| match (w[0].sup_delta, w[1].sup_delta) {
                (Some(a), Some(b)) => a >= b,
                (None, Some(_)) => false,
                _ => true,
            })
    }

    /// The entry at the largest scale floor.
    pub fn final_estimate(&self) -> Option<f64> {
        self.entries.last().and_then(|e| e.sup_delta)
    }

    /// CSV rows `R,sup_delta,evaluations` (empty value when infeasible).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("R,sup_delta,evaluations\n");
        for e in &self.entries {
            let v = e.sup_delta.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{},{}\n", e.r, v, e.evaluations));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Coordinate mapping
// ---------------------------------------------------------------------------

/// Maps one point's unconstrained search coordinates into the space's
/// domain: half-line coordinates by reflection, disk coordinates by a tanh
/// squash (under which large search radii still grow the hyperbolic
/// distance linearly). Other spaces are unconstrained.
fn map_point(space: &SpaceSpec, raw: &[f64]) -> Point {
    match space {
        SpaceSpec::HalfLineAlpha { .. } => Point::Coords(vec![raw[0].abs()]),
        SpaceSpec::HyperbolicPlane => {
            let r = (raw[0] * raw[0] + raw[1] * raw[1]).sqrt();
            let cap = 1.0 - 1e-9;
            let scale = if r > 0.0 { cap * r.tanh() / r } else { 0.0 };
            Point::Coords(vec![raw[0] * scale, raw[1] * scale])
        }
        SpaceSpec::Snowflake { base, .. } => map_point(base, raw),
        _ => Point::Coords(raw.to_vec()),
    }
}

/// Half-width cap keeping distances far away from overflow.
const BOX_CAP: f64 = 1e120;

/// Per-coordinate search box wide enough that quadruples can clear the
/// scale floor with room to spare.
fn search_box(space: &SpaceSpec, floor: Option<f64>) -> Vec<[f64; 2]> {
    let r = floor.unwrap_or(0.0).max(0.0);
    match space {
        SpaceSpec::HalfLineAlpha { .. } => vec![[0.0, (4.0 * r + 100.0).min(BOX_CAP)]],
        SpaceSpec::HyperbolicPlane => {
            // tanh-squashed: hyperbolic distance grows linearly in the raw norm.
            let w = 3.0f64.max(2.0 * r).min(BOX_CAP);
            vec![[-w, w]; 2]
        }
        SpaceSpec::Snowflake { base, alpha } => {
            let inner = if r > 0.0 { (2.0 * r).powf(1.0 / alpha) } else { 0.0 };
            search_box(base, Some(inner.min(BOX_CAP) / 2.0))
        }
        _ => {
            let dim = space.point_dim().unwrap_or(1);
            let w = 10.0f64.max(2.0 * r).min(BOX_CAP);
            vec![[-w, w]; dim]
        }
    }
}

/// Objective at stacked coordinates: the four-point ratio Δ of the mapped
/// quadruple, or (below the scale floor) an infeasibility ramp in [−1, 0)
/// that slopes toward the feasible region.
fn objective(space: &SpaceSpec, pdim: usize, floor: Option<f64>, u: &[f64]) -> f64 {
    let pts: Vec<Point> = (0..4)
        .map(|i| map_point(space, &u[i * pdim..(i + 1) * pdim]))
        .collect();
    let d = |a: usize, b: usize| space.distance(&pts[a], &pts[b]);
    let (d_xy, d_zw, d_xz, d_yw, d_xw, d_yz) = match (d(0, 1), d(2, 3), d(0, 2), d(1, 3), d(0, 3), d(1, 2)) {
        (Ok(a), Ok(b), Ok(c), Ok(e), Ok(f), Ok(g)) => (a, b, c, e, f, g),
        _ => return -2.0,
    };
    let s1 = d_xy + d_zw;
    let m = (d_xz + d_yw).max(d_xw + d_yz);
    if let Some(r) = floor {
        if m < r {
            return -1.0 + m / r;
        }
    }
    if m <= 0.0 {
        return 0.0;
    }
    s1 / m
}

struct CoreRun {
    value: f64,
    u: Vec<f64>,
    evaluations: u64,
    converged: bool,
}

/// Multi-start simplex search with a final polish pass from the incumbent.
/// Restarts run independently (and may run concurrently); the reduction
/// takes the max with ties broken by restart index, so the outcome is
/// deterministic for a fixed seed.
fn maximize_core(
    space: &SpaceSpec,
    budget: u64,
    restarts: u32,
    seed: u64,
    floor: Option<f64>,
    extra_starts: &[Vec<f64>],
) -> Result<CoreRun> {
    space.validate()?;
    let pdim = space.point_dim().ok_or(Error::NotParametric {
        op: "maximize_delta",
    })?;
    if budget < MIN_BUDGET {
        return Err(Error::BudgetTooSmall {
            got: budget,
            min: MIN_BUDGET,
        });
    }
    let restarts = restarts.max(1);
    let dim = 4 * pdim;
    let boxes = search_box(space, floor);
    debug_assert_eq!(boxes.len(), pdim);
    let edges: Vec<f64> = (0..dim)
        .map(|i| 0.1 * (boxes[i % pdim][1] - boxes[i % pdim][0]))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts: Vec<Vec<f64>> = (0..restarts)
        .map(|_| {
            (0..dim)
                .map(|i| {
                    let [lo, hi] = boxes[i % pdim];
                    rng.random_range(lo..hi)
                })
                .collect()
        })
        .collect();
    starts.extend(extra_starts.iter().cloned());

    let per_budget = (budget / (starts.len() as u64 + 1)).max(2 * (dim as u64 + 1));
    let runs: Vec<_> = starts
        .par_iter()
        .map(|x0| {
            let mut f = |u: &[f64]| objective(space, pdim, floor, u);
            maximize_simplex(&mut f, x0, &edges, per_budget, DIAM_TOL)
        })
        .collect();

    let mut evaluations: u64 = runs.iter().map(|r| r.evaluations).sum();
    let mut best = runs
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one restart");

    // Polish: narrow simplex around the incumbent.
    let spread = best.x.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    let polish_edges = vec![(1e-3 * spread).max(1e-6); dim];
    let mut f = |u: &[f64]| objective(space, pdim, floor, u);
    let polished = maximize_simplex(&mut f, &best.x.clone(), &polish_edges, per_budget, DIAM_TOL);
    evaluations += polished.evaluations;
    if polished.value > best.value {
        best = polished;
    }

    if best.value < 0.0 {
        return Err(Error::InfeasibleScale {
            floor: floor.unwrap_or(f64::NAN),
        });
    }
    Ok(CoreRun {
        value: best.value,
        u: best.x,
        evaluations,
        converged: best.converged,
    })
}

fn witness_from(space: &SpaceSpec, pdim: usize, u: &[f64]) -> Result<Quadruple> {
    let pts: Vec<Point> = (0..4)
        .map(|i| map_point(space, &u[i * pdim..(i + 1) * pdim]))
        .collect();
    Quadruple::from_points(space, [&pts[0], &pts[1], &pts[2], &pts[3]])
}

/// Multi-start pattern search for `sup Δ` over a parametric space; with a
/// `scale_floor` the supremum ranges only over quadruples whose largest
/// cross pair-sum is at least the floor. Returns a certified lower bound
/// (never exceeding 2) and the witness quadruple attaining it.
pub fn maximize_delta(
    space: &SpaceSpec,
    budget: u64,
    restarts: u32,
    seed: u64,
    scale_floor: Option<f64>,
) -> Result<OptimizationResult> {
    let run = maximize_core(space, budget, restarts, seed, scale_floor, &[])?;
    let pdim = space.point_dim().expect("checked parametric");
    Ok(OptimizationResult {
        best_value: run.value,
        witness: witness_from(space, pdim, &run.u)?,
        evaluations: run.evaluations,
        restarts: restarts.max(1),
        converged: run.converged,
        scale_profile: None,
    })
}

/// Scale-filtered estimate of the quasi-hyperbolicity constant: one
/// maximization per floor in `r_list` (each with the full `budget`),
/// reported as a non-increasing profile whose tail estimates the constant.
///
/// Why the profile converges to the constant: write
/// `Φ(R) = sup {Δ(q) : max(S₂,S₃) ≥ R}`. If the space satisfies a
/// `(μ, δ)`-four-point inequality, every quadruple at scale ≥ R has
/// `Δ ≤ μ + 2δ/R`, so `lim_R Φ(R) ≤ μ`, and taking the infimum over
/// admissible `μ` gives `lim Φ ≤ C`. Conversely, quadruples below scale R
/// satisfy `S₁ ≤ 2·max(S₂,S₃) < 2R`, so the pair `(Φ(R), δ = R)` is itself
/// admissible and `C ≤ Φ(R)` for every `R`. Hence `Φ` is non-increasing
/// with limit exactly `C`.
///
/// Runs descend from the largest floor, seeding each smaller-floor search
/// with the best witness found so far (feasible sets grow as the floor
/// shrinks), which keeps the reported profile monotone.
pub fn estimate_c(
    space: &SpaceSpec,
    r_list: &[f64],
    budget: u64,
    seed: u64,
) -> Result<ScaleProfile> {
    if r_list.is_empty() {
        return Err(Error::Domain("scale floor list is empty".into()));
    }
    if r_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(
            "scale floors must be strictly ascending".into(),
        ));
    }
    if r_list.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::Domain("scale floors must be positive".into()));
    }

    let mut entries: Vec<ScaleEntry> = Vec::with_capacity(r_list.len());
    let mut carry: Vec<Vec<f64>> = Vec::new();
    for (i, &r) in r_list.iter().enumerate().rev() {
        let child_seed = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i as u64));
        match maximize_core(space, budget, 20, child_seed, Some(r), &carry) {
            Ok(run) => {
                carry = vec![run.u.clone()];
                entries.push(ScaleEntry {
                    r,
                    sup_delta: Some(run.value),
                    evaluations: run.evaluations,
                });
            }
            Err(Error::InfeasibleScale { .. }) => entries.push(ScaleEntry {
                r,
                sup_delta: None,
                evaluations: budget,
            }),
            Err(e) => return Err(e),
        }
    }
    entries.reverse();
    // Running max from the right: a lower bound at a larger floor is also a
    // lower bound at every smaller floor.
    for i in (0..entries.len().saturating_sub(1)).rev() {
        if let Some(next) = entries[i + 1].sup_delta {
            let cur = entries[i].sup_delta.unwrap_or(f64::NEG_INFINITY);
            if next > cur {
                entries[i].sup_delta = Some(next);
            }
        }
    }
    Ok(ScaleProfile { entries })
}
