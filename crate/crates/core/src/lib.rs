//! Four-point invariants of metric spaces.
//!
//! For four points `x, y, z, w` of a metric space, compare the pair-sum
//! `xy + zw` against the two cross pair-sums `xz + yw` and `xw + yz`. The
//! supremum of the ratio `Δ = (xy + zw) / max(xz + yw, xw + yz)` over all
//! quadruples is the restricted quasi-hyperbolicity constant `C₀`; allowing
//! an additive slack `2δ` before taking the best multiplier gives the
//! quasi-hyperbolicity constant `C`, a rough-isometry invariant in `[1, 2]`
//! for unbounded spaces that measures the failure of Gromov hyperbolicity.
//!
//! The crate computes these constants exactly on finite distance matrices
//! and estimates them on parametric families, along with the related
//! quadruple quantities (hyperbolicity defect, Ptolemy defect, roundness
//! defects, James-constant lower bounds) and the closed-form constants of
//! snowflaked spaces.
//!
//! - [`spaces`]: space descriptors, distance evaluation, matrix validation,
//!   sampling and finite restriction.
//! - [`invariants`]: per-quadruple quantities and their exact suprema over
//!   finite spaces.
//! - [`optimize`]: multi-start pattern search over parametric spaces, the
//!   scale-filtered profile, and root solvers for the snowflaked line.
//! - [`io`]: CSV/JSON matrix formats and the JSON space-spec format.

// Negated float comparisons are NaN-rejecting guards; indexed loops over
// symmetric matrices read better than iterator chains here.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod invariants;
pub mod io;
pub mod optimize;
pub mod spaces;
pub mod tol;

pub use error::{Error, Result};
pub use invariants::{
    c0_finite, delta_hyp_finite, embedding_bound, gromov_product, mu_delta_check,
    roundness_finite, BoundCertificate, CheckOutcome, Extremum, FourPointReport, Provenance,
    Quadruple, RoundnessResult,
};
pub use optimize::{
    estimate_c, maximize_delta, OptimizationResult, ScaleEntry, ScaleProfile,
    SnowflakeLineSolution,
};
pub use spaces::{
    random_finite_metric, validate_metric, FiniteMetricSpace, MetricViolation, Point,
    SampleBounds, SpaceSpec,
};
