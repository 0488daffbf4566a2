//! Per-quadruple four-point quantities.
//!
//! For a quadruple `x, y, z, w` with the six pairwise distances, the three
//! pair-sums are `S₁ = xy + zw`, `S₂ = xz + yw`, `S₃ = xw + yz`. The ratio
//! `Δ = S₁ / max(S₂, S₃)` (over quadruples not all identical) is what the
//! restricted constant `C₀` takes a supremum of.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spaces::{half_line_distance, Point, SpaceSpec};

/// Four labelled points and their six pairwise distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quadruple {
    pub x: Point,
    pub y: Point,
    pub z: Point,
    pub w: Point,
    pub d_xy: f64,
    pub d_zw: f64,
    pub d_xz: f64,
    pub d_yw: f64,
    pub d_xw: f64,
    pub d_yz: f64,
}

impl Quadruple {
    pub fn from_points(space: &SpaceSpec, pts: [&Point; 4]) -> Result<Self> {
        let [x, y, z, w] = pts;
        Ok(Self {
            d_xy: space.distance(x, y)?,
            d_zw: space.distance(z, w)?,
            d_xz: space.distance(x, z)?,
            d_yw: space.distance(y, w)?,
            d_xw: space.distance(x, w)?,
            d_yz: space.distance(y, z)?,
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
            w: w.clone(),
        })
    }

    pub fn from_indices(
        space: &crate::spaces::FiniteMetricSpace,
        idx: [usize; 4],
    ) -> Result<Self> {
        let [i, j, k, l] = idx;
        Ok(Self {
            d_xy: space.distance(i, j)?,
            d_zw: space.distance(k, l)?,
            d_xz: space.distance(i, k)?,
            d_yw: space.distance(j, l)?,
            d_xw: space.distance(i, l)?,
            d_yz: space.distance(j, k)?,
            x: Point::Index(i),
            y: Point::Index(j),
            z: Point::Index(k),
            w: Point::Index(l),
        })
    }

    pub fn distances(&self) -> [f64; 6] {
        [
            self.d_xy, self.d_zw, self.d_xz, self.d_yw, self.d_xw, self.d_yz,
        ]
    }

    /// `[S₁, S₂, S₃]`.
    pub fn pair_sums(&self) -> [f64; 3] {
        [
            self.d_xy + self.d_zw,
            self.d_xz + self.d_yw,
            self.d_xw + self.d_yz,
        ]
    }

    /// All six distances vanish (the quadruple is metrically a single point).
    pub fn is_degenerate(&self) -> bool {
        self.distances().iter().all(|&d| d == 0.0)
    }

    pub fn diameter(&self) -> f64 {
        self.distances().iter().fold(0.0, |a, &d| a.max(d))
    }

    /// `Δ = S₁ / max(S₂, S₃)`.
    ///
    /// Errors on the all-identical quadruple, and reports a metric violation
    /// when the denominator vanishes while `S₁ > 0` (impossible for a true
    /// metric by the triangle inequality).
    pub fn delta_ratio(&self) -> Result<f64> {
        if self.is_degenerate() {
            return Err(Error::UndefinedRatio);
        }
        let [s1, s2, s3] = self.pair_sums();
        let denom = s2.max(s3);
        if denom <= 0.0 {
            return Err(Error::MetricViolation(format!(
                "max(S2, S3) = {denom} with S1 = {s1} > 0"
            )));
        }
        Ok(s1 / denom)
    }

    /// Four-point defect `S₁ − max(S₂, S₃)`; the space is δ-hyperbolic iff
    /// this never exceeds `2δ`.
    pub fn hyp_defect(&self) -> f64 {
        let [s1, s2, s3] = self.pair_sums();
        s1 - s2.max(s3)
    }

    /// `(xy)(zw) − ((xz)(yw) + (xw)(yz))`; ≤ 0 on Ptolemaic quadruples.
    pub fn ptolemy_defect(&self) -> f64 {
        self.d_xy * self.d_zw - (self.d_xz * self.d_yw + self.d_xw * self.d_yz)
    }

    /// `(xy)^p + (zw)^p − ((xz)^p + (yw)^p + (xw)^p + (yz)^p)`; ≤ 0 means the
    /// quadruple is p-round. Requires `p ≥ 1`.
    pub fn p_round_defect(&self, p: f64) -> Result<f64> {
        if !(p >= 1.0) || p.is_infinite() {
            return Err(Error::Domain(format!(
                "roundness exponent must be a finite p ≥ 1, got {p}"
            )));
        }
        Ok(self.d_xy.powf(p) + self.d_zw.powf(p)
            - (self.d_xz.powf(p) + self.d_yw.powf(p) + self.d_xw.powf(p) + self.d_yz.powf(p)))
    }

    pub fn report(&self, p: f64) -> Result<FourPointReport> {
        Ok(FourPointReport {
            delta_ratio: self.delta_ratio()?,
            hyp_defect: self.hyp_defect(),
            ptolemy_defect: self.ptolemy_defect(),
            p,
            p_round_defect: self.p_round_defect(p)?,
        })
    }
}

/// All per-quadruple quantities at a fixed roundness exponent `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourPointReport {
    pub delta_ratio: f64,
    pub hyp_defect: f64,
    pub ptolemy_defect: f64,
    pub p: f64,
    pub p_round_defect: f64,
}

/// Gromov product `(x|y)_w = ½(xw + yw − xy)`; non-negative on metric spaces.
pub fn gromov_product(space: &SpaceSpec, x: &Point, y: &Point, w: &Point) -> Result<f64> {
    let xw = space.distance(x, w)?;
    let yw = space.distance(y, w)?;
    let xy = space.distance(x, y)?;
    Ok(0.5 * (xw + yw - xy))
}

/// Four-point defect of the quadruple `(x, y, z, w)` on the half-line with
/// the metric `d_α`. Unbounded in the quadruple for `α > 1/2`, bounded for
/// `α ≤ 1/2`.
pub fn half_line_defect(alpha: f64, pts: [f64; 4]) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "half-line exponent must lie in (0, 1), got {alpha}"
        )));
    }
    if pts.iter().any(|&v| v < 0.0) {
        return Err(Error::Domain(
            "half-line coordinates must be ≥ 0".into(),
        ));
    }
    let [x, y, z, w] = pts;
    let d = |a: f64, b: f64| half_line_distance(alpha, a, b);
    Ok(d(x, y) + d(z, w) - (d(x, z) + d(y, w)).max(d(x, w) + d(y, z)))
}

/// Leading coefficient of the half-line defect growth: the defect of
/// `(t, 4t, 0, 2t)` divided by `t^{2α−1}` tends to this value as `t → ∞`.
/// Evaluated through the factored quartic `(x−2)²(x²+4x−2)/24` at `x = 2^α`;
/// positive on `(0, 1)` and zero at `α = 1`.
pub fn half_line_growth_coefficient(alpha: f64) -> f64 {
    let x = 2f64.powf(alpha);
    (x - 2.0) * (x - 2.0) * (x * x + 4.0 * x - 2.0) / 24.0
}
