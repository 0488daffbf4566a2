//! Metric space descriptors and distance evaluation.
//!
//! A space is either a finite distance matrix ([`FiniteMetricSpace`]) or a
//! parametric family ([`SpaceSpec`]): `ℓⁿ_p` with `1 ≤ p ≤ ∞`, snowflakes
//! `d^α`, the half-line with `d_α(x,y) = ((x−y)² + (x^α−y^α)²)^{1/2}`, the
//! vee graph `y = m|x|` in the Euclidean plane, the hyperbolic plane in the
//! Poincaré disk model, and the Euclidean line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

/// Hard cap for exhaustive quadruple enumeration: 60⁴ ≈ 1.3·10⁷ ordered
/// quadruples, scanned as ≈ 6·10⁵ index multisets.
pub const EXHAUSTIVE_CAP: usize = 60;

/// Points of the open Poincaré disk must keep their norm below `1 − DISK_MARGIN`.
pub const DISK_MARGIN: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

/// A point of a space: an index into a finite matrix, or a coordinate vector
/// of a parametric family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Index(usize),
    Coords(Vec<f64>),
}

impl Point {
    pub fn index(&self) -> Result<usize> {
        match self {
            Point::Index(i) => Ok(*i),
            Point::Coords(_) => Err(Error::Domain(
                "expected a matrix index, got a coordinate point".into(),
            )),
        }
    }

    pub fn coords(&self) -> Result<&[f64]> {
        match self {
            Point::Coords(c) => Ok(c),
            Point::Index(_) => Err(Error::Domain(
                "expected a coordinate point, got a matrix index".into(),
            )),
        }
    }

    fn scalar(&self) -> Result<f64> {
        let c = self.coords()?;
        if c.len() != 1 {
            return Err(Error::Domain(format!(
                "expected a one-dimensional point, got {} coordinates",
                c.len()
            )));
        }
        Ok(c[0])
    }

    fn pair(&self) -> Result<[f64; 2]> {
        let c = self.coords()?;
        if c.len() != 2 {
            return Err(Error::Domain(format!(
                "expected a two-dimensional point, got {} coordinates",
                c.len()
            )));
        }
        Ok([c[0], c[1]])
    }
}

impl From<Vec<f64>> for Point {
    fn from(coords: Vec<f64>) -> Self {
        Point::Coords(coords)
    }
}

impl From<f64> for Point {
    fn from(x: f64) -> Self {
        Point::Coords(vec![x])
    }
}

impl From<usize> for Point {
    fn from(i: usize) -> Self {
        Point::Index(i)
    }
}

// ---------------------------------------------------------------------------
// Finite metric spaces
// ---------------------------------------------------------------------------

/// A single defect of a candidate distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MetricViolation {
    NonzeroDiagonal { i: usize, value: f64 },
    Negative { i: usize, j: usize, value: f64 },
    Asymmetric { i: usize, j: usize, defect: f64 },
    /// `dist[i][j]` exceeds `dist[i][k] + dist[k][j]` by `defect`.
    Triangle { i: usize, j: usize, k: usize, defect: f64 },
}

/// Checks square-ness and the metric axioms of a raw matrix; returns every
/// violation found. The triangle inequality is judged with tolerance
/// `1e−9·(1 + dist[i][j])`.
pub fn validate_metric(dist: &[Vec<f64>]) -> Result<Vec<MetricViolation>> {
    let n = dist.len();
    for (i, row) in dist.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                bad_row: i,
                bad_len: row.len(),
            });
        }
    }
    let mut violations = Vec::new();
    for i in 0..n {
        if dist[i][i] != 0.0 {
            violations.push(MetricViolation::NonzeroDiagonal {
                i,
                value: dist[i][i],
            });
        }
        for j in (i + 1)..n {
            if dist[i][j] < 0.0 {
                violations.push(MetricViolation::Negative {
                    i,
                    j,
                    value: dist[i][j],
                });
            }
            let defect = (dist[i][j] - dist[j][i]).abs();
            if defect > tol::REL * (1.0 + dist[i][j].abs()) {
                violations.push(MetricViolation::Asymmetric { i, j, defect });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let defect = dist[i][j] - (dist[i][k] + dist[k][j]);
                if defect > tol::REL * (1.0 + dist[i][j].abs()) {
                    violations.push(MetricViolation::Triangle { i, j, k, defect });
                }
            }
        }
    }
    Ok(violations)
}

/// A finite (pseudo-)metric space given by its symmetric distance matrix.
///
/// Duplicate points (zero off-diagonal entries) are legal and flagged by
/// [`FiniteMetricSpace::is_degenerate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<Vec<f64>>,
}

impl<'de> Deserialize<'de> for FiniteMetricSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            dist: Vec<Vec<f64>>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.dist.len() != raw.n || raw.dist.iter().any(|row| row.len() != raw.n) {
            return Err(serde::de::Error::custom(format!(
                "dist must be {n}×{n} to match n = {n}",
                n = raw.n
            )));
        }
        Ok(FiniteMetricSpace {
            n: raw.n,
            dist: raw.dist,
        })
    }
}

impl FiniteMetricSpace {
    /// Validates `dist` and wraps it. Fails with the first violation when
    /// the matrix is not a metric.
    pub fn from_matrix(dist: Vec<Vec<f64>>) -> Result<Self> {
        let violations = validate_metric(&dist)?;
        if let Some(v) = violations.first() {
            return Err(Error::MetricViolation(format!(
                "{} violation(s); first: {:?}",
                violations.len(),
                v
            )));
        }
        Ok(Self { n: dist.len(), dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    /// Unchecked entry access; callers guarantee `i, j < n`.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        if i >= self.n || j >= self.n {
            return Err(Error::Domain(format!(
                "index ({i}, {j}) out of range for a {}-point space",
                self.n
            )));
        }
        Ok(self.dist[i][j])
    }

    /// True when two distinct points sit at distance zero (a pseudo-metric).
    pub fn is_degenerate(&self) -> bool {
        (0..self.n).any(|i| (i + 1..self.n).any(|j| self.dist[i][j] == 0.0))
    }

    /// Entrywise `d^alpha`. Snowflaking preserves the metric axioms for
    /// `0 < alpha ≤ 1`.
    pub fn snowflake(&self, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|&d| d.powf(alpha)).collect())
            .collect();
        Ok(Self { n: self.n, dist })
    }

    /// The subspace on `indices`, in the given order.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Result<Self> {
        let mut dist = vec![vec![0.0; indices.len()]; indices.len()];
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                dist[a][b] = self.distance(i, j)?;
            }
        }
        Ok(Self {
            n: indices.len(),
            dist,
        })
    }
}

/// Deterministic generator of valid random metrics, for experiments and
/// stress tests. Cycles through Euclidean clouds, `ℓ_p` clouds and
/// shortest-path metrics of random connected graphs.
pub fn random_finite_metric(n: usize, seed: u64) -> FiniteMetricSpace {
    assert!(n >= 1, "need at least one point");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match seed % 3 {
        0 | 1 => {
            let (dim, p) = if seed % 3 == 0 {
                (1 + (seed / 3) as usize % 4, 2.0)
            } else {
                let ps = [1.0, 1.5, 3.0, f64::INFINITY];
                (2, ps[(seed / 3) as usize % ps.len()])
            };
            let pts: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..dim).map(|_| rng.random_range(-5.0..5.0)).collect())
                .collect();
            let mut dist = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    let diff: Vec<f64> =
                        pts[i].iter().zip(&pts[j]).map(|(a, b)| a - b).collect();
                    let d = lp_norm(p, &diff);
                    dist[i][j] = d;
                    dist[j][i] = d;
                }
            }
            FiniteMetricSpace::from_matrix(dist).expect("point cloud metric is valid")
        }
        _ => {
            // Random connected graph: spanning path plus extra edges, then
            // the all-pairs shortest-path closure.
            let big = 1e9;
            let mut w = vec![vec![big; n]; n];
            for i in 0..n {
                w[i][i] = 0.0;
            }
            let edge = |a: usize, b: usize, len: f64, w: &mut Vec<Vec<f64>>| {
                if w[a][b] > len {
                    w[a][b] = len;
                    w[b][a] = len;
                }
            };
            for i in 1..n {
                let len = rng.random_range(0.5..2.0);
                edge(i - 1, i, len, &mut w);
            }
            for _ in 0..n {
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                if a != b {
                    let len = rng.random_range(0.5..4.0);
                    edge(a, b, len, &mut w);
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let via = w[i][k] + w[k][j];
                        if via < w[i][j] {
                            w[i][j] = via;
                        }
                    }
                }
            }
            FiniteMetricSpace::from_matrix(w).expect("shortest-path metric is valid")
        }
    }
}

// ---------------------------------------------------------------------------
// Parametric space descriptors
// ---------------------------------------------------------------------------

/// Descriptor of a metric space. Serializes as
/// `{"kind": "...", "params": {...}}`; `Snowflake` nests its base spec.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum SpaceSpec {
    FiniteMatrix(FiniteMetricSpace),
    LpSpace {
        n: usize,
        #[serde(with = "p_value")]
        p: f64,
    },
    Snowflake {
        base: Box<SpaceSpec>,
        alpha: f64,
    },
    HalfLineAlpha {
        alpha: f64,
    },
    GraphVm {
        m: f64,
    },
    HyperbolicPlane,
    EuclideanLine,
}

/// `p = ∞` travels as the JSON string `"inf"`; finite exponents as numbers.
mod p_value {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*p)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => Ok(p),
            Raw::Str(s) => match s.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "∞" => Ok(f64::INFINITY),
                other => other.parse::<f64>().map_err(serde::de::Error::custom),
            },
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "snowflake exponent must lie in (0, 1], got {alpha}"
        )));
    }
    Ok(())
}

impl SpaceSpec {
    pub fn lp(n: usize, p: f64) -> Self {
        SpaceSpec::LpSpace { n, p }
    }

    pub fn snowflake(base: SpaceSpec, alpha: f64) -> Self {
        SpaceSpec::Snowflake {
            base: Box::new(base),
            alpha,
        }
    }

    /// Checks the parameter ranges of this spec (recursively for snowflakes).
    pub fn validate(&self) -> Result<()> {
        match self {
            SpaceSpec::FiniteMatrix(fm) => {
                if fm.n == 0 {
                    return Err(Error::TooFewPoints { got: 0, need: 1 });
                }
                Ok(())
            }
            SpaceSpec::LpSpace { n, p } => {
                if *n == 0 {
                    return Err(Error::Domain("ℓ_p dimension must be positive".into()));
                }
                if !(*p >= 1.0) {
                    return Err(Error::Domain(format!("p must satisfy 1 ≤ p ≤ ∞, got {p}")));
                }
                Ok(())
            }
            SpaceSpec::Snowflake { base, alpha } => {
                check_alpha(*alpha)?;
                base.validate()
            }
            SpaceSpec::HalfLineAlpha { alpha } => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::Domain(format!(
                        "half-line exponent must lie in (0, 1), got {alpha}"
                    )));
                }
                Ok(())
            }
            SpaceSpec::GraphVm { m } => {
                if !(*m >= 0.0) {
                    return Err(Error::Domain(format!("slope m must be ≥ 0, got {m}")));
                }
                Ok(())
            }
            SpaceSpec::HyperbolicPlane | SpaceSpec::EuclideanLine => Ok(()),
        }
    }

    /// Number of coordinates of a point, or `None` for matrix-backed spaces.
    pub fn point_dim(&self) -> Option<usize> {
        match self {
            SpaceSpec::FiniteMatrix(_) => None,
            SpaceSpec::LpSpace { n, .. } => Some(*n),
            SpaceSpec::Snowflake { base, .. } => base.point_dim(),
            SpaceSpec::HalfLineAlpha { .. }
            | SpaceSpec::GraphVm { .. }
            | SpaceSpec::EuclideanLine => Some(1),
            SpaceSpec::HyperbolicPlane => Some(2),
        }
    }

    pub fn is_parametric(&self) -> bool {
        !matches!(self, SpaceSpec::FiniteMatrix(_))
    }

    /// Product of the snowflake exponents applied on top of the innermost
    /// base space (1 when there is no snowflake).
    pub fn snowflake_exponent(&self) -> f64 {
        match self {
            SpaceSpec::Snowflake { base, alpha } => alpha * base.snowflake_exponent(),
            _ => 1.0,
        }
    }

    /// Distance between two points of the space.
    pub fn distance(&self, a: &Point, b: &Point) -> Result<f64> {
        match self {
            SpaceSpec::FiniteMatrix(fm) => fm.distance(a.index()?, b.index()?),
            SpaceSpec::LpSpace { n, p } => {
                let (ca, cb) = (a.coords()?, b.coords()?);
                if ca.len() != *n || cb.len() != *n {
                    return Err(Error::Domain(format!(
                        "ℓ_p point dimension mismatch: expected {n}, got {} and {}",
                        ca.len(),
                        cb.len()
                    )));
                }
                let diff: Vec<f64> = ca.iter().zip(cb).map(|(x, y)| x - y).collect();
                Ok(lp_norm(*p, &diff))
            }
            SpaceSpec::Snowflake { base, alpha } => Ok(base.distance(a, b)?.powf(*alpha)),
            SpaceSpec::HalfLineAlpha { alpha } => {
                let (x, y) = (a.scalar()?, b.scalar()?);
                if x < 0.0 || y < 0.0 {
                    return Err(Error::Domain(format!(
                        "half-line coordinates must be ≥ 0, got {x} and {y}"
                    )));
                }
                Ok(half_line_distance(*alpha, x, y))
            }
            SpaceSpec::GraphVm { m } => Ok(vee_distance(*m, a.scalar()?, b.scalar()?)),
            SpaceSpec::HyperbolicPlane => poincare_distance(&a.pair()?, &b.pair()?),
            SpaceSpec::EuclideanLine => Ok((a.scalar()? - b.scalar()?).abs()),
        }
    }

    /// Builds the finite subspace matrix on `points`. The output passes
    /// [`validate_metric`]; duplicate points make it a flagged pseudo-metric.
    pub fn restrict(&self, points: &[Point]) -> Result<FiniteMetricSpace> {
        if points.len() < 2 {
            return Err(Error::TooFewPoints {
                got: points.len(),
                need: 2,
            });
        }
        let n = points.len();
        let mut dist = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.distance(&points[i], &points[j])?;
                dist[i][j] = d;
                dist[j][i] = d;
            }
        }
        Ok(FiniteMetricSpace { n, dist })
    }

    /// Draws `count` points uniformly over the bounded region. Deterministic
    /// for a fixed seed.
    pub fn sample(&self, count: usize, bounds: &SampleBounds, seed: u64) -> Result<Vec<Point>> {
        if count == 0 {
            return Err(Error::Domain("sample count must be ≥ 1".into()));
        }
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match self {
            SpaceSpec::FiniteMatrix(fm) => {
                if count > fm.n {
                    return Err(Error::Domain(format!(
                        "cannot draw {count} distinct indices from a {}-point space",
                        fm.n
                    )));
                }
                let mut idx: Vec<usize> = (0..fm.n).collect();
                // Fisher-Yates prefix shuffle.
                for i in 0..count {
                    let j = rng.random_range(i..fm.n);
                    idx.swap(i, j);
                }
                idx.truncate(count);
                Ok(idx.into_iter().map(Point::Index).collect())
            }
            SpaceSpec::HyperbolicPlane => {
                let r = match bounds {
                    SampleBounds::Radius(r) => *r,
                    _ => {
                        return Err(Error::Domain(
                            "hyperbolic plane sampling needs a radius bound".into(),
                        ))
                    }
                };
                if !(r > 0.0 && r < 1.0) {
                    return Err(Error::Domain(format!(
                        "disk radius must lie in (0, 1), got {r}"
                    )));
                }
                Ok((0..count)
                    .map(|_| {
                        // Uniform w.r.t. area of the ambient disk model.
                        let rad = r * rng.random_range(0.0..1.0f64).sqrt();
                        let theta = rng.random_range(0.0..std::f64::consts::TAU);
                        Point::Coords(vec![rad * theta.cos(), rad * theta.sin()])
                    })
                    .collect())
            }
            SpaceSpec::Snowflake { base, .. } => base.sample(count, bounds, seed),
            _ => {
                let dim = self.point_dim().expect("parametric space has a dimension");
                let boxes = bounds.as_box(dim)?;
                if matches!(self, SpaceSpec::HalfLineAlpha { .. }) && boxes[0][0] < 0.0 {
                    return Err(Error::Domain(
                        "half-line sampling bounds must be ≥ 0".into(),
                    ));
                }
                Ok((0..count)
                    .map(|_| {
                        Point::Coords(
                            boxes
                                .iter()
                                .map(|&[lo, hi]| rng.random_range(lo..hi))
                                .collect(),
                        )
                    })
                    .collect())
            }
        }
    }
}

/// Bounded sampling region: a per-coordinate box, one interval applied to
/// every coordinate, or a disk radius.
#[derive(Debug, Clone, PartialEq)]
pub enum SampleBounds {
    Interval { lo: f64, hi: f64 },
    Box(Vec<[f64; 2]>),
    Radius(f64),
}

impl SampleBounds {
    fn as_box(&self, dim: usize) -> Result<Vec<[f64; 2]>> {
        let boxes = match self {
            SampleBounds::Interval { lo, hi } => vec![[*lo, *hi]; dim],
            SampleBounds::Box(b) => {
                if b.len() != dim {
                    return Err(Error::Domain(format!(
                        "bounds have {} axes, space has {dim}",
                        b.len()
                    )));
                }
                b.clone()
            }
            SampleBounds::Radius(_) => {
                return Err(Error::Domain(
                    "radius bounds only apply to the hyperbolic plane".into(),
                ))
            }
        };
        for &[lo, hi] in &boxes {
            if !(lo < hi) {
                return Err(Error::Domain(format!(
                    "degenerate bounds [{lo}, {hi}]"
                )));
            }
        }
        Ok(boxes)
    }
}

// ---------------------------------------------------------------------------
// Distance formulas
// ---------------------------------------------------------------------------

/// `‖v‖_p`, with the max norm at `p = ∞`. Assumes `p ≥ 1`.
pub fn lp_norm(p: f64, v: &[f64]) -> f64 {
    if p.is_infinite() {
        return v.iter().fold(0.0, |acc, x| acc.max(x.abs()));
    }
    if p == 1.0 {
        return v.iter().map(|x| x.abs()).sum();
    }
    if p == 2.0 {
        return v.iter().map(|x| x * x).sum::<f64>().sqrt();
    }
    v.iter()
        .map(|x| x.abs().powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

/// The graph of `y = x^alpha` carries the metric
/// `d_α(x,y) = ((x−y)² + (x^α−y^α)²)^{1/2}` on the half-line.
pub fn half_line_distance(alpha: f64, x: f64, y: f64) -> f64 {
    let a = x - y;
    let b = x.powf(alpha) - y.powf(alpha);
    (a * a + b * b).sqrt()
}

/// Euclidean distance between `(u, m|u|)` and `(v, m|v|)` on the vee graph.
pub fn vee_distance(m: f64, u: f64, v: f64) -> f64 {
    let a = u - v;
    let b = m * (u.abs() - v.abs());
    (a * a + b * b).sqrt()
}

/// Poincaré disk distance `arcosh(1 + 2‖a−b‖² / ((1−‖a‖²)(1−‖b‖²)))`.
pub fn poincare_distance(a: &[f64; 2], b: &[f64; 2]) -> Result<f64> {
    let na = a[0] * a[0] + a[1] * a[1];
    let nb = b[0] * b[0] + b[1] * b[1];
    let lim = (1.0 - DISK_MARGIN) * (1.0 - DISK_MARGIN);
    if na >= lim || nb >= lim {
        return Err(Error::Domain(format!(
            "point outside the open unit disk (norms {:.17}, {:.17})",
            na.sqrt(),
            nb.sqrt()
        )));
    }
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    let d2 = dx * dx + dy * dy;
    Ok((1.0 + 2.0 * d2 / ((1.0 - na) * (1.0 - nb))).acosh())
}
