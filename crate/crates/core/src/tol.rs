//! Floating-point comparison policy.
//!
//! All computations use 64-bit IEEE doubles. Inequality defects are judged
//! with an absolute floor of [`ABS`] plus a relative allowance of [`REL`]
//! times the magnitude of the quantities being compared; a defect inside
//! that band counts as satisfied.

/// Absolute tolerance on inequality defects.
pub const ABS: f64 = 1e-12;

/// Relative tolerance on inequality defects and general comparisons.
pub const REL: f64 = 1e-9;

/// True when `defect` is small enough, at magnitude `scale`, to count as
/// a satisfied inequality.
pub fn satisfied(defect: f64, scale: f64) -> bool {
    defect <= ABS + REL * scale.abs()
}

/// True when `a` and `b` agree within the default relative tolerance.
pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= ABS + REL * a.abs().max(b.abs())
}
