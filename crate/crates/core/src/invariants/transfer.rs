//! Four-point bound certificates and their transfer along quasi-isometric
//! embeddings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a `(μ, δ)` bound was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    /// Exhaustively computed on a finite space.
    ComputedExact,
    /// Pulled back through an embedding via [`embedding_bound`].
    Transferred,
    /// Quoted from a published source.
    PaperCited,
}

/// Assertion that a space satisfies the `(μ, δ)`-four-point inequality:
/// `S₁ ≤ μ·max(S₂, S₃) + 2δ` for every quadruple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub mu: f64,
    pub delta: f64,
    pub provenance: Provenance,
}

impl BoundCertificate {
    pub fn new(mu: f64, delta: f64, provenance: Provenance) -> Result<Self> {
        if !(mu >= 0.0) || !(delta >= 0.0) {
            return Err(Error::Domain(format!(
                "certificate parameters must be ≥ 0, got μ = {mu}, δ = {delta}"
            )));
        }
        Ok(Self {
            mu,
            delta,
            provenance,
        })
    }
}

/// Pulls a `(μ, δ)` bound on the target space back through a
/// `((C₁, L₁), (C₂, L₂))`-quasi-isometric embedding: the source satisfies
/// the `((C₂/C₁)·μ, (μ·L₂ + L₁ + δ)/C₁)`-four-point inequality.
pub fn embedding_bound(
    cert: &BoundCertificate,
    c1: f64,
    l1: f64,
    c2: f64,
    l2: f64,
) -> Result<BoundCertificate> {
    if !(c1 > 0.0) || !(c2 > 0.0) {
        return Err(Error::Domain(format!(
            "multiplicative constants must be positive, got C1 = {c1}, C2 = {c2}"
        )));
    }
    if !(l1 >= 0.0) || !(l2 >= 0.0) {
        return Err(Error::Domain(format!(
            "additive constants must be ≥ 0, got L1 = {l1}, L2 = {l2}"
        )));
    }
    Ok(BoundCertificate {
        mu: c2 / c1 * cert.mu,
        delta: (cert.mu * l2 + l1 + cert.delta) / c1,
        provenance: Provenance::Transferred,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn exact(mu: f64, delta: f64) -> BoundCertificate {
        BoundCertificate::new(mu, delta, Provenance::ComputedExact).unwrap()
    }

    #[test]
    fn identity_embedding_is_inert() {
        let out = embedding_bound(&exact(1.0, 0.0), 1.0, 0.0, 1.0, 0.0).unwrap();
        assert_eq!((out.mu, out.delta), (1.0, 0.0));
        assert_eq!(out.provenance, Provenance::Transferred);
    }

    #[test]
    fn bilipschitz_scales_mu() {
        let out = embedding_bound(&exact(SQRT_2, 0.0), 1.0, 0.0, 2.0, 0.0).unwrap();
        assert_eq!(out.mu, 2.0 * SQRT_2);
        assert_eq!(out.delta, 0.0);
    }

    #[test]
    fn rough_embedding_adds_delta() {
        let out = embedding_bound(&exact(1.0, 0.0), 1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!((out.mu, out.delta), (1.0, 2.0));
    }

    #[test]
    fn transfer_formula_is_exact_on_random_tuples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..1000 {
            let mu = rng.random_range(0.0..2.0);
            let delta = rng.random_range(0.0..5.0);
            let c1 = rng.random_range(0.1..4.0);
            let c2 = rng.random_range(0.1..4.0);
            let l1 = rng.random_range(0.0..3.0);
            let l2 = rng.random_range(0.0..3.0);
            let out = embedding_bound(&exact(mu, delta), c1, l1, c2, l2).unwrap();
            assert_eq!(out.mu, c2 / c1 * mu);
            assert_eq!(out.delta, (mu * l2 + l1 + delta) / c1);
        }
    }

    #[test]
    fn rejects_bad_constants() {
        assert!(embedding_bound(&exact(1.0, 0.0), 0.0, 0.0, 1.0, 0.0).is_err());
        assert!(embedding_bound(&exact(1.0, 0.0), 1.0, -0.1, 1.0, 0.0).is_err());
        assert!(BoundCertificate::new(-1.0, 0.0, Provenance::ComputedExact).is_err());
    }

    #[test]
    fn certificate_json_field_names() {
        let j = serde_json::to_value(exact(1.5, 0.25)).unwrap();
        assert_eq!(j["mu"], 1.5);
        assert_eq!(j["delta"], 0.25);
        assert_eq!(j["provenance"], "ComputedExact");
    }
}
