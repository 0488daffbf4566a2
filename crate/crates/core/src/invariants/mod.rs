//! Per-quadruple four-point quantities and their exact suprema over finite
//! metric spaces.

pub mod banach;
pub mod finite;
pub mod quadruple;
pub mod transfer;
pub mod ultra;

pub use banach::{half_sum_lower_bound, james_lower_bound, lp_roundness, norm_round_check};
pub use finite::{
    c0_finite, delta_hyp_finite, mu_delta_check, multiset_count, roundness_finite, CheckOutcome,
    Extremum, RoundnessResult, ROUNDNESS_P_MAX,
};
pub use quadruple::{
    gromov_product, half_line_defect, half_line_growth_coefficient, FourPointReport, Quadruple,
};
pub use transfer::{embedding_bound, BoundCertificate, Provenance};
pub use ultra::{ultra_check, UltraCheck};
