//! Laurent-series side: Grassmannian basis vectors, Kac–Schwarz operators,
//! the quantum spectral curve and the simplest BGW constraint.

use serde::Serialize;

mod curve;
mod grassmann;
mod laurent;

pub use curve::{
    annihilation_check, bgw_constraint_coeffs, constraint_check_bgw, constraint_check_with, constraint_operator,
    qsc_operator, qsc_symbol, AnnihilationReport, ConstraintReport,
};
pub use grassmann::{
    canonical_commutator_defect, gamma_ratio, grassmannian_basis, ks_c, ks_invariance_check, ks_invariance_on_basis,
    ks_p, ks_q, KsReport,
};
pub use laurent::{LaurentEndo, LaurentWindow, Primitive};

/// Three-valued verdict: a tail-unknown coefficient is never reported as zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}
