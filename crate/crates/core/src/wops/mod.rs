//! The `W^B_{1+inf}` operator algebra acting on series in the odd times.

mod doperator;
mod generators;
mod suite;
mod symbol;

pub use doperator::DOperator;
pub use generators::{faa_di_bruno_w, j_op, l_op, m_op, w_km_closed};
pub use suite::{
    central_term_checks, closed_form_checks, Central, commutator_table, eigenvalue_checks, walg_suite, NamedCheck,
};
pub use symbol::{central_mu, diagonal_action, w_of_symbol, DPoly, ZDSymbol};
