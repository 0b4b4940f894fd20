//! Finitely supported vectors over a group and their Orlicz-space norms.

pub mod membership;
mod norm;
mod vector;

pub use membership::{membership_diagnostic, polynomial_membership_predicted, MembershipRow, Verdict};
pub use norm::{
    abs_pairing, holder_gap, luxemburg_norm, luxemburg_of, modular, modular_scaled, norm_report,
    orlicz_norm, orlicz_norm_eval_of, orlicz_one_dimensional_of, orlicz_stationarity_of, weighted_norm,
    NormKind, NormReport, OrliczNormEval, METHOD_AGREEMENT_TOL, MODULAR_STOP,
};
pub use vector::OrliczVector;
pub(crate) use vector::check_same_group;
