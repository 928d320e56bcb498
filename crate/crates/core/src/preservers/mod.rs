//! Structured preservers of submajorization on truncated sequence spaces.
//!
//! An operator `T = Σ λ_k P_θk` built from injections with pairwise disjoint
//! images preserves `≺_s` on every `ℓᵖ`; on `ℓ¹` a rank-one term
//! `T_h f = h Σf` may be added when `h` vanishes on all images.
//!
//! Classification verdicts speak about the presented truncation only: the
//! caller must pick enough rows to contain every positive entry of each
//! column in scope. A column whose mass falls below the truncation looks
//! exactly like a genuine zero column.

mod classify;
mod harness;
mod injection;
mod intertwine;
mod operator;
mod spec;

pub use classify::{classify_preserver_l1, classify_preserver_lp, PreserverVerdict, Rejection};
pub use harness::{
    empirical_operator_check, empirical_preservation_check, Counterexample, PreservationReport,
};
pub use injection::{
    apply_injection_operator, validate_family, FamilyViolation, Injection, InjectionFamily,
};
pub use intertwine::{construct_s, intertwining_residual};
pub use operator::TruncatedOperator;
pub use spec::{apply_th, build_preserver, PreserverSpec, Space};
