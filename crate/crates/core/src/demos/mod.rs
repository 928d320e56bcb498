//! Executable versions of the worked constructions: shift forcing, the two
//! disjoint injection families with their operator matrices, and the
//! `1/i²` sequence.

mod forcing;
mod recip;
mod theta;

pub use forcing::{shift_forcing, ForcingConclusion, ForcingResult};
pub use recip::{reciprocal_square_example, ReciprocalSquareReport};
pub use theta::{
    h_support_index, paper_matrix, paper_matrix_spec, quadratic_family, theta_family_check,
    theta_quadratic, theta_triangular, triangular_family, PaperMatrix, ThetaCheck, ThetaKind,
};
