use alloc::vec::Vec;

use crate::matrix::{shift_matrix, ShiftDirection};
use crate::relations::{check_weak_majorize, permutation_between, Matching, PermutationMode, RelationVerdict};
use crate::seq::NonNegVector;
use crate::{Error, Result, CLASS_TOL};

/// The `f(i) = 1/i²`, `g = Rf` example at a finite truncation.
///
/// Two truncations are reported. At dimension `n` the shift pushes
/// `f(n)` out of `g`, so only `g ≺_w f` survives. At dimension `n + 1`
/// (`f` padded with a zero, `g` keeping `f(n)`) both directions hold with
/// the shifts as witnesses: `g = Rf` and `f = Lg` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalSquareReport {
    pub f: NonNegVector,
    pub g: NonNegVector,
    /// `g ≺_w f` at dimension `n`.
    pub g_weak_f: RelationVerdict,
    /// `f ≺_w g` at dimension `n`.
    pub f_weak_g: RelationVerdict,
    /// `Rf == g` exactly at dimension `n`.
    pub right_shift_witness_exact: bool,
    pub tail_f: NonNegVector,
    pub tail_g: NonNegVector,
    /// Both directed weak checks hold at dimension `n + 1`.
    pub tail_mutual_weak: bool,
    /// `R tail_f == tail_g` and `L tail_g == tail_f` exactly.
    pub tail_shift_witnesses_exact: bool,
    /// Support bijection between `f` restricted to the indices whose shift
    /// stays inside the truncation and `g`.
    pub partial_permutation: Option<Matching>,
    /// Full permutation at dimension `n + 1`; it exists because both
    /// truncations contain a zero.
    pub tail_strict_permutation: Option<Matching>,
    /// Annotation: in the untruncated sequence `g(1) = 0` is not a value of
    /// `f`, so no permutation carries `f` to `g`. Not computed.
    pub infinite_range_excludes_zero: bool,
}

pub fn reciprocal_square_example(n: usize) -> Result<ReciprocalSquareReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("truncation must be at least 1"));
    }
    let values: Vec<f64> = (1..=n).map(|i| 1.0 / (i * i) as f64).collect();
    let f = NonNegVector::new(values.clone())?;
    let r = shift_matrix(n, ShiftDirection::Right);
    let g = r.apply(&f)?;
    let right_shift_witness_exact = g.values()[1..] == values[..n - 1] && g[0] == 0.0;

    let tail_f = f.padded(n + 1);
    let tail_g = shift_matrix(n + 1, ShiftDirection::Right).apply(&tail_f)?;
    let back = shift_matrix(n + 1, ShiftDirection::Left).apply(&tail_g)?;
    let tail_shift_witnesses_exact =
        back == tail_f && tail_g.values()[1..] == values[..] && tail_g[0] == 0.0;
    let tail_mutual_weak = check_weak_majorize(&tail_f, &tail_g, CLASS_TOL).holds
        && check_weak_majorize(&tail_g, &tail_f, CLASS_TOL).holds;

    let mut inside = values;
    inside[n - 1] = 0.0;
    let inside = NonNegVector::new(inside)?;

    Ok(ReciprocalSquareReport {
        g_weak_f: check_weak_majorize(&g, &f, CLASS_TOL),
        f_weak_g: check_weak_majorize(&f, &g, CLASS_TOL),
        right_shift_witness_exact,
        partial_permutation: permutation_between(&inside, &g, PermutationMode::Partial),
        tail_strict_permutation: permutation_between(&tail_f, &tail_g, PermutationMode::Strict),
        tail_mutual_weak,
        tail_shift_witnesses_exact,
        tail_f,
        tail_g,
        f,
        g,
        infinite_range_excludes_zero: true,
    })
}
