//! Hand-transcribed 16 × 5 blocks of the printed preserver matrices.
//!
//! Entries are symbols: `0`, `a`, `l<k>` for `λ_k` and `m<k>` for `μ_k`.
//! [`golden_check`] builds each operator with distinct numeric values for
//! every symbol, maps the entries back to symbols and compares cell by
//! cell.

use majorize_core::demos::{paper_matrix, PaperMatrix};
use majorize_core::preservers::TruncatedOperator;
use majorize_core::Result;

pub const ROWS: usize = 16;
pub const COLS: usize = 5;

pub const T1_DISPLAY: [&str; ROWS] = [
    "0  0  0  0  0",
    "l1 0  0  0  0",
    "0  l1 0  0  0",
    "l2 0  0  0  0",
    "0  0  l1 0  0",
    "0  l2 0  0  0",
    "l3 0  0  0  0",
    "0  0  0  l1 0",
    "0  0  l2 0  0",
    "0  l3 0  0  0",
    "l4 0  0  0  0",
    "0  0  0  0  l1",
    "0  0  0  l2 0",
    "0  0  l3 0  0",
    "0  l4 0  0  0",
    "l5 0  0  0  0",
];

pub const T_DISPLAY: [&str; ROWS] = [
    "a  a  a  a  a",
    "l1 0  0  0  0",
    "0  l1 0  0  0",
    "l2 0  0  0  0",
    "0  0  l1 0  0",
    "0  l2 0  0  0",
    "l3 0  0  0  0",
    "0  0  0  l1 0",
    "0  0  l2 0  0",
    "0  l3 0  0  0",
    "l4 0  0  0  0",
    "0  0  0  0  l1",
    "0  0  0  l2 0",
    "0  0  l3 0  0",
    "0  l4 0  0  0",
    "l5 0  0  0  0",
];

pub const EXAMPLE2_DISPLAY: [&str; ROWS] = [
    "l1 0  0  0  0",
    "m1 m1 m1 m1 m1",
    "0  l1 0  0  0",
    "l2 0  0  0  0",
    "m2 m2 m2 m2 m2",
    "0  0  l1 0  0",
    "0  l2 0  0  0",
    "l3 0  0  0  0",
    "m3 m3 m3 m3 m3",
    "0  0  0  l1 0",
    "0  0  l2 0  0",
    "0  l3 0  0  0",
    "l4 0  0  0  0",
    "m4 m4 m4 m4 m4",
    "0  0  0  0  l1",
    "0  0  0  l2 0",
];

/// Distinct values standing in for the symbols.
pub const LAMBDA: [f64; 5] = [0.5, 0.25, 0.125, 0.0625, 0.03125];
pub const A: f64 = 0.75;
pub const MU: [f64; 5] = [0.3, 0.03, 0.003, 0.0003, 0.00003];

pub fn display(which: PaperMatrix) -> &'static [&'static str; ROWS] {
    match which {
        PaperMatrix::T1 => &T1_DISPLAY,
        PaperMatrix::T => &T_DISPLAY,
        PaperMatrix::Example2 => &EXAMPLE2_DISPLAY,
    }
}

/// Symbol for `value`, given the numeric stand-ins; `?` when nothing matches.
pub fn symbol(value: f64, lambda: &[f64], a: f64, mu: &[f64]) -> String {
    if value == 0.0 {
        return "0".into();
    }
    if let Some(k) = lambda.iter().position(|&l| l == value) {
        return format!("l{}", k + 1);
    }
    if value == a {
        return "a".into();
    }
    if let Some(k) = mu.iter().position(|&m| m == value) {
        return format!("m{}", k + 1);
    }
    "?".into()
}

pub fn symbolic_rows(op: &TruncatedOperator, lambda: &[f64], a: f64, mu: &[f64]) -> Vec<Vec<String>> {
    op.to_dense()
        .iter()
        .map(|row| row.iter().map(|&v| symbol(v, lambda, a, mu)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenMismatch {
    /// 1-based row and column.
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

/// Builds the displayed block and returns the first cell that differs from
/// the transcription.
pub fn golden_check(which: PaperMatrix) -> Result<Option<GoldenMismatch>> {
    let op = paper_matrix(which, ROWS, COLS, &LAMBDA, A, &MU)?;
    let built = symbolic_rows(&op, &LAMBDA, A, &MU);
    for (i, line) in display(which).iter().enumerate() {
        for (j, expected) in line.split_whitespace().enumerate() {
            if built[i][j] != expected {
                return Ok(Some(GoldenMismatch {
                    row: i + 1,
                    col: j + 1,
                    expected: expected.to_owned(),
                    found: built[i][j].clone(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transcriptions_are_rectangular() {
        for which in [PaperMatrix::T1, PaperMatrix::T, PaperMatrix::Example2] {
            for line in display(which) {
                assert_eq!(line.split_whitespace().count(), COLS, "{line}");
            }
        }
    }

    #[test]
    fn all_three_blocks_match() {
        for which in [PaperMatrix::T1, PaperMatrix::T, PaperMatrix::Example2] {
            assert_eq!(golden_check(which).unwrap(), None, "{which:?}");
        }
    }

    #[test]
    fn a_swapped_weight_is_reported() {
        let mut lambda = LAMBDA;
        lambda.swap(0, 1);
        let op = paper_matrix(PaperMatrix::T1, ROWS, COLS, &lambda, A, &MU).unwrap();
        let rows = symbolic_rows(&op, &LAMBDA, A, &MU);
        assert_eq!(rows[1][0], "l2");
    }
}
