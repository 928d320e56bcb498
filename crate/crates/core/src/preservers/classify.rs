use alloc::vec::Vec;

use super::operator::TruncatedOperator;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rejection {
    /// The row has several positive entries (and, on `ℓ¹`, is not constant).
    RowPattern { row: usize },
    /// The positive entries of `column` differ, as a multiset, from those
    /// of column 0.
    ColumnMismatch { column: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreserverVerdict {
    pub accepted: bool,
    pub rejection: Option<Rejection>,
}

impl PreserverVerdict {
    fn accept() -> Self {
        Self {
            accepted: true,
            rejection: None,
        }
    }

    fn reject(r: Rejection) -> Self {
        Self {
            accepted: false,
            rejection: Some(r),
        }
    }
}

/// `ℓᵖ`, `p > 1`: every row has at most one entry above `tol`, and all
/// columns carry the same multiset of positive entries.
pub fn classify_preserver_lp(op: &TruncatedOperator, tol: f64) -> PreserverVerdict {
    for i in 0..op.rows() {
        if positive_count(op, i, tol) > 1 {
            return PreserverVerdict::reject(Rejection::RowPattern { row: i });
        }
    }
    columns_agree(op, tol)
}

/// `ℓ¹`: every row has at most one entry above `tol` or is constant across
/// all columns within `tol`; all columns carry the same multiset of
/// positive entries.
pub fn classify_preserver_l1(op: &TruncatedOperator, tol: f64) -> PreserverVerdict {
    for i in 0..op.rows() {
        if positive_count(op, i, tol) > 1 && !row_is_constant(op, i, tol) {
            return PreserverVerdict::reject(Rejection::RowPattern { row: i });
        }
    }
    columns_agree(op, tol)
}

fn positive_count(op: &TruncatedOperator, i: usize, tol: f64) -> usize {
    op.row_entries(i).iter().filter(|(_, v)| *v > tol).count()
}

fn row_is_constant(op: &TruncatedOperator, i: usize, tol: f64) -> bool {
    let entries = op.row_entries(i);
    if entries.len() < op.cols() {
        // Some column holds a zero while another holds a value above tol.
        return entries.iter().all(|(_, v)| *v <= tol);
    }
    let (lo, hi) = entries
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), (_, v)| (lo.min(*v), hi.max(*v)));
    hi - lo <= tol
}

fn column_profile(op: &TruncatedOperator, j: usize, tol: f64) -> Vec<f64> {
    let mut v: Vec<f64> = op.column_values(j).into_iter().filter(|&x| x > tol).collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

fn columns_agree(op: &TruncatedOperator, tol: f64) -> PreserverVerdict {
    let reference = column_profile(op, 0, tol);
    for j in 1..op.cols() {
        let p = column_profile(op, j, tol);
        let same = p.len() == reference.len()
            && p.iter().zip(&reference).all(|(a, b)| (a - b).abs() <= tol);
        if !same {
            return PreserverVerdict::reject(Rejection::ColumnMismatch { column: j });
        }
    }
    PreserverVerdict::accept()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{shift_matrix, ShiftDirection};
    use crate::preservers::{build_preserver, Injection, InjectionFamily, PreserverSpec};
    use crate::seq::NonNegVector;
    use std::vec;

    const TOL: f64 = 1e-9;

    #[test]
    fn built_lp_preserver_is_accepted() {
        let fam = InjectionFamily::new(vec![
            Injection::new(vec![0, 2, 4]).unwrap(),
            Injection::new(vec![1, 3, 5]).unwrap(),
        ])
        .unwrap();
        let spec = PreserverSpec::new(2.0, vec![0.5, 0.25], fam, None).unwrap();
        let op = build_preserver(&spec, 6, 3).unwrap();
        assert!(classify_preserver_lp(&op, TOL).accepted);
        assert!(classify_preserver_l1(&op, TOL).accepted);
    }

    #[test]
    fn right_shift_with_room_for_last_column() {
        // n + 1 rows so that every column's mass is inside the truncation
        let op = build_preserver(
            &PreserverSpec::new(
                2.0,
                vec![1.0],
                InjectionFamily::new(vec![Injection::shift(4, 1)]).unwrap(),
                None,
            )
            .unwrap(),
            5,
            4,
        )
        .unwrap();
        assert!(classify_preserver_lp(&op, TOL).accepted);
        // square truncation loses the last column's entry
        let square = TruncatedOperator::from_matrix(&shift_matrix(4, ShiftDirection::Right));
        assert_eq!(
            classify_preserver_lp(&square, TOL).rejection,
            Some(Rejection::ColumnMismatch { column: 3 })
        );
    }

    #[test]
    fn two_positives_in_a_row_rejected() {
        let op = TruncatedOperator::from_dense(3, 2, &[1.0, 0.5, 0.0, 0.0, 0.5, 1.0]).unwrap();
        assert_eq!(
            classify_preserver_lp(&op, TOL).rejection,
            Some(Rejection::RowPattern { row: 0 })
        );
    }

    #[test]
    fn l1_accepts_constant_rows_only() {
        let fam = InjectionFamily::new(vec![Injection::shift(3, 1)]).unwrap();
        let h = NonNegVector::new(vec![0.3]).unwrap();
        let spec = PreserverSpec::new(1.0, vec![0.7], fam, Some(h)).unwrap();
        let op = build_preserver(&spec, 4, 3).unwrap();
        assert!(classify_preserver_l1(&op, TOL).accepted);
        assert_eq!(
            classify_preserver_lp(&op, TOL).rejection,
            Some(Rejection::RowPattern { row: 0 })
        );

        let (a, b) = (0.4, 0.9);
        let bad = TruncatedOperator::from_dense(1, 3, &[a, a, b]).unwrap();
        assert_eq!(
            classify_preserver_l1(&bad, TOL).rejection,
            Some(Rejection::RowPattern { row: 0 })
        );
    }

    #[test]
    fn zero_operator_is_accepted() {
        let op = TruncatedOperator::zeros(3, 3).unwrap();
        assert!(classify_preserver_lp(&op, TOL).accepted);
        assert!(classify_preserver_l1(&op, TOL).accepted);
    }
}
