//! Constraint propagation showing that `f = Rg` forces the right shift.
//!
//! For a strictly decreasing positive `g`, any doubly substochastic `D`
//! with `Dg = Rg` is pinned entry by entry: row 1 must vanish, and each
//! following row must put all of its mass on the largest still-available
//! coordinate of `g`, which saturates that column.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{shift_matrix, ShiftDirection, StochMatrix};
use crate::preservers::TruncatedOperator;
use crate::seq::NonNegVector;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForcingConclusion {
    EqualsRightShift,
    Underdetermined,
    Contradiction,
}

impl ForcingConclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            ForcingConclusion::EqualsRightShift => "equals-right-shift",
            ForcingConclusion::Underdetermined => "underdetermined",
            ForcingConclusion::Contradiction => "contradiction",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForcingResult {
    /// Pinned entries; free entries are absent as well as pinned zeros.
    pub forced: TruncatedOperator,
    /// `pinned_rows[i]` is true when every entry of row `i` is pinned.
    pub pinned_rows: Vec<bool>,
    pub fully_determined: bool,
    pub conclusion: ForcingConclusion,
    /// Columns whose pinned mass inside the truncation is zero. For the
    /// shift this is the last column: its unit entry lives in row `n + 1`,
    /// beyond the truncation.
    pub open_columns: Vec<usize>,
}

/// Propagates the constraints of `Dg = Rg` for a strictly decreasing,
/// strictly positive `g` truncated to `g.dim()`.
pub fn shift_forcing(g: &NonNegVector) -> Result<ForcingResult> {
    let n = g.dim();
    for i in 0..n {
        if g[i] <= 0.0 {
            return Err(Error::NotStrictlyDecreasing(i));
        }
        if i > 0 && g[i] >= g[i - 1] {
            return Err(Error::NotStrictlyDecreasing(i));
        }
    }
    let f = shift_matrix(n, ShiftDirection::Right).apply(g)?;
    Ok(propagate(&f, g))
}

fn propagate(f: &NonNegVector, g: &NonNegVector) -> ForcingResult {
    let n = g.dim();
    let mut cells: Vec<Option<f64>> = vec![None; n * n];
    let mut col_mass = vec![0.0; n];
    let mut contradiction = false;

    for i in 0..n {
        // Saturated columns admit nothing more.
        for j in 0..n {
            if col_mass[j] >= 1.0 && cells[i * n + j].is_none() {
                cells[i * n + j] = Some(0.0);
            }
        }
        let pinned_mass: f64 = (0..n).filter_map(|j| cells[i * n + j]).sum();
        let pinned_value: f64 = (0..n)
            .filter_map(|j| cells[i * n + j].map(|d| d * g[j]))
            .sum();
        let remaining = f[i] - pinned_value;
        let free: Vec<usize> = (0..n).filter(|&j| cells[i * n + j].is_none()).collect();

        if remaining == 0.0 {
            // g > 0 everywhere, so every free coefficient must vanish.
            for &j in &free {
                cells[i * n + j] = Some(0.0);
            }
            continue;
        }
        let Some(&best) = free.iter().max_by(|&&a, &&b| g[a].partial_cmp(&g[b]).unwrap()) else {
            contradiction = true;
            continue;
        };
        let row_room = 1.0 - pinned_mass;
        let ceiling = row_room * g[best];
        if remaining > ceiling || (remaining == ceiling && 1.0 - col_mass[best] < row_room) {
            contradiction = true;
        } else if remaining == ceiling {
            // Equality in Σ d_ij g_j ≤ (Σ d_ij) max g_j ≤ max g_j.
            cells[i * n + best] = Some(1.0 - pinned_mass);
            col_mass[best] += 1.0 - pinned_mass;
            for &j in &free {
                if j != best {
                    cells[i * n + j] = Some(0.0);
                }
            }
        }
    }
    // Column substochasticity: a unit entry empties the rest of its column.
    for j in 0..n {
        if col_mass[j] >= 1.0 {
            for i in 0..n {
                if cells[i * n + j].is_none() {
                    cells[i * n + j] = Some(0.0);
                }
            }
        }
    }

    let pinned_rows: Vec<bool> = (0..n)
        .map(|i| (0..n).all(|j| cells[i * n + j].is_some()))
        .collect();
    let fully_determined = pinned_rows.iter().all(|&p| p);
    let forced = TruncatedOperator::from_entries(
        n,
        n,
        cells
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.map(|v| (k / n, k % n, v))),
    )
    .expect("pinned entries lie in [0, 1]");
    let shift = TruncatedOperator::from_matrix(&shift_matrix(n, ShiftDirection::Right));
    let conclusion = if contradiction {
        ForcingConclusion::Contradiction
    } else if fully_determined && forced == shift {
        ForcingConclusion::EqualsRightShift
    } else {
        ForcingConclusion::Underdetermined
    };
    let open_columns = (0..n).filter(|&j| col_mass[j] == 0.0).collect();
    ForcingResult {
        forced,
        pinned_rows,
        fully_determined,
        conclusion,
        open_columns,
    }
}

impl ForcingResult {
    /// The forced matrix as a dense [`StochMatrix`].
    pub fn to_matrix(&self) -> StochMatrix {
        let n = self.forced.rows();
        let data = self.forced.to_dense().concat();
        crate::matrix::classify_matrix(n, data, crate::CLASS_TOL).expect("0/1 entries")
    }
}
