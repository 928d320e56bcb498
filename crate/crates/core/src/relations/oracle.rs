//! Brute-force oracle for small dimensions.
//!
//! Decides `f ≺ g` as membership of `f` in the convex hull of the distinct
//! rearrangements of `g`, and `f ≺_w g` as existence of a hull point
//! dominating `f` entrywise. Both are phase-one feasibility problems solved
//! with a dense simplex tableau under Bland's rule. A basic feasible
//! solution uses at most `dim + 1` hull vertices, so this is the
//! Carathéodory search done by pivoting instead of subset enumeration.
//! Nothing here looks at partial sums.

use alloc::vec;
use alloc::vec::Vec;

use crate::seq::{pad_pair, NonNegVector};
use crate::{Error, Result};

pub const ORACLE_MAX_DIM: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleRelation {
    Strong,
    Weak,
}

/// Exhaustive oracle; `tol` bounds the phase-one infeasibility accepted
/// as feasible.
pub fn oracle_majorize_bruteforce(
    f: &NonNegVector,
    g: &NonNegVector,
    relation: OracleRelation,
    tol: f64,
) -> Result<bool> {
    let (f, g) = pad_pair(f, g);
    let n = f.dim();
    if n > ORACLE_MAX_DIM {
        return Err(Error::OracleTooLarge(n));
    }
    let vertices = distinct_permutations(g.values());
    let slack = relation == OracleRelation::Weak;

    // Rows: one per coordinate, plus the convexity row Σλ = 1.
    let rows = n + 1;
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for v in &vertices {
        let mut col = v.clone();
        col.push(1.0);
        columns.push(col);
    }
    if slack {
        for i in 0..n {
            let mut col = vec![0.0; rows];
            col[i] = -1.0;
            columns.push(col);
        }
    }
    let mut rhs: Vec<f64> = f.values().to_vec();
    rhs.push(1.0);

    let infeasibility = phase_one(&columns, &rhs);
    Ok(infeasibility <= tol)
}

/// All distinct arrangements of `values`, via next-permutation on the
/// ascending sort.
fn distinct_permutations(values: &[f64]) -> Vec<Vec<f64>> {
    let mut cur = values.to_vec();
    cur.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [f64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Minimises the sum of artificial variables for `A x = b, x ≥ 0`
/// (`b ≥ 0`), returning the optimal value.
fn phase_one(columns: &[Vec<f64>], rhs: &[f64]) -> f64 {
    const PIVOT_EPS: f64 = 1e-12;
    let m = rhs.len();
    let structural = columns.len();
    let width = structural + m;
    // tableau[r] = [coefficients..., rhs]
    let mut tab: Vec<Vec<f64>> = (0..m)
        .map(|r| {
            let mut row = Vec::with_capacity(width + 1);
            row.extend(columns.iter().map(|c| c[r]));
            row.extend((0..m).map(|a| if a == r { 1.0 } else { 0.0 }));
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut basis: Vec<usize> = (structural..width).collect();

    for _ in 0..10_000 {
        // Reduced cost of column j is -Σ over rows with artificial basis.
        let entering = (0..width).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let cost = if j >= structural { 1.0 } else { 0.0 };
            let dual: f64 = (0..m)
                .filter(|&r| basis[r] >= structural)
                .map(|r| tab[r][j])
                .sum();
            cost - dual < -PIVOT_EPS
        });
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..m {
            let a = tab[r][j];
            if a > PIVOT_EPS {
                let ratio = tab[r][width] / a;
                match leave {
                    Some((lr, best))
                        if ratio > best + PIVOT_EPS
                            || (ratio >= best - PIVOT_EPS && basis[r] > basis[lr]) => {}
                    _ => leave = Some((r, ratio)),
                }
            }
        }
        let Some((r, _)) = leave else { break };
        let pivot = tab[r][j];
        for c in 0..=width {
            tab[r][c] /= pivot;
        }
        for rr in 0..m {
            if rr != r {
                let factor = tab[rr][j];
                if factor != 0.0 {
                    for c in 0..=width {
                        tab[rr][c] -= factor * tab[r][c];
                    }
                }
            }
        }
        basis[r] = j;
    }

    (0..m)
        .filter(|&r| basis[r] >= structural)
        .map(|r| tab[r][width].max(0.0))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nv(v: &[f64]) -> NonNegVector {
        NonNegVector::new(v.to_vec()).unwrap()
    }

    const TOL: f64 = 1e-9;

    #[test]
    fn strong_examples() {
        let g = nv(&[2.0, 0.0]);
        assert!(oracle_majorize_bruteforce(&nv(&[1.0, 1.0]), &g, OracleRelation::Strong, TOL).unwrap());
        assert!(oracle_majorize_bruteforce(&g, &g, OracleRelation::Strong, TOL).unwrap());
        assert!(!oracle_majorize_bruteforce(&nv(&[0.3, 0.2]), &nv(&[1.0, 0.0]), OracleRelation::Strong, TOL).unwrap());
        assert!(!oracle_majorize_bruteforce(&nv(&[2.0, 0.0]), &nv(&[1.0, 1.0]), OracleRelation::Strong, TOL).unwrap());
    }

    #[test]
    fn weak_examples() {
        assert!(!oracle_majorize_bruteforce(&nv(&[2.0, 0.5]), &nv(&[2.0, 0.0]), OracleRelation::Weak, TOL).unwrap());
        assert!(oracle_majorize_bruteforce(&nv(&[0.3, 0.2]), &nv(&[1.0, 0.0]), OracleRelation::Weak, TOL).unwrap());
        assert!(oracle_majorize_bruteforce(&nv(&[0.0, 0.0]), &nv(&[0.0, 0.0]), OracleRelation::Weak, TOL).unwrap());
    }

    #[test]
    fn rejects_large_dims() {
        let v = NonNegVector::zeros(7);
        assert_eq!(
            oracle_majorize_bruteforce(&v, &v, OracleRelation::Strong, TOL),
            Err(Error::OracleTooLarge(7))
        );
    }

    #[test]
    fn distinct_permutation_count() {
        assert_eq!(distinct_permutations(&[1.0, 2.0, 3.0]).len(), 6);
        assert_eq!(distinct_permutations(&[1.0, 1.0, 3.0]).len(), 3);
        assert_eq!(distinct_permutations(&[0.0; 4]).len(), 1);
    }
}
