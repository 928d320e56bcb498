//! T-transform chains connecting a majorization pair.

use alloc::vec::Vec;

use crate::matrix::{classify_matrix, StochMatrix};
use crate::seq::{decreasing_rearrangement, pad_pair, NonNegVector};
use crate::{Error, Result, EXACT_TOL};

use super::{first_violation, RelationKind};

/// The doubly stochastic map that is the identity except on coordinates
/// `i < j`, where it acts as `[[1 - t, t], [t, 1 - t]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTransform {
    pub i: usize,
    pub j: usize,
    pub t: f64,
}

impl TTransform {
    pub fn to_matrix(&self, n: usize) -> StochMatrix {
        let mut data = StochMatrix::identity(n).data().to_vec();
        data[self.i * n + self.i] = 1.0 - self.t;
        data[self.j * n + self.j] = 1.0 - self.t;
        data[self.i * n + self.j] = self.t;
        data[self.j * n + self.i] = self.t;
        classify_matrix(n, data, crate::CLASS_TOL).expect("T-transform entries are valid")
    }

    fn apply_rows(&self, data: &mut [f64], n: usize) {
        for c in 0..n {
            let a = data[self.i * n + c];
            let b = data[self.j * n + c];
            data[self.i * n + c] = (1.0 - self.t) * a + self.t * b;
            data[self.j * n + c] = self.t * a + (1.0 - self.t) * b;
        }
    }
}

/// A chain of T-transforms acting on the decreasing rearrangements.
///
/// Steps are indexed in the sorted frame: they carry `g↓` to `f↓`.
/// `source[k]` and `target[k]` are the original indices of the `k`-th
/// largest entries of `g` and `f`, and
/// `product[a][b] = (T_m ⋯ T_1)[rank_f(a)][rank_g(b)]`, so that
/// `product · g = f`. When both inputs are already sorted the product is
/// exactly the ordered product of the steps.
#[derive(Debug, Clone, PartialEq)]
pub struct TTransformChain {
    pub steps: Vec<TTransform>,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub product: StochMatrix,
}

impl TTransformChain {
    pub fn dim(&self) -> usize {
        self.source.len()
    }

    /// Ordered product `T_m ⋯ T_1` of the steps alone.
    pub fn sorted_product(&self) -> StochMatrix {
        let n = self.dim();
        let mut data = StochMatrix::identity(n).data().to_vec();
        for step in &self.steps {
            step.apply_rows(&mut data, n);
        }
        classify_matrix(n, data, self.product.tol()).expect("product of T-transforms")
    }
}

/// Builds at most `n - 1` T-transforms carrying `g` to `f` (up to the
/// rearrangements), following the classical Hardy–Littlewood–Pólya
/// construction on the sorted vectors.
pub fn hlp_witness(f: &NonNegVector, g: &NonNegVector, tol: f64) -> Result<TTransformChain> {
    let (f, g) = pad_pair(f, g);
    if let Some(v) = first_violation(&f, &g, RelationKind::Majorize, tol) {
        return Err(Error::RelationFails {
            relation: "majorization",
            index: v.index,
        });
    }
    let n = f.dim();
    let rf = decreasing_rearrangement(&f);
    let rg = decreasing_rearrangement(&g);
    let x = rf.sorted.values();
    let mut y = rg.sorted.values().to_vec();
    let eps = EXACT_TOL * g.max().max(1.0);

    let mut steps = Vec::new();
    let mut sorted = StochMatrix::identity(n).data().to_vec();
    while let Some(j) = (0..n).rev().find(|&j| y[j] - x[j] > eps) {
        let Some(k) = (j + 1..n).find(|&k| x[k] - y[k] > eps) else {
            break;
        };
        let give = y[j] - x[j];
        let take = x[k] - y[k];
        let delta = give.min(take);
        let t = (delta / (y[j] - y[k])).clamp(0.0, 1.0);
        if give <= take {
            y[j] = x[j];
            y[k] += delta;
        } else {
            y[j] -= delta;
            y[k] = x[k];
        }
        let step = TTransform { i: j, j: k, t };
        step.apply_rows(&mut sorted, n);
        steps.push(step);
    }

    let rank_f = rf.inverse();
    let rank_g = rg.inverse();
    let mut data = alloc::vec![0.0; n * n];
    for a in 0..n {
        for b in 0..n {
            data[a * n + b] = sorted[rank_f[a] * n + rank_g[b]];
        }
    }
    Ok(TTransformChain {
        steps,
        source: rg.perm,
        target: rf.perm,
        product: classify_matrix(n, data, tol)?,
    })
}
