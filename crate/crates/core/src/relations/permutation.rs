use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::StochMatrix;
use crate::seq::{decreasing_rearrangement, pad_pair, NonNegVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationMode {
    /// Full permutation of `{0..dim}`; the multisets of all entries must agree.
    Strict,
    /// Bijection between supports; only positive entries must agree.
    Partial,
}

/// Index pairs `(a, b)` with `g[b] == f[a]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub dim: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// `perm[a] = b` when every index is matched, i.e. `g = P f` with
    /// `P = StochMatrix::permutation(&perm)`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.pairs.len() != self.dim {
            return None;
        }
        let mut perm = vec![usize::MAX; self.dim];
        for &(a, b) in &self.pairs {
            perm[a] = b;
        }
        Some(perm)
    }

    pub fn to_matrix(&self) -> StochMatrix {
        let mut data = vec![0.0; self.dim * self.dim];
        for &(a, b) in &self.pairs {
            data[b * self.dim + a] = 1.0;
        }
        crate::matrix::classify_matrix(self.dim, data, crate::CLASS_TOL)
            .expect("0/1 entries are valid")
    }

    /// Indices of `f` that take part in the matching, ascending.
    pub fn domain(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.pairs.iter().map(|p| p.0).collect();
        d.sort_unstable();
        d
    }

    pub fn codomain(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
        d.sort_unstable();
        d
    }
}

/// Finds a permutation (or support bijection) carrying `f` onto `g`.
///
/// Entries are matched rank by rank after a stable decreasing sort, so ties
/// pair up in ascending index order. Values must agree exactly.
pub fn permutation_between(
    f: &NonNegVector,
    g: &NonNegVector,
    mode: PermutationMode,
) -> Option<Matching> {
    let (f, g) = pad_pair(f, g);
    let rf = decreasing_rearrangement(&f);
    let rg = decreasing_rearrangement(&g);
    let (xs, ys) = (rf.sorted.values(), rg.sorted.values());
    let len = match mode {
        PermutationMode::Strict => f.dim(),
        PermutationMode::Partial => {
            let lf = xs.iter().take_while(|&&x| x > 0.0).count();
            let lg = ys.iter().take_while(|&&y| y > 0.0).count();
            if lf != lg {
                return None;
            }
            lf
        }
    };
    if xs[..len] != ys[..len] {
        return None;
    }
    let pairs = (0..len).map(|k| (rf.perm[k], rg.perm[k])).collect();
    Some(Matching {
        dim: f.dim(),
        pairs,
    })
}
