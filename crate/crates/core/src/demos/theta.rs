use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::preservers::{build_preserver, Injection, InjectionFamily, PreserverSpec, TruncatedOperator};
use crate::seq::NonNegVector;
use crate::{Error, Result};

/// `θ_i(j) = i + 1 + Σ_{k=0}^{i+j-2} k` (1-based in and out).
pub fn theta_quadratic(i: u64, j: u64) -> u64 {
    assert!(i >= 1 && j >= 1, "indices are 1-based");
    let m = i + j - 2;
    i + 1 + m * (m + 1) / 2
}

/// `θ_i(j) = i - 1 + Σ_{k=1}^{i+j-1} k` (1-based in and out).
pub fn theta_triangular(i: u64, j: u64) -> u64 {
    assert!(i >= 1 && j >= 1, "indices are 1-based");
    let m = i + j - 1;
    i - 1 + m * (m + 1) / 2
}

/// `Σ_{k=2}^{i+1} k`, the 1-based row carrying `μ_i` in the second family's
/// constant-row term.
pub fn h_support_index(i: u64) -> u64 {
    assert!(i >= 1, "indices are 1-based");
    (i + 1) * (i + 2) / 2 - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    Quadratic,
    Triangular,
}

impl ThetaKind {
    pub fn eval(self, i: u64, j: u64) -> u64 {
        match self {
            ThetaKind::Quadratic => theta_quadratic(i, j),
            ThetaKind::Triangular => theta_triangular(i, j),
        }
    }
}

fn family(kind: ThetaKind, members: usize, domain: usize) -> Result<InjectionFamily> {
    let injections = (1..=members as u64)
        .map(|i| {
            Injection::new(
                (1..=domain as u64)
                    .map(|j| (kind.eval(i, j) - 1) as usize)
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    InjectionFamily::new(injections)
}

/// First `members` injections of the quadratic family on `{1..domain}`,
/// as 0-based maps.
pub fn quadratic_family(members: usize, domain: usize) -> Result<InjectionFamily> {
    family(ThetaKind::Quadratic, members, domain)
}

pub fn triangular_family(members: usize, domain: usize) -> Result<InjectionFamily> {
    family(ThetaKind::Triangular, members, domain)
}

/// Outcome of the exhaustive family check up to a value bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaCheck {
    pub values_checked: usize,
    /// First `(i, j, i', j')` with equal images, 1-based.
    pub collision: Option<(u64, u64, u64, u64)>,
    /// First `(i, j, n)` with `θ_i(j)` equal to the `n`-th constant-row index.
    pub h_collision: Option<(u64, u64, u64)>,
}

impl ThetaCheck {
    pub fn passed(&self) -> bool {
        self.collision.is_none() && self.h_collision.is_none()
    }
}

/// Enumerates every `θ_i(j) ≤ bound` and checks injectivity in `j`,
/// pairwise disjointness across `i`, and (for the triangular family)
/// disjointness from the constant-row indices.
pub fn theta_family_check(kind: ThetaKind, bound: u64) -> ThetaCheck {
    let mut seen: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    let mut collision = None;
    let mut i = 1;
    while kind.eval(i, 1) <= bound {
        let mut j = 1;
        loop {
            let v = kind.eval(i, j);
            if v > bound {
                break;
            }
            if let Some(&(i0, j0)) = seen.get(&v) {
                collision.get_or_insert((i0, j0, i, j));
            } else {
                seen.insert(v, (i, j));
            }
            j += 1;
        }
        i += 1;
    }
    let mut h_collision = None;
    if kind == ThetaKind::Triangular {
        let mut n = 1;
        while h_support_index(n) <= bound {
            if let Some(&(i, j)) = seen.get(&h_support_index(n)) {
                h_collision.get_or_insert((i, j, n));
            }
            n += 1;
        }
    }
    ThetaCheck {
        values_checked: seen.len(),
        collision,
        h_collision,
    }
}

/// The displayed operator matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperMatrix {
    /// `T₁ = Σ λ_i P_θi` over the quadratic family.
    T1,
    /// `T₁ + T_h` with `h = a e₁`.
    T,
    /// Triangular family plus `h(Σ_{k=2}^{i+1} k) = μ_i`.
    Example2,
}

/// Preserver spec behind a displayed matrix. Uses `lambda.len()`
/// injections over the domain `{1..cols}`; `a` is used by `T`, `mu` by
/// `Example2`, and constant rows are laid out over `rows` indices.
pub fn paper_matrix_spec(
    which: PaperMatrix,
    rows: usize,
    cols: usize,
    lambda: &[f64],
    a: f64,
    mu: &[f64],
) -> Result<PreserverSpec> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter("truncation must be at least 1 x 1"));
    }
    let members = lambda.len();
    let (fam, h) = match which {
        PaperMatrix::T1 => (quadratic_family(members, cols)?, None),
        PaperMatrix::T => {
            let mut h = alloc::vec![0.0; rows];
            h[0] = a;
            (quadratic_family(members, cols)?, Some(NonNegVector::new(h)?))
        }
        PaperMatrix::Example2 => {
            let mut h = alloc::vec![0.0; rows];
            for (k, &m) in mu.iter().enumerate() {
                let idx = (h_support_index(k as u64 + 1) - 1) as usize;
                if idx < rows {
                    h[idx] = m;
                }
            }
            (triangular_family(members, cols)?, Some(NonNegVector::new(h)?))
        }
    };
    PreserverSpec::new(1.0, lambda.to_vec(), fam, h)
}

/// `rows × cols` block of a displayed matrix, built through
/// [`build_preserver`].
pub fn paper_matrix(
    which: PaperMatrix,
    rows: usize,
    cols: usize,
    lambda: &[f64],
    a: f64,
    mu: &[f64],
) -> Result<TruncatedOperator> {
    let spec = paper_matrix_spec(which, rows, cols, lambda, a, mu)?;
    build_preserver(&spec, rows, cols)
}
