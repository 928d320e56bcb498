use alloc::vec::Vec;

use super::injection::InjectionFamily;
use super::operator::TruncatedOperator;
use crate::seq::NonNegVector;
use crate::{Error, Result};

/// Which preserver characterisation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// `p > 1`: only `Σ λ_k P_θk`.
    Lp,
    /// `p = 1`: an extra constant-row term `T_h` is allowed.
    L1,
}

/// `T = Σ λ_k P_θk (+ T_h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PreserverSpec {
    p: f64,
    weights: Vec<f64>,
    family: InjectionFamily,
    constant_row: Option<NonNegVector>,
}

impl PreserverSpec {
    pub fn new(
        p: f64,
        weights: Vec<f64>,
        family: InjectionFamily,
        constant_row: Option<NonNegVector>,
    ) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        if weights.len() != family.len() {
            return Err(Error::InvalidSpec("one weight per injection is required"));
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if w < 0.0 {
                return Err(Error::NegativeEntry { index, value: w });
            }
        }
        if let Some(h) = &constant_row {
            if p > 1.0 {
                return Err(Error::InvalidSpec("a constant row is only allowed for p = 1"));
            }
            let owners = family.owners();
            if h.support().iter().any(|i| owners.contains_key(i)) {
                return Err(Error::InvalidSpec(
                    "constant row must vanish on the images of the injections",
                ));
            }
        }
        Ok(Self {
            p,
            weights,
            family,
            constant_row,
        })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn space(&self) -> Space {
        if self.p > 1.0 {
            Space::Lp
        } else {
            Space::L1
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn family(&self) -> &InjectionFamily {
        &self.family
    }

    pub fn constant_row(&self) -> Option<&NonNegVector> {
        self.constant_row.as_ref()
    }

    /// Rows needed to hold every image and the constant row.
    pub fn row_bound(&self) -> usize {
        let h = self.constant_row.as_ref().map_or(0, |h| h.dim());
        self.family.image_bound().max(h).max(1)
    }

    pub fn domain_dim(&self) -> usize {
        self.family.domain_dim()
    }
}

/// Materialises the `rows × cols` block of the preserver: `λ_k` at
/// `(θ_k(j), j)` and, in `ℓ¹` mode, `h(i)` across row `i`.
pub fn build_preserver(spec: &PreserverSpec, rows: usize, cols: usize) -> Result<TruncatedOperator> {
    let mut op = TruncatedOperator::zeros(rows, cols)?;
    for (theta, &w) in spec.family.members().iter().zip(&spec.weights) {
        if w == 0.0 {
            continue;
        }
        for j in 0..theta.domain_dim().min(cols) {
            let i = theta.image(j);
            if i < rows {
                op.set(i, j, w)?;
            }
        }
    }
    if let Some(h) = &spec.constant_row {
        for i in h.support().into_iter().filter(|&i| i < rows) {
            for j in 0..cols {
                op.set(i, j, h[i])?;
            }
        }
    }
    Ok(op)
}

/// `T_h f = h Σ f`.
pub fn apply_th(h: &NonNegVector, f: &NonNegVector) -> NonNegVector {
    let s = f.sum();
    NonNegVector::new(h.values().iter().map(|&x| x * s).collect())
        .expect("product of nonnegative finite values")
}
