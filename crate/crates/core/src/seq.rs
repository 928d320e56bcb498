//! Nonnegative sequences and their order statistics.
//!
//! A [`NonNegVector`] of dimension `n` stands for a sequence that is exactly
//! zero beyond index `n`. Relation checks rely on that: padding with zeros
//! never changes the represented sequence.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Index;

use crate::{Error, Result};

/// A finite nonnegative real vector.
#[derive(Debug, Clone, PartialEq)]
pub struct NonNegVector {
    values: Vec<f64>,
}

impl NonNegVector {
    /// Validates and wraps `values`. Rejects empty input, negative entries
    /// and NaN or infinite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyVector);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value < 0.0 {
                return Err(Error::NegativeEntry { index, value });
            }
        }
        Ok(Self { values })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self {
            values: vec![0.0; dim],
        }
    }

    /// The standard basis vector `e_index` of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.values[index] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Zero-pads to `dim`. Returns a clone when already at least that long.
    pub fn padded(&self, dim: usize) -> Self {
        let mut values = self.values.clone();
        if values.len() < dim {
            values.resize(dim, 0.0);
        }
        Self { values }
    }

    /// Indices of the strictly positive entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    /// `true` when `self[i] <= other[i] + tol` for every index (after padding).
    pub fn le_entrywise(&self, other: &Self, tol: f64) -> bool {
        let n = self.dim().max(other.dim());
        (0..n).all(|i| self.get(i) <= other.get(i) + tol)
    }

    /// Entry `i`, or zero beyond the truncation.
    pub fn get(&self, i: usize) -> f64 {
        self.values.get(i).copied().unwrap_or(0.0)
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        let n = self.dim().max(other.dim());
        (0..n)
            .map(|i| (self.get(i) - other.get(i)).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for NonNegVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Pads both vectors to the larger dimension.
pub fn pad_pair(f: &NonNegVector, g: &NonNegVector) -> (NonNegVector, NonNegVector) {
    let n = f.dim().max(g.dim());
    (f.padded(n), g.padded(n))
}

/// Non-increasing sort together with the permutation producing it.
#[derive(Debug, Clone, PartialEq)]
pub struct Rearrangement {
    pub sorted: NonNegVector,
    /// `sorted[k] == original[perm[k]]`.
    pub perm: Vec<usize>,
}

impl Rearrangement {
    /// Position of original index `i` in the sorted order.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (k, &i) in self.perm.iter().enumerate() {
            inv[i] = k;
        }
        inv
    }
}

/// Decreasing rearrangement; ties keep ascending original index.
pub fn decreasing_rearrangement(v: &NonNegVector) -> Rearrangement {
    let mut perm: Vec<usize> = (0..v.dim()).collect();
    perm.sort_by(|&a, &b| descending(v[a], v[b]));
    let sorted = perm.iter().map(|&i| v[i]).collect();
    Rearrangement {
        sorted: NonNegVector { values: sorted },
        perm,
    }
}

fn descending(a: f64, b: f64) -> Ordering {
    b.partial_cmp(&a).unwrap_or(Ordering::Equal)
}

/// Cumulative sums `s_k = v[0] + ... + v[k]`.
pub fn partial_sums(v: &NonNegVector) -> Vec<f64> {
    let mut acc = 0.0;
    v.values
        .iter()
        .map(|&x| {
            acc += x;
            acc
        })
        .collect()
}

/// Partial sums of the decreasing rearrangement.
pub fn sorted_partial_sums(v: &NonNegVector) -> Vec<f64> {
    partial_sums(&decreasing_rearrangement(v).sorted)
}

/// One block of a level-set decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSet {
    pub value: f64,
    pub indices: Vec<usize>,
}

/// The distinct positive values of a vector, in strictly decreasing order,
/// each with the (ascending) indices where it is attained.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LevelSetDecomposition {
    pub blocks: Vec<LevelSet>,
}

impl LevelSetDecomposition {
    /// Scatters every block back onto a zero vector of dimension `dim`.
    pub fn reconstruct(&self, dim: usize) -> NonNegVector {
        let mut out = NonNegVector::zeros(dim);
        for block in &self.blocks {
            for &i in &block.indices {
                out.values[i] = block.value;
            }
        }
        out
    }
}

pub fn level_sets(v: &NonNegVector) -> LevelSetDecomposition {
    let r = decreasing_rearrangement(v);
    let mut blocks: Vec<LevelSet> = Vec::new();
    for (&value, &i) in r.sorted.values.iter().zip(&r.perm) {
        if value <= 0.0 {
            break;
        }
        match blocks.last_mut() {
            Some(block) if block.value == value => block.indices.push(i),
            _ => blocks.push(LevelSet {
                value,
                indices: vec![i],
            }),
        }
    }
    LevelSetDecomposition { blocks }
}

/// `(Σ v[i]^p)^(1/p)` for `p >= 1`.
///
/// Terms are summed in decreasing order, so the result is exactly invariant
/// under permutations and zero padding.
pub fn p_norm(v: &NonNegVector, p: f64) -> Result<f64> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let sorted = decreasing_rearrangement(v).sorted;
    if p == 1.0 {
        return Ok(sorted.sum());
    }
    let s: f64 = sorted.values.iter().map(|&x| libm::pow(x, p)).sum();
    Ok(libm::pow(s, 1.0 / p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    fn nv(v: &[f64]) -> NonNegVector {
        NonNegVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_rejects_bad_entries() {
        assert_eq!(NonNegVector::new(vec![]), Err(Error::EmptyVector));
        assert!(matches!(
            NonNegVector::new(vec![1.0, -0.5]),
            Err(Error::NegativeEntry { index: 1, .. })
        ));
        assert_eq!(
            NonNegVector::new(vec![f64::NAN]),
            Err(Error::NonFinite { index: 0 })
        );
        assert_eq!(
            NonNegVector::new(vec![0.0, f64::INFINITY]),
            Err(Error::NonFinite { index: 1 })
        );
    }

    #[test]
    fn rearrangement_examples() {
        let r = decreasing_rearrangement(&nv(&[3.0, 1.0, 2.0]));
        assert_eq!(r.sorted.values(), &[3.0, 2.0, 1.0]);
        assert_eq!(r.perm, vec![0, 2, 1]);

        let r = decreasing_rearrangement(&nv(&[0.0, 0.0, 0.0]));
        assert_eq!(r.perm, vec![0, 1, 2]);

        // 1/i² shifted right by one
        let r = decreasing_rearrangement(&nv(&[0.0, 1.0, 0.25, 1.0 / 9.0]));
        assert_eq!(r.sorted.values(), &[1.0, 0.25, 1.0 / 9.0, 0.0]);
        assert_eq!(r.perm, vec![1, 2, 3, 0]);
        assert_eq!(r.inverse(), vec![3, 0, 1, 2]);
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sums(&nv(&[2.0, 0.0, 1.0])), vec![2.0, 2.0, 3.0]);
        assert_eq!(partial_sums(&nv(&[0.0, 0.0])), vec![0.0, 0.0]);
        let s = partial_sums(&nv(&[1.0, 0.25, 1.0 / 9.0]));
        assert!((s[1] - 1.25).abs() < 1e-15);
        assert!((s[2] - 49.0 / 36.0).abs() < 1e-15);
    }

    #[test]
    fn level_set_examples() {
        let d = level_sets(&nv(&[3.0, 1.0, 3.0, 0.0]));
        assert_eq!(
            d.blocks,
            vec![
                LevelSet { value: 3.0, indices: vec![0, 2] },
                LevelSet { value: 1.0, indices: vec![1] },
            ]
        );
        assert!(level_sets(&nv(&[0.0, 0.0])).blocks.is_empty());

        let d = level_sets(&nv(&[1.0, 0.25, 1.0 / 9.0, 1.0 / 16.0]));
        let idx: Vec<_> = d.blocks.iter().map(|b| b.indices.clone()).collect();
        assert_eq!(idx, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn p_norm_examples() {
        assert_eq!(p_norm(&nv(&[3.0, 4.0]), 2.0).unwrap(), 5.0);
        assert_eq!(p_norm(&nv(&[1.0, 1.0, 1.0]), 1.0).unwrap(), 3.0);
        let s = p_norm(&nv(&[1.0, 0.25, 1.0 / 9.0]), 1.0).unwrap();
        assert!((s - 49.0 / 36.0).abs() < 1e-15);
        assert_eq!(p_norm(&nv(&[1.0]), 0.5), Err(Error::InvalidExponent(0.5)));
        assert!(p_norm(&nv(&[1.0]), f64::NAN).is_err());
    }

    #[test]
    fn padding_and_support() {
        let v = nv(&[0.0, 2.0]).padded(4);
        assert_eq!(v.values(), &[0.0, 2.0, 0.0, 0.0]);
        assert_eq!(v.support(), vec![1]);
        assert_eq!(v.get(10), 0.0);
    }
}
