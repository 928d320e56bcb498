//! Square nonnegative matrices classified by their row and column sums, and
//! the increasable-operator algebra built on top of them.
//!
//! Class membership is decided against a tolerance stored with the matrix,
//! so every derived matrix can be reclassified consistently.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::seq::NonNegVector;
use crate::{Error, Result};

/// Strongest sum condition a matrix satisfies.
///
/// The classes form a partial order: `DoublyStochastic` is above
/// `DoublySubstochastic`, which is above both one-sided classes, which are
/// above `General`. The two one-sided classes are incomparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixClass {
    General,
    RowSubstochastic,
    ColSubstochastic,
    DoublySubstochastic,
    DoublyStochastic,
}

impl MatrixClass {
    /// `true` if every matrix of class `self` also belongs to `other`.
    pub fn implies(self, other: MatrixClass) -> bool {
        use MatrixClass::*;
        match (self, other) {
            (_, General) => true,
            (DoublyStochastic, _) => true,
            (DoublySubstochastic, DoublySubstochastic | RowSubstochastic | ColSubstochastic) => {
                true
            }
            (a, b) => a == b,
        }
    }

    pub fn is_doubly_substochastic(self) -> bool {
        self.implies(MatrixClass::DoublySubstochastic)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MatrixClass::General => "general",
            MatrixClass::RowSubstochastic => "row-substochastic",
            MatrixClass::ColSubstochastic => "column-substochastic",
            MatrixClass::DoublySubstochastic => "doubly-substochastic",
            MatrixClass::DoublyStochastic => "doubly-stochastic",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            MatrixClass::General,
            MatrixClass::RowSubstochastic,
            MatrixClass::ColSubstochastic,
            MatrixClass::DoublySubstochastic,
            MatrixClass::DoublyStochastic,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }

    /// Greatest class implied by both `self` and `other`.
    pub fn meet(self, other: MatrixClass) -> MatrixClass {
        use MatrixClass::*;
        if self.implies(other) {
            other
        } else if other.implies(self) {
            self
        } else {
            // Row vs column substochastic.
            General
        }
    }
}

impl fmt::Display for MatrixClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An `n × n` nonnegative matrix in row-major order with cached sums.
#[derive(Debug, Clone, PartialEq)]
pub struct StochMatrix {
    n: usize,
    data: Vec<f64>,
    row_sums: Vec<f64>,
    col_sums: Vec<f64>,
    class: MatrixClass,
    tol: f64,
}

/// Builds a [`StochMatrix`] from row-major `data` and tags it with the
/// strongest class that holds within `tol`.
pub fn classify_matrix(n: usize, data: Vec<f64>, tol: f64) -> Result<StochMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("matrix dimension must be positive"));
    }
    if data.len() != n * n {
        return Err(Error::DataLength {
            expected: n * n,
            found: data.len(),
        });
    }
    for (index, &value) in data.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index });
        }
        if value < 0.0 {
            return Err(Error::NegativeEntry { index, value });
        }
    }
    Ok(StochMatrix::classified(n, data, tol))
}

impl StochMatrix {
    fn classified(n: usize, data: Vec<f64>, tol: f64) -> Self {
        let mut row_sums = vec![0.0; n];
        let mut col_sums = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let a = data[i * n + j];
                row_sums[i] += a;
                col_sums[j] += a;
            }
        }
        let rows_sub = row_sums.iter().all(|&s| s <= 1.0 + tol);
        let cols_sub = col_sums.iter().all(|&s| s <= 1.0 + tol);
        let stochastic = row_sums
            .iter()
            .chain(&col_sums)
            .all(|&s| (s - 1.0).abs() <= tol);
        let class = match (stochastic, rows_sub, cols_sub) {
            (true, _, _) => MatrixClass::DoublyStochastic,
            (false, true, true) => MatrixClass::DoublySubstochastic,
            (false, true, false) => MatrixClass::RowSubstochastic,
            (false, false, true) => MatrixClass::ColSubstochastic,
            (false, false, false) => MatrixClass::General,
        };
        Self {
            n,
            data,
            row_sums,
            col_sums,
            class,
            tol,
        }
    }

    /// Rebuilds from computed data, clamping negative rounding noise no
    /// larger than `noise` to zero.
    fn from_computed(n: usize, mut data: Vec<f64>, tol: f64, noise: f64) -> Result<Self> {
        for v in data.iter_mut() {
            if *v < 0.0 && *v >= -noise {
                *v = 0.0;
            }
        }
        classify_matrix(n, data, tol)
    }

    pub fn from_rows(rows: &[Vec<f64>], tol: f64) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        classify_matrix(n, data, tol)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self::classified(n, data, crate::CLASS_TOL)
    }

    pub fn zeros(n: usize) -> Self {
        Self::classified(n, vec![0.0; n * n], crate::CLASS_TOL)
    }

    /// Permutation matrix with `P e_j = e_{perm[j]}`, so `(Pf)[perm[j]] = f[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut data = vec![0.0; n * n];
        for (j, &i) in perm.iter().enumerate() {
            data[i * n + j] = 1.0;
        }
        Self::classified(n, data, crate::CLASS_TOL)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sums(&self) -> &[f64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[f64] {
        &self.col_sums
    }

    pub fn class(&self) -> MatrixClass {
        self.class
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Same entries, reclassified under a different tolerance.
    pub fn with_tol(&self, tol: f64) -> Self {
        Self::classified(self.n, self.data.clone(), tol)
    }

    /// Largest entrywise difference.
    pub fn sup_distance(&self, other: &StochMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// `true` if `self[i][j] >= other[i][j] - tol` everywhere.
    pub fn dominates(&self, other: &StochMatrix, tol: f64) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| *a >= *b - tol)
    }

    /// Largest deviation of any row or column sum from one.
    pub fn stochastic_defect(&self) -> f64 {
        self.row_sums
            .iter()
            .chain(&self.col_sums)
            .map(|s| (s - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// The matrix action `(Mf)(i) = Σ_j m_ij f(j)`.
    pub fn apply(&self, f: &NonNegVector) -> Result<NonNegVector> {
        if f.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: f.dim(),
            });
        }
        let values = (0..self.n)
            .map(|i| self.row(i).iter().zip(f.values()).map(|(a, x)| a * x).sum())
            .collect();
        NonNegVector::new(values)
    }

    /// Multiplies row `i` by `factors[i]`.
    pub fn scale_rows(&self, factors: &[f64]) -> Result<Self> {
        let mut data = self.data.clone();
        for (i, &s) in factors.iter().enumerate() {
            for a in &mut data[i * self.n..(i + 1) * self.n] {
                *a *= s;
            }
        }
        classify_matrix(self.n, data, self.tol)
    }
}

/// Witness that a doubly substochastic matrix is increasable: a doubly
/// stochastic matrix dominating it entrywise.
#[derive(Debug, Clone, PartialEq)]
pub struct IncreasabilityCertificate {
    pub base: StochMatrix,
    pub completion: StochMatrix,
    /// Greedy augmentation steps used; zero for certificates assembled by
    /// [`compose_certificates`] or [`convex_combine_certificates`].
    pub steps: usize,
}

impl IncreasabilityCertificate {
    /// Checks that the completion is doubly stochastic and dominates the base,
    /// both within `tol`.
    pub fn verify(&self, tol: f64) -> Result<()> {
        if self.base.n != self.completion.n {
            return Err(Error::InvalidCertificate("dimension mismatch"));
        }
        if self.completion.stochastic_defect() > tol {
            return Err(Error::InvalidCertificate("completion is not doubly stochastic"));
        }
        if !self.completion.dominates(&self.base, tol) {
            return Err(Error::InvalidCertificate("completion does not dominate base"));
        }
        Ok(())
    }
}

/// Greedy doubly stochastic completion of a doubly substochastic matrix.
///
/// Repeatedly takes the lowest row `i` and lowest column `j` whose deficiency
/// `1 - sum` exceeds the matrix tolerance and adds `min(r_i, c_j)` at
/// `(i, j)`. Every step clears one row or column deficiency, so at most
/// `2n - 1` steps are taken.
pub fn vonneumann_complete(d: &StochMatrix) -> Result<IncreasabilityCertificate> {
    if !d.class.is_doubly_substochastic() {
        return Err(Error::NotDoublySubstochastic(d.class));
    }
    let n = d.n;
    let tol = d.tol;
    let mut row_def: Vec<f64> = d.row_sums.iter().map(|s| (1.0 - s).max(0.0)).collect();
    let mut col_def: Vec<f64> = d.col_sums.iter().map(|s| (1.0 - s).max(0.0)).collect();
    let mut data = d.data.clone();
    let mut steps = 0;
    loop {
        let i = pick_deficient(&row_def, tol);
        let j = pick_deficient(&col_def, tol);
        let (i, j) = match (i, j) {
            (None, None) => break,
            (Some(i), Some(j)) => (i, j),
            // Sub-tolerance residue on one side only: pair it with the
            // largest residue on the other side.
            (Some(i), None) => (i, argmax(&col_def)),
            (None, Some(j)) => (argmax(&row_def), j),
        };
        let m = row_def[i].min(col_def[j]);
        if m <= 0.0 {
            break;
        }
        data[i * n + j] += m;
        if row_def[i] <= col_def[j] {
            row_def[i] = 0.0;
            col_def[j] -= m;
        } else {
            col_def[j] = 0.0;
            row_def[i] -= m;
        }
        steps += 1;
    }
    let completion = StochMatrix::classified(n, data, tol);
    Ok(IncreasabilityCertificate {
        base: d.clone(),
        completion,
        steps,
    })
}

fn pick_deficient(def: &[f64], tol: f64) -> Option<usize> {
    def.iter().position(|&r| r > tol)
}

fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (k, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = k;
        }
    }
    best
}

/// `d1` doubly stochastic, `d2` doubly substochastic, `d1 = base + d2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub d1: StochMatrix,
    pub d2: StochMatrix,
}

impl Decomposition {
    /// `max |d1 - d2 - base|`.
    pub fn reconstruction_error(&self, base: &StochMatrix) -> f64 {
        self.d1
            .data
            .iter()
            .zip(&self.d2.data)
            .zip(&base.data)
            .map(|((a, b), d)| (a - b - d).abs())
            .fold(0.0, f64::max)
    }
}

pub fn decompose_increasable(
    d: &StochMatrix,
    cert: &IncreasabilityCertificate,
) -> Result<Decomposition> {
    if cert.base.n != d.n || cert.base.data != d.data {
        return Err(Error::CertificateMismatch);
    }
    let diff: Vec<f64> = cert
        .completion
        .data
        .iter()
        .zip(&d.data)
        .map(|(a, b)| a - b)
        .collect();
    let d2 = StochMatrix::from_computed(d.n, diff, d.tol, d.tol)?;
    if !d2.class.is_doubly_substochastic() {
        return Err(Error::InvalidCertificate("difference is not doubly substochastic"));
    }
    Ok(Decomposition {
        d1: cert.completion.clone(),
        d2,
    })
}

/// Matrix product `AB`.
pub fn compose(a: &StochMatrix, b: &StochMatrix) -> Result<StochMatrix> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let n = a.n;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a.data[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                data[i * n + j] += aik * b.data[k * n + j];
            }
        }
    }
    Ok(StochMatrix::classified(n, data, a.tol.max(b.tol)))
}

/// Certificate for `AB` given certificates `A ≤ A₁` and `B ≤ B₁`: the
/// completion is `A₁B₁`.
pub fn compose_certificates(
    ca: &IncreasabilityCertificate,
    cb: &IncreasabilityCertificate,
) -> Result<IncreasabilityCertificate> {
    Ok(IncreasabilityCertificate {
        base: compose(&ca.base, &cb.base)?,
        completion: compose(&ca.completion, &cb.completion)?,
        steps: 0,
    })
}

/// `tA + (1 - t)B`.
pub fn convex_combine(t: f64, a: &StochMatrix, b: &StochMatrix) -> Result<StochMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidMixing(t));
    }
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let data = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| t * x + (1.0 - t) * y)
        .collect();
    Ok(StochMatrix::classified(a.n, data, a.tol.max(b.tol)))
}

/// Certificate for `tA + (1 - t)B` with completion `tA₁ + (1 - t)B₁`.
pub fn convex_combine_certificates(
    t: f64,
    ca: &IncreasabilityCertificate,
    cb: &IncreasabilityCertificate,
) -> Result<IncreasabilityCertificate> {
    Ok(IncreasabilityCertificate {
        base: convex_combine(t, &ca.base, &cb.base)?,
        completion: convex_combine(t, &ca.completion, &cb.completion)?,
        steps: 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Left,
    Right,
}

/// `n × n` truncation of the left (superdiagonal) or right (subdiagonal)
/// shift.
pub fn shift_matrix(n: usize, dir: ShiftDirection) -> StochMatrix {
    assert!(n >= 1, "shift truncation needs n >= 1");
    let mut data = vec![0.0; n * n];
    for k in 0..n - 1 {
        match dir {
            ShiftDirection::Left => data[k * n + k + 1] = 1.0,
            ShiftDirection::Right => data[(k + 1) * n + k] = 1.0,
        }
    }
    StochMatrix::classified(n, data, crate::CLASS_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    const TOL: f64 = 1e-9;

    fn m(rows: &[&[f64]]) -> StochMatrix {
        let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        StochMatrix::from_rows(&rows, TOL).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(StochMatrix::identity(3).class(), MatrixClass::DoublyStochastic);
        let r = shift_matrix(4, ShiftDirection::Right);
        assert_eq!(r.class(), MatrixClass::DoublySubstochastic);
        assert_eq!(r.row_sums()[0], 0.0);
        assert_eq!(r.col_sums()[3], 0.0);
        assert_eq!(m(&[&[0.6, 0.6], &[0.6, 0.6]]).class(), MatrixClass::General);
        assert_eq!(
            m(&[&[0.5, 0.5], &[0.6, 0.0]]).class(),
            MatrixClass::RowSubstochastic
        );
        assert_eq!(
            m(&[&[0.5, 0.6], &[0.5, 0.0]]).class(),
            MatrixClass::ColSubstochastic
        );
    }

    #[test]
    fn classification_rejects_bad_input() {
        assert!(matches!(
            classify_matrix(2, vec![1.0, -1.0, 0.0, 0.0], TOL),
            Err(Error::NegativeEntry { index: 1, .. })
        ));
        assert_eq!(
            classify_matrix(2, vec![1.0; 3], TOL),
            Err(Error::DataLength { expected: 4, found: 3 })
        );
    }

    #[test]
    fn class_order() {
        use MatrixClass::*;
        assert!(DoublyStochastic.implies(RowSubstochastic));
        assert!(DoublySubstochastic.implies(ColSubstochastic));
        assert!(!RowSubstochastic.implies(ColSubstochastic));
        assert!(!DoublySubstochastic.implies(DoublyStochastic));
        assert_eq!(RowSubstochastic.meet(ColSubstochastic), General);
        assert_eq!(DoublyStochastic.meet(RowSubstochastic), RowSubstochastic);
        assert_eq!(MatrixClass::parse("doubly-stochastic"), Some(DoublyStochastic));
    }

    #[test]
    fn apply_examples() {
        let f = NonNegVector::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(StochMatrix::identity(2).apply(&f).unwrap(), f);
        let r = shift_matrix(3, ShiftDirection::Right);
        let g = r
            .apply(&NonNegVector::new(vec![1.0, 0.25, 1.0 / 9.0]).unwrap())
            .unwrap();
        assert_eq!(g.values(), &[0.0, 1.0, 0.25]);
        let avg = m(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let out = avg.apply(&NonNegVector::new(vec![2.0, 0.0]).unwrap()).unwrap();
        assert_eq!(out.values(), &[1.0, 1.0]);
        assert!(matches!(
            avg.apply(&NonNegVector::zeros(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn completion_examples() {
        let id = StochMatrix::identity(3);
        let cert = vonneumann_complete(&id).unwrap();
        assert_eq!(cert.steps, 0);
        assert_eq!(cert.completion.data(), id.data());

        let d = m(&[&[0.5, 0.0], &[0.0, 0.0]]);
        let cert = vonneumann_complete(&d).unwrap();
        assert_eq!(cert.completion.data(), &[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(cert.steps, 2);
        cert.verify(TOL).unwrap();

        let d = m(&[&[0.0, 0.5], &[0.5, 0.0]]);
        let cert = vonneumann_complete(&d).unwrap();
        assert_eq!(cert.completion.data(), &[0.5, 0.5, 0.5, 0.5]);
        cert.verify(TOL).unwrap();

        let bad = m(&[&[0.6, 0.6], &[0.0, 0.0]]);
        assert!(matches!(
            vonneumann_complete(&bad),
            Err(Error::NotDoublySubstochastic(MatrixClass::RowSubstochastic))
                | Err(Error::NotDoublySubstochastic(_))
        ));
    }

    #[test]
    fn zero_matrix_completion_uses_n_steps() {
        let cert = vonneumann_complete(&StochMatrix::zeros(4)).unwrap();
        assert_eq!(cert.steps, 4);
        assert_eq!(cert.completion.data(), StochMatrix::identity(4).data());
    }

    #[test]
    fn decomposition_examples() {
        let id = StochMatrix::identity(2);
        let cert = vonneumann_complete(&id).unwrap();
        let dec = decompose_increasable(&id, &cert).unwrap();
        assert!(dec.d2.data().iter().all(|&x| x == 0.0));

        let d = m(&[&[0.5, 0.0], &[0.0, 0.0]]);
        let cert = vonneumann_complete(&d).unwrap();
        let dec = decompose_increasable(&d, &cert).unwrap();
        assert_eq!(dec.d2.data(), &[0.5, 0.0, 0.0, 1.0]);
        assert!(dec.d2.class().is_doubly_substochastic());
        assert!(dec.reconstruction_error(&d) <= 1e-12);

        let r = shift_matrix(3, ShiftDirection::Right);
        let cert = vonneumann_complete(&r).unwrap();
        let dec = decompose_increasable(&r, &cert).unwrap();
        assert_eq!(dec.d2.row(0), cert.completion.row(0));

        assert_eq!(
            decompose_increasable(&id, &vonneumann_complete(&d).unwrap()),
            Err(Error::CertificateMismatch)
        );
    }

    #[test]
    fn composition_examples() {
        let d = m(&[&[0.2, 0.3], &[0.1, 0.4]]);
        assert_eq!(compose(&StochMatrix::identity(2), &d).unwrap().data(), d.data());
        let l = shift_matrix(3, ShiftDirection::Left);
        let r = shift_matrix(3, ShiftDirection::Right);
        let lr = compose(&l, &r).unwrap();
        assert_eq!(lr.data(), &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(compose(&l, &StochMatrix::identity(2)).is_err());
    }

    #[test]
    fn composed_certificates_verify() {
        let a = m(&[&[0.2, 0.3], &[0.1, 0.4]]);
        let b = m(&[&[0.0, 0.9], &[0.5, 0.1]]);
        let ca = vonneumann_complete(&a).unwrap();
        let cb = vonneumann_complete(&b).unwrap();
        compose_certificates(&ca, &cb).unwrap().verify(TOL).unwrap();
        convex_combine_certificates(0.3, &ca, &cb)
            .unwrap()
            .verify(TOL)
            .unwrap();
    }

    #[test]
    fn convex_combination_examples() {
        let a = m(&[&[0.2, 0.3], &[0.1, 0.4]]);
        let b = StochMatrix::identity(2);
        assert_eq!(convex_combine(1.0, &a, &b).unwrap().data(), a.data());
        let rev = StochMatrix::permutation(&[1, 0]);
        let mid = convex_combine(0.5, &b, &rev).unwrap();
        assert_eq!(mid.data(), &[0.5, 0.5, 0.5, 0.5]);
        assert_eq!(mid.class(), MatrixClass::DoublyStochastic);
        assert_eq!(convex_combine(1.5, &a, &b), Err(Error::InvalidMixing(1.5)));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            shift_matrix(2, ShiftDirection::Right).data(),
            &[0.0, 0.0, 1.0, 0.0]
        );
        assert_eq!(
            shift_matrix(2, ShiftDirection::Left).data(),
            &[0.0, 1.0, 0.0, 0.0]
        );
        assert_eq!(shift_matrix(1, ShiftDirection::Left).data(), &[0.0]);
        assert_eq!(shift_matrix(1, ShiftDirection::Right).data(), &[0.0]);
    }

    #[test]
    fn permutation_matrix_moves_entries() {
        let p = StochMatrix::permutation(&[2, 0, 1]);
        let f = NonNegVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(p.apply(&f).unwrap().values(), &[2.0, 3.0, 1.0]);
    }
}
