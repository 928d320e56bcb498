//! Decision procedures for `≺`, `≺_w` and `≺_s` on truncated sequences.
//!
//! Inputs of different dimension are zero-padded to the larger one. Every
//! positive verdict carries a matrix witness `D` with `Dg ≈ f`:
//!
//! * majorization: a doubly stochastic product of T-transforms,
//! * weak majorization: a doubly substochastic row-scaling of the
//!   majorization witness for an intermediate `h` with `f ≤ h ≺ g`,
//! * submajorization: the weak witness plus a doubly stochastic completion.
//!
//! In finite dimension every doubly substochastic matrix is increasable, so
//! `≺_s` and `≺_w` coincide on truncations.

mod hlp;
mod oracle;
mod permutation;

use alloc::vec::Vec;

use crate::matrix::{vonneumann_complete, IncreasabilityCertificate, MatrixClass, StochMatrix};
use crate::seq::{decreasing_rearrangement, pad_pair, sorted_partial_sums, NonNegVector};
use crate::{Error, Result, EXACT_TOL};

pub use hlp::{hlp_witness, TTransform, TTransformChain};
pub use oracle::{oracle_majorize_bruteforce, OracleRelation};
pub use permutation::{permutation_between, Matching, PermutationMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `f ≺ g`
    Majorize,
    /// `f ≺_w g`
    Weak,
    /// `f ≺_s g`
    Sub,
}

impl RelationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::Majorize => "majorize",
            RelationKind::Weak => "weak",
            RelationKind::Sub => "sub",
        }
    }

    /// Class a witness for this relation must belong to.
    pub fn witness_class(self) -> MatrixClass {
        match self {
            RelationKind::Majorize => MatrixClass::DoublyStochastic,
            RelationKind::Weak | RelationKind::Sub => MatrixClass::DoublySubstochastic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// A sorted partial sum of `f` exceeds that of `g`.
    PrefixSum,
    /// Totals differ (majorization only).
    Total,
}

/// First place where the partial-sum test fails. `index` is 0-based and
/// refers to the partial sum over the `index + 1` largest entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub index: usize,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationVerdict {
    pub relation: RelationKind,
    pub holds: bool,
    pub witness: Option<StochMatrix>,
    pub certificate: Option<IncreasabilityCertificate>,
    pub violation: Option<Violation>,
}

impl RelationVerdict {
    fn failed(relation: RelationKind, violation: Violation) -> Self {
        Self {
            relation,
            holds: false,
            witness: None,
            certificate: None,
            violation: Some(violation),
        }
    }

    /// `‖witness · g - f‖∞`, if a witness is present.
    pub fn residual(&self, f: &NonNegVector, g: &NonNegVector) -> Option<f64> {
        let (f, g) = pad_pair(f, g);
        let w = self.witness.as_ref()?;
        let out = w.apply(&g).ok()?;
        Some(out.sup_distance(&f))
    }
}

pub(crate) fn first_violation(
    f: &NonNegVector,
    g: &NonNegVector,
    relation: RelationKind,
    tol: f64,
) -> Option<Violation> {
    let (f, g) = pad_pair(f, g);
    let sf = sorted_partial_sums(&f);
    let sg = sorted_partial_sums(&g);
    for (k, (&a, &b)) in sf.iter().zip(&sg).enumerate() {
        if a > b + tol {
            return Some(Violation {
                kind: ViolationKind::PrefixSum,
                index: k,
                lhs: a,
                rhs: b,
            });
        }
    }
    let last = sf.len() - 1;
    if relation == RelationKind::Majorize && (sf[last] - sg[last]).abs() > tol {
        return Some(Violation {
            kind: ViolationKind::Total,
            index: last,
            lhs: sf[last],
            rhs: sg[last],
        });
    }
    None
}

pub fn check_majorize(f: &NonNegVector, g: &NonNegVector, tol: f64) -> RelationVerdict {
    let relation = RelationKind::Majorize;
    if let Some(v) = first_violation(f, g, relation, tol) {
        return RelationVerdict::failed(relation, v);
    }
    RelationVerdict {
        relation,
        holds: true,
        witness: hlp_witness(f, g, tol).ok().map(|c| c.product),
        certificate: None,
        violation: None,
    }
}

pub fn check_weak_majorize(f: &NonNegVector, g: &NonNegVector, tol: f64) -> RelationVerdict {
    let relation = RelationKind::Weak;
    if let Some(v) = first_violation(f, g, relation, tol) {
        return RelationVerdict::failed(relation, v);
    }
    RelationVerdict {
        relation,
        holds: true,
        witness: weak_witness(f, g, tol).ok(),
        certificate: None,
        violation: None,
    }
}

/// Submajorization on truncations. The verdict matches
/// [`check_weak_majorize`]; on success the witness also carries its
/// increasability certificate.
pub fn check_submajorize(f: &NonNegVector, g: &NonNegVector, tol: f64) -> RelationVerdict {
    let weak = check_weak_majorize(f, g, tol);
    let certificate = weak
        .witness
        .as_ref()
        .and_then(|w| vonneumann_complete(w).ok());
    RelationVerdict {
        relation: RelationKind::Sub,
        certificate,
        ..weak
    }
}

pub fn check(
    relation: RelationKind,
    f: &NonNegVector,
    g: &NonNegVector,
    tol: f64,
) -> RelationVerdict {
    match relation {
        RelationKind::Majorize => check_majorize(f, g, tol),
        RelationKind::Weak => check_weak_majorize(f, g, tol),
        RelationKind::Sub => check_submajorize(f, g, tol),
    }
}

/// Returns `h` with `f ≤ h` entrywise and `h ≺ g`.
///
/// The deficit `Σg - Σf` is water-filled onto `f` in decreasing-rearrangement
/// order: the first coordinate not yet pinned by a tight prefix is raised by
/// the smallest remaining prefix headroom `G_k - H_k`. Each round tightens a
/// later prefix, so at most `n` rounds run, and the raised vector stays
/// non-increasing in the sorted frame.
pub fn intermediate_h(f: &NonNegVector, g: &NonNegVector, tol: f64) -> Result<NonNegVector> {
    let (f, g) = pad_pair(f, g);
    if let Some(v) = first_violation(&f, &g, RelationKind::Weak, tol) {
        return Err(Error::RelationFails {
            relation: "weak majorization",
            index: v.index,
        });
    }
    let n = f.dim();
    let rf = decreasing_rearrangement(&f);
    let mut hs = rf.sorted.values().to_vec();
    let mut gsum = Vec::with_capacity(n + 1);
    gsum.push(0.0);
    gsum.extend(sorted_partial_sums(&g));
    let eps = EXACT_TOL * g.max().max(1.0);

    loop {
        let hsum = prefix_sums_with_zero(&hs);
        let tight = (0..=n)
            .rev()
            .find(|&k| gsum[k] - hsum[k] <= eps)
            .unwrap_or(0);
        if tight >= n {
            break;
        }
        let headroom = (tight + 1..=n)
            .map(|k| gsum[k] - hsum[k])
            .fold(f64::INFINITY, f64::min)
            .max(0.0);
        hs[tight] += headroom;
    }

    let mut h = alloc::vec![0.0; n];
    for (k, &i) in rf.perm.iter().enumerate() {
        h[i] = hs[k];
    }
    NonNegVector::new(h)
}

fn prefix_sums_with_zero(v: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(v.len() + 1);
    let mut acc = 0.0;
    out.push(acc);
    for &x in v {
        acc += x;
        out.push(acc);
    }
    out
}

/// Doubly substochastic `D` with `Dg ≈ f`, built by scaling row `i` of the
/// majorization witness for `h = intermediate_h(f, g)` by `f(i) / h(i)`.
pub fn weak_witness(f: &NonNegVector, g: &NonNegVector, tol: f64) -> Result<StochMatrix> {
    let (f, g) = pad_pair(f, g);
    let h = intermediate_h(&f, &g, tol)?;
    let chain = hlp_witness(&h, &g, tol)?;
    let factors: Vec<f64> = f
        .values()
        .iter()
        .zip(h.values())
        .map(|(&fi, &hi)| if hi > 0.0 { (fi / hi).min(1.0) } else { 1.0 })
        .collect();
    if factors.iter().all(|&s| s == 1.0) {
        return Ok(chain.product);
    }
    chain.product.scale_rows(&factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::StochMatrix;

    const TOL: f64 = 1e-9;

    fn nv(v: &[f64]) -> NonNegVector {
        NonNegVector::new(v.to_vec()).unwrap()
    }

    fn assert_sound(v: &RelationVerdict, f: &NonNegVector, g: &NonNegVector) {
        assert!(v.holds);
        let w = v.witness.as_ref().expect("witness");
        assert!(w.class().implies(v.relation.witness_class()));
        assert!(v.residual(f, g).unwrap() <= TOL);
    }

    #[test]
    fn majorize_examples() {
        let (f, g) = (nv(&[1.0, 1.0]), nv(&[2.0, 0.0]));
        let v = check_majorize(&f, &g, TOL);
        assert_sound(&v, &f, &g);
        assert_eq!(v.witness.unwrap().data(), &[0.5, 0.5, 0.5, 0.5]);

        let f = nv(&[0.2, 0.7, 0.1]);
        let v = check_majorize(&f, &f, TOL);
        assert_eq!(v.witness.unwrap().data(), StochMatrix::identity(3).data());

        let v = check_majorize(&nv(&[0.3, 0.2]), &nv(&[1.0, 0.0]), TOL);
        assert!(!v.holds);
        let viol = v.violation.unwrap();
        assert_eq!(viol.kind, ViolationKind::Total);
        assert_eq!(viol.index, 1);
    }

    #[test]
    fn weak_examples() {
        let (f, g) = (nv(&[0.3, 0.2]), nv(&[1.0, 0.0]));
        assert_sound(&check_weak_majorize(&f, &g, TOL), &f, &g);

        let v = check_weak_majorize(&nv(&[2.0, 0.0]), &nv(&[1.0, 1.0]), TOL);
        assert!(!v.holds);
        assert_eq!(v.violation.unwrap().index, 0);

        let (f, g) = (nv(&[0.0, 0.0]), nv(&[0.4, 3.0]));
        let v = check_weak_majorize(&f, &g, TOL);
        assert_sound(&v, &f, &g);
        assert!(v.witness.unwrap().data().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn sub_examples() {
        let (f, g) = (nv(&[0.5, 0.5]), nv(&[2.0, 0.0]));
        let v = check_submajorize(&f, &g, TOL);
        assert_sound(&v, &f, &g);
        let cert = v.certificate.as_ref().unwrap();
        cert.verify(TOL).unwrap();
        assert_eq!(&cert.base, v.witness.as_ref().unwrap());

        let v = check_submajorize(&nv(&[1.0, 1.0]), &nv(&[1.0, 0.0]), TOL);
        assert!(!v.holds);
        assert_eq!(v.violation.unwrap().index, 1);
        assert!(v.certificate.is_none());

        let f = nv(&[0.1, 0.9]);
        let v = check_submajorize(&f, &f, TOL);
        let id = StochMatrix::identity(2);
        assert_eq!(v.witness.unwrap().data(), id.data());
        assert_eq!(v.certificate.unwrap().completion.data(), id.data());
    }

    #[test]
    fn intermediate_h_examples() {
        let h = intermediate_h(&nv(&[0.5, 0.5]), &nv(&[2.0, 0.0]), TOL).unwrap();
        assert_eq!(h.values(), &[1.5, 0.5]);

        let f = nv(&[1.0, 1.0]);
        let h = intermediate_h(&f, &nv(&[2.0, 0.0]), TOL).unwrap();
        assert_eq!(h, f);

        let h = intermediate_h(&nv(&[0.0, 0.0]), &nv(&[1.0, 1.0]), TOL).unwrap();
        assert_eq!(h.values(), &[1.0, 1.0]);

        assert!(intermediate_h(&nv(&[2.0]), &nv(&[1.0]), TOL).is_err());
    }

    #[test]
    fn intermediate_h_unsorted_input() {
        let f = nv(&[0.1, 0.4, 0.0, 0.2]);
        let g = nv(&[0.0, 3.0, 1.0, 0.5]);
        let h = intermediate_h(&f, &g, TOL).unwrap();
        assert!(f.le_entrywise(&h, 0.0));
        assert!(check_majorize(&h, &g, TOL).holds);
    }

    #[test]
    fn weak_witness_examples() {
        let (f, g) = (nv(&[0.5, 0.5]), nv(&[2.0, 0.0]));
        let d = weak_witness(&f, &g, TOL).unwrap();
        let expected = [0.25, 1.0 / 12.0, 0.25, 0.75];
        for (a, b) in d.data().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(d.apply(&g).unwrap().sup_distance(&f) < 1e-15);
        assert_eq!(d.class(), MatrixClass::DoublySubstochastic);

        let (f, g) = (nv(&[1.5, 0.5]), nv(&[2.0, 0.0]));
        let d = weak_witness(&f, &g, TOL).unwrap();
        assert_eq!(d, hlp_witness(&f, &g, TOL).unwrap().product);

        let d = weak_witness(&nv(&[0.0, 0.0]), &nv(&[2.0, 1.0]), TOL).unwrap();
        assert!(d.data().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn padding_makes_dims_agree() {
        let f = nv(&[0.4]);
        let g = nv(&[0.5, 0.5, 0.5]);
        let v = check_weak_majorize(&f, &g, TOL);
        assert!(v.holds);
        assert_eq!(v.witness.as_ref().unwrap().n(), 3);
        assert!(v.residual(&f, &g).unwrap() <= TOL);
    }
}
