use super::injection::{Injection, InjectionFamily};
use super::operator::TruncatedOperator;
use crate::matrix::{decompose_increasable, IncreasabilityCertificate, StochMatrix};
use crate::{Error, Result};

/// The operator `S` with `P_θ D = S P_θ` for every `θ` in the family,
/// truncated to `n × n`.
///
/// With `D₁ = D + D₂` from the certificate, `S` carries
/// `D₁[θ⁻¹i, θ⁻¹j] - D₂[θ⁻¹i, θ⁻¹j]` when `i` and `j` are images of the same
/// injection, `1 - a` on the diagonal outside all images, and zero
/// elsewhere. Values that round below zero are stored as zero.
pub fn construct_s(
    d: &StochMatrix,
    cert: &IncreasabilityCertificate,
    family: &InjectionFamily,
    a: f64,
    n: usize,
) -> Result<TruncatedOperator> {
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::InvalidMixing(a));
    }
    if !family.is_empty() && family.domain_dim() != d.n() {
        return Err(Error::DimensionMismatch {
            expected: d.n(),
            found: family.domain_dim(),
        });
    }
    if family.image_bound() > n {
        return Err(Error::OutsideTruncation {
            index: family.image_bound() - 1,
            size: n,
        });
    }
    let dec = decompose_increasable(d, cert)?;
    let mut s = TruncatedOperator::zeros(n, n)?;
    for theta in family.members() {
        for p in 0..d.n() {
            for q in 0..d.n() {
                let v = dec.d1.get(p, q) - dec.d2.get(p, q);
                s.set(theta.image(p), theta.image(q), v.max(0.0))?;
            }
        }
    }
    let owners = family.owners();
    for i in (0..n).filter(|i| !owners.contains_key(i)) {
        s.set(i, i, 1.0 - a)?;
    }
    Ok(s)
}

/// `max |(P_θ D)[i][j] - (S P_θ)[i][j]|` over the `n × m` truncation, where
/// `n = S.rows()` and `m = D.n()`.
pub fn intertwining_residual(d: &StochMatrix, s: &TruncatedOperator, theta: &Injection) -> f64 {
    let m = d.n();
    let n = s.rows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let pre = theta.preimage(i);
        for j in 0..m {
            let lhs = pre.map_or(0.0, |p| d.get(p, j));
            let col = theta.image(j);
            let rhs = if col < s.cols() { s.get(i, col) } else { 0.0 };
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::vonneumann_complete;
    use std::vec;

    const TOL: f64 = 1e-9;

    #[test]
    fn identity_family_reproduces_d() {
        let d = StochMatrix::from_rows(&[vec![0.2, 0.3], vec![0.1, 0.4]], TOL).unwrap();
        let cert = vonneumann_complete(&d).unwrap();
        let fam = InjectionFamily::new(vec![Injection::identity(2)]).unwrap();
        let s = construct_s(&d, &cert, &fam, 0.3, 2).unwrap();
        let expect = TruncatedOperator::from_matrix(&d);
        assert!(s.sup_distance(&expect) <= 1e-15);
        assert!(intertwining_residual(&d, &s, &fam.members()[0]) <= 1e-12);
    }

    #[test]
    fn shifted_block_with_half_diagonal() {
        let d = StochMatrix::from_rows(&[vec![0.25, 0.75], vec![0.75, 0.25]], TOL).unwrap();
        let cert = vonneumann_complete(&d).unwrap();
        let fam = InjectionFamily::new(vec![Injection::shift(2, 2)]).unwrap();
        let s = construct_s(&d, &cert, &fam, 0.5, 4).unwrap();
        assert_eq!(
            s.to_dense(),
            vec![
                vec![0.5, 0.0, 0.0, 0.0],
                vec![0.0, 0.5, 0.0, 0.0],
                vec![0.0, 0.0, 0.25, 0.75],
                vec![0.0, 0.0, 0.75, 0.25],
            ]
        );
        assert!(intertwining_residual(&d, &s, &fam.members()[0]) <= 1e-12);
    }

    #[test]
    fn equal_norms_give_unit_diagonal() {
        // a = 1 - ‖f‖/‖g‖ = 0 when the norms agree
        let d = StochMatrix::from_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]], TOL).unwrap();
        let cert = vonneumann_complete(&d).unwrap();
        let fam = InjectionFamily::new(vec![Injection::new(vec![1, 3]).unwrap()]).unwrap();
        let s = construct_s(&d, &cert, &fam, 0.0, 5).unwrap();
        for i in [0, 2, 4] {
            assert_eq!(s.get(i, i), 1.0);
        }
        assert!(intertwining_residual(&d, &s, &fam.members()[0]) <= 1e-12);
    }

    #[test]
    fn rejects_bad_parameters() {
        let d = StochMatrix::identity(2);
        let cert = vonneumann_complete(&d).unwrap();
        let fam = InjectionFamily::new(vec![Injection::shift(2, 3)]).unwrap();
        assert_eq!(
            construct_s(&d, &cert, &fam, 1.5, 10),
            Err(Error::InvalidMixing(1.5))
        );
        assert!(matches!(
            construct_s(&d, &cert, &fam, 0.5, 4),
            Err(Error::OutsideTruncation { index: 4, size: 4 })
        ));
    }
}
