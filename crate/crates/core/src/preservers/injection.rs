use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::seq::NonNegVector;
use crate::{Error, Result};

/// A one-to-one map `θ` from `{0..domain_dim}` into the natural numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Injection {
    map: Vec<usize>,
}

impl Injection {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        if map.is_empty() {
            return Err(Error::InvalidParameter("injection needs a nonempty domain"));
        }
        let mut seen = BTreeMap::new();
        for (j, &image) in map.iter().enumerate() {
            if let Some(first) = seen.insert(image, j) {
                return Err(Error::NotInjective { first, second: j });
            }
        }
        Ok(Self { map })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            map: (0..dim).collect(),
        }
    }

    /// `θ(j) = j + offset`.
    pub fn shift(dim: usize, offset: usize) -> Self {
        Self {
            map: (0..dim).map(|j| j + offset).collect(),
        }
    }

    pub fn domain_dim(&self) -> usize {
        self.map.len()
    }

    pub fn image(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.map
    }

    /// One past the largest image index.
    pub fn image_bound(&self) -> usize {
        self.map.iter().max().map_or(0, |m| m + 1)
    }

    /// Preimage of `i`, if any.
    pub fn preimage(&self, i: usize) -> Option<usize> {
        self.map.iter().position(|&x| x == i)
    }
}

/// `P_θ f = Σ f(k) e_θ(k)`; the output has dimension `max θ + 1`.
pub fn apply_injection_operator(theta: &Injection, f: &NonNegVector) -> Result<NonNegVector> {
    if f.dim() != theta.domain_dim() {
        return Err(Error::DimensionMismatch {
            expected: theta.domain_dim(),
            found: f.dim(),
        });
    }
    let mut out = vec![0.0; theta.image_bound()];
    for (k, &i) in theta.map.iter().enumerate() {
        out[i] = f[k];
    }
    NonNegVector::new(out)
}

/// Why a list of injections is not a valid family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyViolation {
    DomainMismatch {
        member: usize,
        expected: usize,
        found: usize,
    },
    /// `θ_member(index) = θ_other_member(other_index)`.
    Collision {
        member: usize,
        index: usize,
        other_member: usize,
        other_index: usize,
        image: usize,
    },
}

/// Accepts iff all members share a domain and their images are pairwise
/// disjoint. Reports the first collision in member-then-index order.
pub fn validate_family(members: &[Injection]) -> core::result::Result<(), FamilyViolation> {
    let Some(first) = members.first() else {
        return Ok(());
    };
    let mut owner: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for (k, theta) in members.iter().enumerate() {
        if theta.domain_dim() != first.domain_dim() {
            return Err(FamilyViolation::DomainMismatch {
                member: k,
                expected: first.domain_dim(),
                found: theta.domain_dim(),
            });
        }
        for (j, &image) in theta.map.iter().enumerate() {
            if let Some(&(k0, j0)) = owner.get(&image) {
                return Err(FamilyViolation::Collision {
                    member: k0,
                    index: j0,
                    other_member: k,
                    other_index: j,
                    image,
                });
            }
            owner.insert(image, (k, j));
        }
    }
    Ok(())
}

/// Injections over a common domain with pairwise disjoint images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectionFamily {
    members: Vec<Injection>,
}

impl InjectionFamily {
    pub fn new(members: Vec<Injection>) -> Result<Self> {
        validate_family(&members).map_err(Error::InvalidFamily)?;
        Ok(Self { members })
    }

    pub fn members(&self) -> &[Injection] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Common domain dimension (zero for the empty family).
    pub fn domain_dim(&self) -> usize {
        self.members.first().map_or(0, Injection::domain_dim)
    }

    pub fn image_bound(&self) -> usize {
        self.members.iter().map(Injection::image_bound).max().unwrap_or(0)
    }

    /// Map from image index to `(member, preimage)`.
    pub fn owners(&self) -> BTreeMap<usize, (usize, usize)> {
        let mut owner = BTreeMap::new();
        for (k, theta) in self.members.iter().enumerate() {
            for (j, &i) in theta.map.iter().enumerate() {
                owner.insert(i, (k, j));
            }
        }
        owner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demos::theta_quadratic;
    use crate::seq::p_norm;

    fn nv(v: &[f64]) -> NonNegVector {
        NonNegVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let f = nv(&[1.0, 2.0, 3.0]);
        assert_eq!(apply_injection_operator(&Injection::identity(3), &f).unwrap(), f);
        assert_eq!(
            apply_injection_operator(&Injection::shift(3, 1), &f)
                .unwrap()
                .values(),
            &[0.0, 1.0, 2.0, 3.0]
        );
        let theta1 = Injection::new(
            (1..=3).map(|j| theta_quadratic(1, j) as usize - 1).collect(),
        )
        .unwrap();
        let out = apply_injection_operator(&theta1, &f).unwrap();
        // f(1) at index 2, f(2) at index 3, f(3) at index 5 (1-based)
        assert_eq!(out.values(), &[0.0, 1.0, 2.0, 0.0, 3.0]);
        for p in [1.0, 1.5, 2.0, 3.0] {
            assert_eq!(p_norm(&out, p).unwrap(), p_norm(&f, p).unwrap());
        }
        assert!(apply_injection_operator(&theta1, &nv(&[1.0])).is_err());
    }

    #[test]
    fn injection_rejects_repeats() {
        assert_eq!(
            Injection::new(vec![3, 1, 3]),
            Err(Error::NotInjective { first: 0, second: 2 })
        );
    }

    #[test]
    fn family_validation() {
        let quad = |i: u64| {
            Injection::new((1..=4).map(|j| theta_quadratic(i, j) as usize - 1).collect()).unwrap()
        };
        let fam = [quad(1), quad(2)];
        assert_eq!(fam[0].images(), &[1, 2, 4, 7]);
        assert_eq!(fam[1].images(), &[3, 5, 8, 12]);
        assert_eq!(validate_family(&fam), Ok(()));

        let id = Injection::identity(3);
        assert_eq!(
            validate_family(&[id.clone(), id.clone()]),
            Err(FamilyViolation::Collision {
                member: 0,
                index: 0,
                other_member: 1,
                other_index: 0,
                image: 0
            })
        );
        assert_eq!(validate_family(&[Injection::shift(5, 2)]), Ok(()));
        assert!(matches!(
            validate_family(&[id, Injection::shift(2, 10)]),
            Err(FamilyViolation::DomainMismatch { member: 1, .. })
        ));
    }
}
