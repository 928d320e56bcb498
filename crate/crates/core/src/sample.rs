//! Seeded random instances for property checks and the preservation
//! harness.
//!
//! All randomness derives from one master seed. Trial `k` uses
//! [`trial_rng`]`(seed, k)`, so serial and parallel drivers see the same
//! instances.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{classify_matrix, StochMatrix};
use crate::preservers::{Injection, InjectionFamily, PreserverSpec, Space};
use crate::seq::NonNegVector;

/// SplitMix64 finaliser, used to derive per-trial seeds.
pub fn split_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split_seed(seed, trial))
}

/// Entries uniform in `[0, scale)`; roughly a quarter are zeroed to exercise
/// supports and ties.
pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize, scale: f64) -> NonNegVector {
    let values = (0..dim)
        .map(|_| {
            if rng.random_bool(0.25) {
                0.0
            } else {
                rng.random::<f64>() * scale
            }
        })
        .collect();
    NonNegVector::new(values).expect("finite nonnegative samples")
}

/// Strictly positive entries uniform in `(0, scale)`.
pub fn random_positive_vector<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    scale: f64,
) -> NonNegVector {
    let values = (0..dim)
        .map(|_| (rng.random::<f64>() * 0.999 + 0.001) * scale)
        .collect();
    NonNegVector::new(values).expect("finite positive samples")
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Convex combination of a few random permutation matrices.
pub fn random_doubly_stochastic<R: Rng + ?Sized>(rng: &mut R, n: usize, tol: f64) -> StochMatrix {
    let terms = 1 + rng.random_range(0..4usize);
    let weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 0.05).collect();
    let total: f64 = weights.iter().sum();
    let mut data = vec![0.0; n * n];
    for w in weights {
        let perm = random_permutation(rng, n);
        for (j, &i) in perm.iter().enumerate() {
            data[i * n + j] += w / total;
        }
    }
    classify_matrix(n, data, tol).expect("valid entries")
}

/// Random doubly substochastic matrix: a sparse random nonnegative matrix
/// scaled so that its largest row or column sum is a random value in
/// `(0, 1]`.
pub fn random_doubly_substochastic<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    tol: f64,
) -> StochMatrix {
    let density = 0.2 + 0.8 * rng.random::<f64>();
    let mut data: Vec<f64> = (0..n * n)
        .map(|_| {
            if rng.random_bool(density) {
                rng.random::<f64>()
            } else {
                0.0
            }
        })
        .collect();
    let mut max_sum: f64 = 0.0;
    for i in 0..n {
        let r: f64 = data[i * n..(i + 1) * n].iter().sum();
        let c: f64 = (0..n).map(|k| data[k * n + i]).sum();
        max_sum = max_sum.max(r).max(c);
    }
    let target = if rng.random_bool(0.2) {
        1.0
    } else {
        rng.random::<f64>() * 0.999 + 0.001
    };
    if max_sum > 0.0 {
        let s = target / max_sum;
        for v in data.iter_mut() {
            *v *= s;
        }
    }
    classify_matrix(n, data, tol).expect("valid entries")
}

/// `members` injections on `{0..domain}` with disjoint images scattered
/// over `members * domain + spare` slots.
pub fn random_family<R: Rng + ?Sized>(
    rng: &mut R,
    members: usize,
    domain: usize,
    spare: usize,
) -> InjectionFamily {
    let slots = random_permutation(rng, members * domain + spare);
    let injections = slots
        .chunks(domain.max(1))
        .take(members)
        .map(|c| Injection::new(c.to_vec()).expect("distinct slots"))
        .collect();
    InjectionFamily::new(injections).expect("disjoint chunks")
}

/// A valid preserver spec on `{0..domain}` with one to four injections and
/// weights in `[0.05, 1)`. In `ℓ¹` mode about half the specs also carry a
/// constant-row term on slots left free by the injections.
pub fn random_preserver_spec<R: Rng + ?Sized>(
    rng: &mut R,
    domain: usize,
    space: Space,
) -> PreserverSpec {
    let members = 1 + rng.random_range(0..4usize);
    let spare = rng.random_range(0..=domain);
    let family = random_family(rng, members, domain, spare);
    let weights = (0..members).map(|_| 0.05 + 0.95 * rng.random::<f64>()).collect();
    let (p, h) = match space {
        Space::Lp => (1.0 + 3.0 * rng.random::<f64>() + 1e-3, None),
        Space::L1 if rng.random_bool(0.5) => {
            let owners = family.owners();
            let dim = members * domain + spare;
            let h = (0..dim)
                .map(|i| {
                    if !owners.contains_key(&i) && rng.random_bool(0.5) {
                        0.05 + 0.95 * rng.random::<f64>()
                    } else {
                        0.0
                    }
                })
                .collect();
            (1.0, Some(NonNegVector::new(h).expect("nonnegative samples")))
        }
        Space::L1 => (1.0, None),
    };
    PreserverSpec::new(p, weights, family, h).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::MatrixClass;

    #[test]
    fn random_specs_are_valid() {
        let mut rng = trial_rng(2, 0);
        for domain in 1..10 {
            for space in [Space::Lp, Space::L1] {
                let spec = random_preserver_spec(&mut rng, domain, space);
                assert_eq!(spec.space(), space);
                assert_eq!(spec.domain_dim(), domain);
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_vector(&mut trial_rng(7, 3), 5, 1.0);
        let b = random_vector(&mut trial_rng(7, 3), 5, 1.0);
        assert_eq!(a, b);
        assert_ne!(split_seed(7, 3), split_seed(7, 4));
    }

    #[test]
    fn sampled_matrices_have_requested_class() {
        let mut rng = trial_rng(1, 0);
        for n in 1..12 {
            let d = random_doubly_stochastic(&mut rng, n, 1e-9);
            assert_eq!(d.class(), MatrixClass::DoublyStochastic);
            let s = random_doubly_substochastic(&mut rng, n, 1e-9);
            assert!(s.class().is_doubly_substochastic());
        }
    }
}
