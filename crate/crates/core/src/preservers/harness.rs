//! Randomised preservation checks.
//!
//! Each trial samples `g ≥ 0`, a random doubly substochastic `D` (made
//! increasable by completion), sets `f = Dg`, and tests whether
//! `Tf ≺_w Tg` on the truncation. On truncations `≺_w` and `≺_s` agree,
//! so this is the finite shadow of `Tf ≺_s Tg`.

use super::operator::TruncatedOperator;
use super::spec::{build_preserver, PreserverSpec};
use crate::matrix::vonneumann_complete;
use crate::relations::check_weak_majorize;
use crate::sample::{random_doubly_substochastic, random_vector, trial_rng};
use crate::seq::NonNegVector;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub trial: usize,
    pub f: NonNegVector,
    pub g: NonNegVector,
    pub tf: NonNegVector,
    pub tg: NonNegVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PreservationReport {
    pub trials: usize,
    pub passed: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl PreservationReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.trials
    }
}

/// Runs `trials` random pairs of dimension `n` through the preserver
/// described by `spec`. `n` may not exceed the injections' domain; shorter
/// samples are zero-padded.
pub fn empirical_preservation_check(
    spec: &PreserverSpec,
    trials: usize,
    n: usize,
    seed: u64,
    tol: f64,
) -> Result<PreservationReport> {
    let cols = spec.domain_dim().max(n);
    if spec.domain_dim() != 0 && n > spec.domain_dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.domain_dim(),
            found: n,
        });
    }
    let op = build_preserver(spec, spec.row_bound(), cols)?;
    empirical_operator_check(&op, trials, n, seed, tol)
}

/// Same harness for an arbitrary truncated operator, e.g. one that is not a
/// preserver.
pub fn empirical_operator_check(
    op: &TruncatedOperator,
    trials: usize,
    n: usize,
    seed: u64,
    tol: f64,
) -> Result<PreservationReport> {
    if n == 0 || n > op.cols() {
        return Err(Error::DimensionMismatch {
            expected: op.cols(),
            found: n,
        });
    }
    let mut passed = 0;
    let mut first_counterexample = None;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let g = random_vector(&mut rng, n, 1.0);
        let d = random_doubly_substochastic(&mut rng, n, tol);
        let cert = vonneumann_complete(&d)?;
        cert.verify(tol)?;
        let f = d.apply(&g)?;
        let (f, g) = (f.padded(op.cols()), g.padded(op.cols()));
        let tf = op.apply(&f)?;
        let tg = op.apply(&g)?;
        if check_weak_majorize(&tf, &tg, tol).holds {
            passed += 1;
        } else if first_counterexample.is_none() {
            first_counterexample = Some(Counterexample {
                trial,
                f,
                g,
                tf,
                tg,
            });
        }
    }
    Ok(PreservationReport {
        trials,
        passed,
        first_counterexample,
    })
}
