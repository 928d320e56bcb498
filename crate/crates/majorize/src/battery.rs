//! The acceptance battery run by `selftest` and by the `acceptance` test
//! target. Case counts and thresholds are fixed; tolerances come from the
//! [`Config`], whose defaults are `1e-9` (class) and `1e-12` (exact).

use std::fmt;
use std::time::{Duration, Instant};

use majorize_core::demos::{
    h_support_index, shift_forcing, theta_family_check, PaperMatrix, ThetaKind,
};
use majorize_core::matrix::{
    compose, compose_certificates, convex_combine_certificates, decompose_increasable,
    shift_matrix, vonneumann_complete,
};
use majorize_core::preservers::{
    build_preserver, classify_preserver_l1, classify_preserver_lp, construct_s,
    empirical_preservation_check, intertwining_residual, Space, TruncatedOperator,
};
use majorize_core::relations::{
    check_majorize, check_submajorize, check_weak_majorize, hlp_witness,
    oracle_majorize_bruteforce, permutation_between, OracleRelation, PermutationMode,
};
use majorize_core::sample::{
    random_doubly_stochastic, random_doubly_substochastic, random_family, random_permutation,
    random_preserver_spec, random_vector, split_seed, trial_rng,
};
use majorize_core::{NonNegVector, RelationKind, RelationVerdict, ShiftDirection, StochMatrix};
use rand::Rng;

use crate::config::Config;
use crate::fixtures::golden_check;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:02} {:<24} {:>5} cases  {:>8.3}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub type Criterion = fn(&Config) -> Outcome;

/// All criteria in order.
pub const CRITERIA: [(u8, &str, Criterion); 13] = [
    (1, "completion", completion),
    (2, "oracle-agreement", oracle_agreement),
    (3, "witness-soundness", witness_soundness),
    (4, "finite-collapse", finite_collapse),
    (5, "antisymmetry", antisymmetry),
    (6, "closure", closure),
    (7, "decomposition", decomposition),
    (8, "intertwining", intertwining),
    (9, "preserver-golden", preserver_golden),
    (10, "preserver-round-trip", preserver_round_trip),
    (11, "empirical-preservation", empirical_preservation),
    (12, "shift-forcing", shift_forcing_criterion),
    (13, "theta-families", theta_families),
];

pub fn run_battery(cfg: &Config) -> Vec<Outcome> {
    CRITERIA.iter().map(|(_, _, c)| c(cfg)).collect()
}

/// Collects failures while counting cases.
struct Tally {
    id: u8,
    name: &'static str,
    start: Instant,
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Tally {
    fn new(id: u8, name: &'static str) -> Self {
        Self {
            id,
            name,
            start: Instant::now(),
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn finish(self, summary: String) -> Outcome {
        let passed = self.failures == 0 && self.cases > 0;
        let detail = match self.first {
            None => summary,
            Some(first) => format!("{} failing; first: {first}", self.failures),
        };
        Outcome {
            id: self.id,
            name: self.name,
            passed,
            cases: self.cases,
            detail,
            elapsed: self.start.elapsed(),
        }
    }
}

fn rng(cfg: &Config, id: u8, trial: usize) -> impl Rng {
    trial_rng(split_seed(cfg.seed, u64::from(id)), trial as u64)
}

fn fmt_vec(v: &NonNegVector) -> String {
    format!("{:?}", v.values())
}

/// Witness present, of the relation's class, with `‖Dg - f‖∞ ≤ tol`.
fn witness_ok(v: &RelationVerdict, f: &NonNegVector, g: &NonNegVector, tol: f64) -> bool {
    match &v.witness {
        Some(w) => {
            w.class().implies(v.relation.witness_class())
                && v.residual(f, g).is_some_and(|r| r <= tol)
        }
        None => false,
    }
}

pub fn completion(cfg: &Config) -> Outcome {
    let mut t = Tally::new(1, "completion");
    let mut max_steps_ratio: f64 = 0.0;
    for trial in 0..1000 {
        let mut r = rng(cfg, 1, trial);
        let n = r.random_range(1..=30);
        let d = random_doubly_substochastic(&mut r, n, cfg.tol_class);
        let ok = match vonneumann_complete(&d) {
            Ok(c) => {
                max_steps_ratio = max_steps_ratio.max(c.steps as f64 / (2 * n - 1) as f64);
                c.completion.stochastic_defect() <= cfg.tol_class
                    && c.completion.dominates(&d, 0.0)
                    && c.steps < 2 * n
            }
            Err(_) => false,
        };
        t.case(ok, || format!("trial {trial}, n = {n}"));
    }
    t.finish(format!(
        "doubly stochastic, dominating, steps <= 2n-1 (max ratio {max_steps_ratio:.2})"
    ))
}

/// Fifty hand-picked pairs at dim <= 5: ties, zeros, equal totals, padding,
/// permutations and near-boundary perturbations.
pub fn adversarial_corpus() -> Vec<(NonNegVector, NonNegVector)> {
    let v = |x: &[f64]| NonNegVector::new(x.to_vec()).expect("corpus entries are valid");
    let mut c = vec![
        (v(&[1.0, 2.0, 3.0]), v(&[1.0, 2.0, 3.0])),
        (v(&[1.0, 1.0]), v(&[2.0, 0.0])),
        (v(&[2.0, 0.0]), v(&[1.0, 1.0])),
        (v(&[0.3, 0.2]), v(&[1.0, 0.0])),
        (v(&[2.0, 0.5]), v(&[2.0, 0.0])),
        (v(&[0.0, 0.0]), v(&[0.0, 0.0])),
        (v(&[0.0, 0.0, 0.0]), v(&[1.0, 2.0, 3.0])),
        (v(&[1.0, 2.0, 3.0]), v(&[0.0, 0.0, 0.0])),
        (v(&[1.0; 5]), v(&[5.0, 0.0, 0.0, 0.0, 0.0])),
        (v(&[5.0, 0.0, 0.0, 0.0, 0.0]), v(&[1.0; 5])),
        (v(&[3.0, 1.0, 2.0]), v(&[1.0, 2.0, 3.0])),
        (v(&[1.0, 1.0, 1.0]), v(&[1.5, 1.5, 0.0])),
        (v(&[2.0, 2.0, 0.0]), v(&[3.0, 1.0, 0.0])),
        (v(&[2.0, 2.0, 0.0]), v(&[3.0, 0.0, 1.0])),
        (v(&[1.0 + 1e-6, 1.0 - 1e-6]), v(&[1.0, 1.0])),
        (v(&[1.0 - 1e-6, 1.0 - 1e-6]), v(&[1.0, 1.0])),
        (v(&[1.0]), v(&[0.5, 0.5])),
        (v(&[0.5]), v(&[1.0, 0.0, 0.0])),
        (v(&[1.0, 0.0, 0.0, 0.0, 0.0]), v(&[1.0])),
        (v(&[0.25; 4]), v(&[0.5, 0.5, 0.0, 0.0])),
        (v(&[0.5, 0.5, 0.0, 0.0]), v(&[0.25; 4])),
        (v(&[3.0, 3.0, 3.0]), v(&[9.0, 0.0, 0.0])),
        (v(&[4.0, 3.0, 2.0, 1.0, 0.0]), v(&[4.0, 3.0, 2.0, 1.0, 0.0])),
        (v(&[4.0, 3.0, 2.0, 1.0, 0.0]), v(&[5.0, 3.0, 2.0, 0.0, 0.0])),
        (v(&[5.0, 3.0, 2.0, 0.0, 0.0]), v(&[4.0, 3.0, 2.0, 1.0, 0.0])),
        (v(&[1e-12, 0.0]), v(&[0.0, 0.0])),
        (v(&[2e-9, 0.0]), v(&[0.0, 0.0])),
        (v(&[0.6, 0.6]), v(&[1.0, 0.5])),
        (v(&[1.0, 0.5]), v(&[0.6, 0.6])),
        (v(&[1.0 / 3.0; 3]), v(&[1.0, 0.0, 0.0])),
        (v(&[0.1, 0.2, 0.3]), v(&[0.6, 0.0, 0.0])),
        (v(&[1.0, 2.0, 3.0, 4.0, 5.0]), v(&[5.0, 4.0, 3.0, 2.0, 1.0])),
        (v(&[1.0, 2.0, 3.0, 4.0, 5.0]), v(&[15.0, 0.0, 0.0, 0.0, 0.0])),
        (v(&[3.0; 5]), v(&[1.0, 2.0, 3.0, 4.0, 5.0])),
        (v(&[1.0, 2.0, 3.0, 4.0, 5.0]), v(&[3.0; 5])),
        (v(&[0.0, 0.0, 0.0, 0.0, 1.0]), v(&[0.0; 5])),
        (v(&[0.0; 5]), v(&[0.0, 0.0, 0.0, 0.0, 1.0])),
    ];
    let g = [5.0, 4.0, 3.0, 2.0, 1.0];
    // one T-transform on the first and last coordinates
    for k in 1..=6 {
        let s = f64::from(k) / 12.0;
        let mut f = g;
        f[0] = (1.0 - s) * g[0] + s * g[4];
        f[4] = s * g[0] + (1.0 - s) * g[4];
        c.push((v(&f), v(&g)));
    }
    for k in 0..5 {
        let mut f = g;
        f[k] += 0.5;
        c.push((v(&f), v(&g)));
    }
    c.push((v(&g.map(|x| x * 0.5)), v(&g)));
    c.push((v(&g.map(|x| x * 1.5)), v(&g)));
    c
}

pub fn oracle_agreement(cfg: &Config) -> Outcome {
    let mut t = Tally::new(2, "oracle-agreement");
    let tol = cfg.tol_class;
    let compare = |t: &mut Tally, label: String, f: &NonNegVector, g: &NonNegVector| {
        let strong = oracle_majorize_bruteforce(f, g, OracleRelation::Strong, tol);
        let weak = oracle_majorize_bruteforce(f, g, OracleRelation::Weak, tol);
        let ok = strong.as_ref().ok() == Some(&check_majorize(f, g, tol).holds)
            && weak.as_ref().ok() == Some(&check_weak_majorize(f, g, tol).holds);
        t.case(ok, || format!("{label}: f = {}, g = {}", fmt_vec(f), fmt_vec(g)));
    };
    for trial in 0..500 {
        let mut r = rng(cfg, 2, trial);
        let n = r.random_range(1..=5);
        let (f, g) = match trial % 4 {
            0 => {
                let mut ints = || {
                    NonNegVector::new((0..n).map(|_| f64::from(r.random_range(0..4u8))).collect())
                        .expect("small integers")
                };
                (ints(), ints())
            }
            1 => {
                let g = random_vector(&mut r, n, 1.0);
                let d = random_doubly_stochastic(&mut r, n, tol);
                (d.apply(&g).expect("square"), g)
            }
            2 => {
                let g = random_vector(&mut r, n, 1.0);
                let d = random_doubly_substochastic(&mut r, n, tol);
                (d.apply(&g).expect("square"), g)
            }
            _ => (random_vector(&mut r, n, 1.0), random_vector(&mut r, n, 1.5)),
        };
        compare(&mut t, format!("random pair {trial}"), &f, &g);
    }
    for (k, (f, g)) in adversarial_corpus().iter().enumerate() {
        compare(&mut t, format!("corpus case {}", k + 1), f, g);
    }
    t.finish("500 random + 50 corpus pairs agree with the hull oracle".into())
}

pub fn witness_soundness(cfg: &Config) -> Outcome {
    let mut t = Tally::new(3, "witness-soundness");
    let tol = cfg.tol_class;
    let mut longest = 0;
    for trial in 0..500 {
        let mut r = rng(cfg, 3, trial);
        let n = r.random_range(1..=40);
        let g = random_vector(&mut r, n, 1.0);
        let ds = random_doubly_stochastic(&mut r, n, tol);
        let f = ds.apply(&g).expect("square");
        let v = check_majorize(&f, &g, tol);
        let chain_ok = match hlp_witness(&f, &g, tol) {
            Ok(chain) => {
                longest = longest.max(chain.steps.len());
                chain.steps.len() < n.max(1)
            }
            Err(_) => false,
        };
        t.case(v.holds && witness_ok(&v, &f, &g, tol) && chain_ok, || {
            format!("majorize trial {trial}, n = {n}")
        });

        let dss = random_doubly_substochastic(&mut r, n, tol);
        let fw = dss.apply(&g).expect("square");
        for relation in [RelationKind::Weak, RelationKind::Sub] {
            let v = majorize_core::relations::check(relation, &fw, &g, tol);
            t.case(v.holds && witness_ok(&v, &fw, &g, tol), || {
                format!("{} trial {trial}, n = {n}", relation.as_str())
            });
        }
    }
    t.finish(format!("residuals <= tol, classes match, longest chain {longest}"))
}

pub fn finite_collapse(cfg: &Config) -> Outcome {
    let mut t = Tally::new(4, "finite-collapse");
    let tol = cfg.tol_class;
    let mut held = 0;
    for trial in 0..1000 {
        let mut r = rng(cfg, 4, trial);
        let n = r.random_range(1..=30);
        let g = random_vector(&mut r, n, 1.0);
        let f = if trial % 2 == 0 {
            random_doubly_substochastic(&mut r, n, tol).apply(&g).expect("square")
        } else {
            random_vector(&mut r, n, 1.0)
        };
        let weak = check_weak_majorize(&f, &g, tol);
        let sub = check_submajorize(&f, &g, tol);
        let cert_ok = !sub.holds
            || sub
                .certificate
                .as_ref()
                .is_some_and(|c| c.verify(tol).is_ok());
        held += usize::from(sub.holds);
        t.case(weak.holds == sub.holds && cert_ok, || {
            format!("trial {trial}, n = {n}")
        });
    }
    t.finish(format!("sub <=> weak; {held} holding pairs certified"))
}

pub fn antisymmetry(cfg: &Config) -> Outcome {
    let mut t = Tally::new(5, "antisymmetry");
    let tol = cfg.tol_class;
    for trial in 0..200 {
        let mut r = rng(cfg, 5, trial);
        let n = r.random_range(1..=20);
        let f = random_vector(&mut r, n, 1.0);
        let perm = random_permutation(&mut r, n);
        let g = StochMatrix::permutation(&perm).apply(&f).expect("square");
        let mutual = check_submajorize(&f, &g, tol).holds && check_submajorize(&g, &f, tol).holds;
        let recovered = permutation_between(&f, &g, PermutationMode::Strict)
            .and_then(|m| m.as_permutation())
            .is_some_and(|p| StochMatrix::permutation(&p).apply(&f).ok() == Some(g.clone()));
        t.case(mutual && recovered, || format!("equivalent trial {trial}, n = {n}"));
    }
    for trial in 200..400 {
        let mut r = rng(cfg, 5, trial);
        let n = r.random_range(1..=20);
        let f = random_vector(&mut r, n, 1.0);
        // a permuted copy or an independent vector, then one entry raised
        let mut g = if trial % 2 == 0 {
            let perm = random_permutation(&mut r, n);
            StochMatrix::permutation(&perm).apply(&f).expect("square").into_values()
        } else {
            random_vector(&mut r, n, 1.0).into_values()
        };
        let k = r.random_range(0..n);
        g[k] += 1e-3 + r.random::<f64>();
        let g = NonNegVector::new(g).expect("nonnegative");
        let both = check_weak_majorize(&f, &g, tol).holds && check_weak_majorize(&g, &f, tol).holds;
        let claimed = permutation_between(&f, &g, PermutationMode::Strict).is_some();
        t.case(!both && !claimed, || format!("inequivalent trial {trial}, n = {n}"));
    }
    t.finish("permutations recovered; none claimed for inequivalent pairs".into())
}

pub fn closure(cfg: &Config) -> Outcome {
    let mut t = Tally::new(6, "closure");
    let tol = cfg.tol_class;
    for trial in 0..200 {
        let mut r = rng(cfg, 6, trial);
        let n = r.random_range(1..=20);
        let a = random_doubly_substochastic(&mut r, n, tol);
        let b = random_doubly_substochastic(&mut r, n, tol);
        let s = r.random::<f64>();
        let ok = (|| {
            let ca = vonneumann_complete(&a).ok()?;
            let cb = vonneumann_complete(&b).ok()?;
            let prod = compose_certificates(&ca, &cb).ok()?;
            let mix = convex_combine_certificates(s, &ca, &cb).ok()?;
            Some(
                prod.verify(tol).is_ok()
                    && prod.base == compose(&a, &b).ok()?
                    && prod.base.class().is_doubly_substochastic()
                    && mix.verify(tol).is_ok()
                    && mix.base.class().is_doubly_substochastic(),
            )
        })()
        .unwrap_or(false);
        t.case(ok, || format!("trial {trial}, n = {n}, t = {s}"));
    }
    t.finish("products and convex combinations keep valid certificates".into())
}

pub fn decomposition(cfg: &Config) -> Outcome {
    let mut t = Tally::new(7, "decomposition");
    let mut worst: f64 = 0.0;
    for trial in 0..200 {
        let mut r = rng(cfg, 7, trial);
        let n = r.random_range(1..=30);
        let d = random_doubly_substochastic(&mut r, n, cfg.tol_class);
        let ok = vonneumann_complete(&d)
            .and_then(|c| decompose_increasable(&d, &c))
            .is_ok_and(|dec| {
                let e = dec.reconstruction_error(&d);
                worst = worst.max(e);
                e <= cfg.tol_exact
            });
        t.case(ok, || format!("trial {trial}, n = {n}"));
    }
    t.finish(format!("max |D1 - D2 - D| = {worst:.1e}"))
}

pub fn intertwining(cfg: &Config) -> Outcome {
    let mut t = Tally::new(8, "intertwining");
    let mut worst: f64 = 0.0;
    for trial in 0..100 {
        let mut r = rng(cfg, 8, trial);
        let domain = r.random_range(1..=8);
        let members = r.random_range(1..=4);
        let spare = r.random_range(0..=domain);
        let family = random_family(&mut r, members, domain, spare);
        let d = random_doubly_substochastic(&mut r, domain, cfg.tol_class);
        let a = r.random::<f64>();
        let n = r.random_range(family.image_bound()..=60);
        let ok = vonneumann_complete(&d)
            .and_then(|c| construct_s(&d, &c, &family, a, n))
            .is_ok_and(|s| {
                family.members().iter().all(|theta| {
                    let res = intertwining_residual(&d, &s, theta);
                    worst = worst.max(res);
                    res <= cfg.tol_exact
                })
            });
        t.case(ok, || format!("trial {trial}, n = {n}, {members} injections"));
    }
    t.finish(format!("max |P D - S P| = {worst:.1e}"))
}

pub fn preserver_golden(_cfg: &Config) -> Outcome {
    let mut t = Tally::new(9, "preserver-golden");
    for which in [PaperMatrix::T1, PaperMatrix::T, PaperMatrix::Example2] {
        let result = golden_check(which);
        t.case(matches!(result, Ok(None)), || match result {
            Ok(Some(m)) => format!(
                "{which:?} at ({}, {}): expected {}, built {}",
                m.row, m.col, m.expected, m.found
            ),
            Ok(None) => unreachable!(),
            Err(e) => format!("{which:?}: {e}"),
        });
    }
    let mu_rows: Vec<u64> = (1..=4).map(h_support_index).collect();
    t.case(mu_rows == [2, 5, 9, 14], || format!("constant rows at {mu_rows:?}"));
    t.finish("16 x 5 blocks of all three displays match cell for cell".into())
}

fn classify_in(op: &TruncatedOperator, space: Space, tol: f64) -> bool {
    match space {
        Space::Lp => classify_preserver_lp(op, tol).accepted,
        Space::L1 => classify_preserver_l1(op, tol).accepted,
    }
}

pub fn preserver_round_trip(cfg: &Config) -> Outcome {
    let mut t = Tally::new(10, "preserver-round-trip");
    let tol = cfg.tol_class;
    for trial in 0..100 {
        let mut r = rng(cfg, 10, trial);
        let space = if trial % 2 == 0 { Space::Lp } else { Space::L1 };
        let domain = r.random_range(2..=10);
        let spec = random_preserver_spec(&mut r, domain, space);
        let op = build_preserver(&spec, spec.row_bound(), domain);
        let Ok(mut op) = op else {
            t.case(false, || format!("spec {trial}: build failed"));
            continue;
        };
        t.case(classify_in(&op, space, tol), || {
            format!("spec {trial} ({space:?}) rejected")
        });
        let zeros: Vec<(usize, usize)> = (0..op.rows())
            .flat_map(|i| (0..op.cols()).map(move |j| (i, j)))
            .filter(|&(i, j)| op.get(i, j) == 0.0)
            .collect();
        let (i, j) = zeros[r.random_range(0..zeros.len())];
        op.set(i, j, 2.0).expect("inside the truncation");
        t.case(!classify_in(&op, space, tol), || {
            format!("spec {trial}: corruption at ({}, {}) still accepted", i + 1, j + 1)
        });
    }
    t.finish("100 specs accepted, 100 corruptions rejected".into())
}

pub fn empirical_preservation(cfg: &Config) -> Outcome {
    let mut t = Tally::new(11, "empirical-preservation");
    let mut trials = 0;
    for k in 0..20 {
        let mut r = rng(cfg, 11, k);
        let space = if k % 2 == 0 { Space::Lp } else { Space::L1 };
        let n = r.random_range(1..=40);
        let spec = random_preserver_spec(&mut r, n, space);
        let report = empirical_preservation_check(
            &spec,
            50,
            n,
            split_seed(cfg.seed, 1100 + k as u64),
            cfg.tol_class,
        );
        if let Ok(rep) = &report {
            trials += rep.trials;
        }
        t.case(report.as_ref().is_ok_and(|rep| rep.all_passed()), || match &report {
            Ok(rep) => format!(
                "spec {k} ({space:?}, n = {n}): {}/{} passed",
                rep.passed, rep.trials
            ),
            Err(e) => format!("spec {k}: {e}"),
        });
    }
    t.finish(format!("{trials} sampled pairs preserved"))
}

pub fn shift_forcing_criterion(_cfg: &Config) -> Outcome {
    let mut t = Tally::new(12, "shift-forcing");
    let n = 50;
    let g = NonNegVector::new((1..=n).map(|i| 1.0 / (i * i) as f64).collect())
        .expect("positive entries");
    match shift_forcing(&g) {
        Ok(res) => {
            let shift = shift_matrix(n, ShiftDirection::Right);
            let dense = res.forced.to_dense();
            for (i, pinned) in res.pinned_rows.iter().enumerate() {
                if !pinned {
                    continue;
                }
                let exact = dense[i].iter().all(|&v| v == 0.0 || v == 1.0);
                t.case(exact && dense[i] == shift.row(i), || {
                    format!("row {} differs from the shift", i + 1)
                });
            }
            t.case(res.fully_determined, || "not every row was pinned".into());
            t.finish(format!(
                "{} pinned rows equal R exactly; conclusion {}",
                res.pinned_rows.iter().filter(|&&p| p).count(),
                res.conclusion.as_str()
            ))
        }
        Err(e) => {
            t.case(false, || e.to_string());
            t.finish(String::new())
        }
    }
}

pub fn theta_families(_cfg: &Config) -> Outcome {
    let mut t = Tally::new(13, "theta-families");
    let mut values = 0;
    for kind in [ThetaKind::Quadratic, ThetaKind::Triangular] {
        let c = theta_family_check(kind, 10_000);
        values += c.values_checked;
        t.case(c.collision.is_none(), || format!("{kind:?} collision {:?}", c.collision));
        t.case(c.h_collision.is_none(), || {
            format!("{kind:?} constant-row collision {:?}", c.h_collision)
        });
    }
    t.finish(format!("{values} images <= 10000 distinct, constant rows disjoint"))
}
