//! Acceptance gate: one line per criterion, then a hard failure if any
//! criterion did not pass. Run with `--nocapture` to see the lines.

use majorize::battery::{Outcome, CRITERIA};
use majorize::config::{Config, OutputMode, DEFAULT_SEED};

/// Membership, residual and certificate checks.
const TOL_CLASS: f64 = 1e-9;
/// Reconstruction and intertwining identities.
const TOL_EXACT: f64 = 1e-12;

fn config() -> Config {
    Config::new(TOL_CLASS, TOL_EXACT, DEFAULT_SEED, OutputMode::Text).unwrap()
}

fn run(id: u8) -> Outcome {
    let (_, _, criterion) = CRITERIA[usize::from(id) - 1];
    let outcome = criterion(&config());
    println!("{outcome}");
    outcome
}

macro_rules! criterion {
    ($name:ident, $id:expr) => {
        #[test]
        fn $name() {
            let o = run($id);
            assert!(o.passed, "criterion {} failed: {}", o.id, o.detail);
        }
    };
}

criterion!(c01_completion, 1);
criterion!(c02_oracle_agreement, 2);
criterion!(c03_witness_soundness, 3);
criterion!(c04_finite_collapse, 4);
criterion!(c05_antisymmetry, 5);
criterion!(c06_closure, 6);
criterion!(c07_decomposition, 7);
criterion!(c08_intertwining, 8);
criterion!(c09_preserver_golden, 9);
criterion!(c10_preserver_round_trip, 10);
criterion!(c11_empirical_preservation, 11);
criterion!(c12_shift_forcing, 12);
criterion!(c13_theta_families, 13);

#[test]
fn sampled_criteria_pass_under_another_seed() {
    let cfg = Config { seed: 7, ..config() };
    for (id, _, criterion) in CRITERIA {
        let o = criterion(&cfg);
        assert!(o.passed, "seed 7, criterion {id}: {}", o.detail);
    }
}
