use majorize_core::{CLASS_TOL, EXACT_TOL};
use thiserror::Error;

/// Environment variable that overrides the class tolerance when `--tol` is
/// not given.
pub const TOL_ENV: &str = "MAJ_TOL";

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    /// Class membership and relation checks.
    pub tol_class: f64,
    /// Algebraic identities (reconstruction, intertwining, chain products).
    pub tol_exact: f64,
    pub seed: u64,
    pub output: OutputMode,
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("tolerances must satisfy 0 < exact ({exact}) <= class ({class}) < 1")]
    Tolerances { class: f64, exact: f64 },
    #[error("{TOL_ENV}={0:?} is not a number")]
    BadEnv(String),
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol_class: CLASS_TOL,
            tol_exact: EXACT_TOL,
            seed: DEFAULT_SEED,
            output: OutputMode::Text,
        }
    }
}

impl Config {
    pub fn new(tol_class: f64, tol_exact: f64, seed: u64, output: OutputMode) -> Result<Self, ConfigError> {
        let ok = tol_exact > 0.0 && tol_exact <= tol_class && tol_class < 1.0;
        if !ok {
            return Err(ConfigError::Tolerances {
                class: tol_class,
                exact: tol_exact,
            });
        }
        Ok(Self {
            tol_class,
            tol_exact,
            seed,
            output,
        })
    }

    /// Class tolerance from `--tol`, else `env` (the value of [`TOL_ENV`]),
    /// else the default. The exact tolerance is the default clamped to the
    /// class tolerance.
    pub fn resolve(
        tol: Option<f64>,
        env: Option<&str>,
        seed: Option<u64>,
        output: OutputMode,
    ) -> Result<Self, ConfigError> {
        let tol_class = match (tol, env) {
            (Some(t), _) => t,
            (None, Some(s)) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| ConfigError::BadEnv(s.to_owned()))?,
            (None, None) => CLASS_TOL,
        };
        Self::new(
            tol_class,
            EXACT_TOL.min(tol_class),
            seed.unwrap_or(DEFAULT_SEED),
            output,
        )
    }
}
