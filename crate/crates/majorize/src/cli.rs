//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 when a relation holds or an operation succeeds, 1 when a
//! relation fails or a classification rejects, 2 for usage and input
//! errors. Artifacts (chains, certificates, operators) are always JSON;
//! verdicts and reports are text unless `--json` is given.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use majorize_core::demos::{
    paper_matrix, reciprocal_square_example, shift_forcing, ForcingConclusion, PaperMatrix,
};
use majorize_core::matrix::vonneumann_complete;
use majorize_core::preservers::{
    build_preserver, classify_preserver_l1, classify_preserver_lp, empirical_preservation_check,
    PreserverVerdict, Rejection, TruncatedOperator,
};
use majorize_core::relations::{check, hlp_witness, Matching, ViolationKind};
use majorize_core::{NonNegVector, RelationKind, RelationVerdict};
use serde_json::json;

use crate::battery::run_battery;
use crate::config::{Config, OutputMode, TOL_ENV};
use crate::fixtures::symbolic_rows;
use crate::formats::{
    read_json, to_pretty, write_json, CertificateJson, ChainJson, FormatError, MatrixJson,
    OperatorInput, OperatorJson, PreserverSpecJson, VectorJson, VerdictJson,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "majorize", version, about = "Majorization orders with matrix witnesses")]
struct Cli {
    /// Class tolerance (default 1e-9, or $MAJ_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Master seed for sampled checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide f ≺ g, f ≺_w g or f ≺_s g.
    Check {
        #[arg(long, value_enum)]
        relation: RelationArg,
        f: PathBuf,
        g: PathBuf,
        /// Write the witness (for `sub`, its certificate) to this file.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Emit the T-transform chain carrying g to f.
    Witness { f: PathBuf, g: PathBuf },
    /// Complete a doubly substochastic matrix to a doubly stochastic one.
    Complete { d: PathBuf },
    /// Test an operator against the preserver characterisation.
    Classify {
        #[arg(long, value_enum)]
        space: SpaceArg,
        t: PathBuf,
    },
    /// Materialise a preserver spec as an operator.
    BuildPreserver {
        spec: PathBuf,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
    },
    /// Sample f ≺_s g pairs and check Tf ≺_s Tg.
    PreserveTest {
        spec: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Sample dimension (default: the injections' domain).
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Worked constructions.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Run the acceptance battery.
    Selftest,
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// Forcing argument showing that f = Rg pins the right shift.
    Shift {
        #[arg(long, default_value_t = 50)]
        n: usize,
    },
    /// The displayed preserver matrices.
    PaperMatrix {
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long, default_value_t = 16)]
        rows: usize,
        #[arg(long, default_value_t = 5)]
        cols: usize,
        /// Vector JSON of weights (default 2^-k, k = 1..5).
        #[arg(long)]
        lambda: Option<PathBuf>,
        /// Constant-row value for `T`.
        #[arg(long, default_value_t = 0.75)]
        a: f64,
        /// Vector JSON of constant-row values for `example2` (default 0.3·10^-(k-1)).
        #[arg(long)]
        mu: Option<PathBuf>,
        /// Print symbol labels instead of numbers.
        #[arg(long)]
        symbolic: bool,
    },
    /// The 1/i² sequence and its right shift.
    RecipSquare {
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RelationArg {
    Majorize,
    Weak,
    Sub,
}

impl From<RelationArg> for RelationKind {
    fn from(r: RelationArg) -> Self {
        match r {
            RelationArg::Majorize => RelationKind::Majorize,
            RelationArg::Weak => RelationKind::Weak,
            RelationArg::Sub => RelationKind::Sub,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpaceArg {
    Lp,
    L1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WhichArg {
    #[value(name = "T1", alias = "t1")]
    T1,
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "example2")]
    Example2,
}

impl From<WhichArg> for PaperMatrix {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::T1 => PaperMatrix::T1,
            WhichArg::T => PaperMatrix::T,
            WhichArg::Example2 => PaperMatrix::Example2,
        }
    }
}

/// Outcome of a subcommand before it becomes an exit code.
enum Failure {
    /// Relation fails or classification rejects; the message goes to stderr.
    Negative(String),
    Usage(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<majorize_core::Error> for Failure {
    fn from(e: majorize_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx<'a> {
    cfg: Config,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn json(&self) -> bool {
        self.cfg.output == OutputMode::Json
    }

    fn emit(&mut self, text: &str) {
        // a closed stdout is not worth a different exit code
        let _ = writeln!(self.out, "{text}");
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let env = std::env::var(TOL_ENV).ok();
    let output = if cli.json { OutputMode::Json } else { OutputMode::Text };
    let cfg = match Config::resolve(cli.tol, env.as_deref(), cli.seed, output) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx { cfg, out };
    let result = match cli.command {
        Command::Check {
            relation,
            f,
            g,
            emit_witness,
        } => cmd_check(&mut ctx, relation.into(), &f, &g, emit_witness.as_deref()),
        Command::Witness { f, g } => cmd_witness(&mut ctx, &f, &g),
        Command::Complete { d } => cmd_complete(&mut ctx, &d),
        Command::Classify { space, t } => cmd_classify(&mut ctx, space, &t),
        Command::BuildPreserver { spec, rows, cols } => cmd_build(&mut ctx, &spec, rows, cols),
        Command::PreserveTest { spec, trials, dim } => cmd_preserve(&mut ctx, &spec, trials, dim),
        Command::Demo { demo } => match demo {
            Demo::Shift { n } => demo_shift(&mut ctx, n),
            Demo::PaperMatrix {
                which,
                rows,
                cols,
                lambda,
                a,
                mu,
                symbolic,
            } => demo_paper_matrix(
                &mut ctx,
                which.into(),
                rows,
                cols,
                lambda.as_deref(),
                a,
                mu.as_deref(),
                symbolic,
            ),
            Demo::RecipSquare { n } => demo_recip(&mut ctx, n),
        },
        Command::Selftest => cmd_selftest(&mut ctx),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Negative(msg)) => {
            let _ = writeln!(err, "{msg}");
            EXIT_FAIL
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn read_vector(path: &Path) -> Result<NonNegVector, Failure> {
    let v: VectorJson = read_json(path)?;
    v.to_vector()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn describe_failure(v: &RelationVerdict) -> String {
    match &v.violation {
        Some(x) => match x.kind {
            ViolationKind::PrefixSum => format!(
                "{} fails at index {}: sum of the {} largest entries of f is {} > {}",
                v.relation.as_str(),
                x.index + 1,
                x.index + 1,
                x.lhs,
                x.rhs
            ),
            ViolationKind::Total => format!(
                "{} fails at index {}: totals differ ({} vs {})",
                v.relation.as_str(),
                x.index + 1,
                x.lhs,
                x.rhs
            ),
        },
        None => format!("{} fails", v.relation.as_str()),
    }
}

fn cmd_check(
    ctx: &mut Ctx,
    relation: RelationKind,
    f_path: &Path,
    g_path: &Path,
    emit: Option<&Path>,
) -> Outcome {
    let f = read_vector(f_path)?;
    let g = read_vector(g_path)?;
    let v = check(relation, &f, &g, ctx.cfg.tol_class);
    if ctx.json() {
        ctx.emit(&to_pretty(&VerdictJson::from_verdict(&v, &f, &g)));
    } else if v.holds {
        let residual = v.residual(&f, &g).map_or("n/a".into(), |r| format!("{r:.3e}"));
        ctx.emit(&format!(
            "{} holds (witness residual {residual})",
            relation.as_str()
        ));
    } else {
        ctx.emit(&format!("{} does not hold", relation.as_str()));
    }
    if !v.holds {
        return Err(Failure::Negative(describe_failure(&v)));
    }
    if let Some(path) = emit {
        match (&v.certificate, &v.witness) {
            (Some(c), _) => write_json(path, &CertificateJson::from_certificate(c))?,
            (None, Some(w)) => write_json(path, &MatrixJson::from_matrix(w))?,
            (None, None) => return Err(Failure::Usage("no witness was produced".into())),
        }
    }
    Ok(())
}

fn cmd_witness(ctx: &mut Ctx, f_path: &Path, g_path: &Path) -> Outcome {
    let f = read_vector(f_path)?;
    let g = read_vector(g_path)?;
    let v = check(RelationKind::Majorize, &f, &g, ctx.cfg.tol_class);
    if !v.holds {
        return Err(Failure::Negative(describe_failure(&v)));
    }
    let chain = hlp_witness(&f, &g, ctx.cfg.tol_class)?;
    ctx.emit(&to_pretty(&ChainJson::from_chain(&chain)));
    Ok(())
}

fn cmd_complete(ctx: &mut Ctx, path: &Path) -> Outcome {
    let m: MatrixJson = read_json(path)?;
    let d = m.to_matrix(ctx.cfg.tol_class)?;
    let cert = vonneumann_complete(&d)?;
    ctx.emit(&to_pretty(&CertificateJson::from_certificate(&cert)));
    Ok(())
}

fn describe_rejection(v: &PreserverVerdict) -> String {
    match v.rejection {
        Some(Rejection::RowPattern { row }) => format!(
            "rejected: row {} has several positive entries and is not constant",
            row + 1
        ),
        Some(Rejection::ColumnMismatch { column }) => format!(
            "rejected: positive entries of column {} differ from those of column 1",
            column + 1
        ),
        None => "rejected".into(),
    }
}

fn cmd_classify(ctx: &mut Ctx, space: SpaceArg, path: &Path) -> Outcome {
    let input: OperatorInput = read_json(path)?;
    let op = input.to_operator()?;
    let (name, v) = match space {
        SpaceArg::Lp => ("lp", classify_preserver_lp(&op, ctx.cfg.tol_class)),
        SpaceArg::L1 => ("l1", classify_preserver_l1(&op, ctx.cfg.tol_class)),
    };
    if ctx.json() {
        let rejection = v.rejection.map(|r| match r {
            Rejection::RowPattern { row } => json!({"kind": "row-pattern", "row": row + 1}),
            Rejection::ColumnMismatch { column } => {
                json!({"kind": "column-mismatch", "column": column + 1})
            }
        });
        ctx.emit(&to_pretty(&json!({
            "space": name,
            "accepted": v.accepted,
            "rejection": rejection,
        })));
    } else if v.accepted {
        ctx.emit(&format!(
            "accepted as a {name} preserver on the {} x {} truncation",
            op.rows(),
            op.cols()
        ));
    } else {
        ctx.emit(&describe_rejection(&v));
    }
    if v.accepted {
        Ok(())
    } else {
        Err(Failure::Negative(describe_rejection(&v)))
    }
}

fn cmd_build(ctx: &mut Ctx, path: &Path, rows: usize, cols: usize) -> Outcome {
    let spec: PreserverSpecJson = read_json(path)?;
    let spec = spec.to_spec()?;
    let op = build_preserver(&spec, rows, cols)?;
    ctx.emit(&to_pretty(&OperatorJson::from_operator(&op)));
    Ok(())
}

fn cmd_preserve(ctx: &mut Ctx, path: &Path, trials: usize, dim: Option<usize>) -> Outcome {
    let spec: PreserverSpecJson = read_json(path)?;
    let spec = spec.to_spec()?;
    let n = dim.unwrap_or(spec.domain_dim());
    let report = empirical_preservation_check(&spec, trials, n, ctx.cfg.seed, ctx.cfg.tol_class)?;
    if ctx.json() {
        let ce = report.first_counterexample.as_ref().map(|c| {
            json!({
                "trial": c.trial,
                "f": VectorJson::from_vector(&c.f),
                "g": VectorJson::from_vector(&c.g),
                "tf": VectorJson::from_vector(&c.tf),
                "tg": VectorJson::from_vector(&c.tg),
            })
        });
        ctx.emit(&to_pretty(&json!({
            "trials": report.trials,
            "passed": report.passed,
            "seed": ctx.cfg.seed,
            "firstCounterexample": ce,
        })));
    } else {
        ctx.emit(&format!(
            "{}/{} trials preserved (dim {n}, seed {})",
            report.passed, report.trials, ctx.cfg.seed
        ));
    }
    match &report.first_counterexample {
        None => Ok(()),
        Some(c) => Err(Failure::Negative(format!(
            "trial {} is a counterexample: Tf = {:?} is not weakly majorized by Tg = {:?}",
            c.trial,
            c.tf.values(),
            c.tg.values()
        ))),
    }
}

fn format_rows(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn numeric_rows(op: &TruncatedOperator) -> Vec<Vec<String>> {
    op.to_dense()
        .iter()
        .map(|r| r.iter().map(|v| format!("{v}")).collect())
        .collect()
}

fn demo_shift(ctx: &mut Ctx, n: usize) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let g = NonNegVector::new((1..=n).map(|i| 1.0 / (i * i) as f64).collect())?;
    let r = shift_forcing(&g)?;
    let annotation = "on the full index set the forced witness is the right shift, \
                      which is not increasable; that step is not checked numerically";
    if ctx.json() {
        ctx.emit(&to_pretty(&json!({
            "n": n,
            "forced": OperatorJson::from_operator(&r.forced),
            "fullyDetermined": r.fully_determined,
            "pinnedRows": r.pinned_rows.iter().filter(|&&p| p).count(),
            "openColumns": r.open_columns.iter().map(|j| j + 1).collect::<Vec<_>>(),
            "conclusion": r.conclusion.as_str(),
            "annotation": annotation,
        })));
    } else {
        ctx.emit(&format!("g(i) = 1/i^2, f = Rg, n = {n}"));
        ctx.emit(&format_rows(&numeric_rows(&r.forced)));
        ctx.emit(&format!(
            "conclusion: {}; fully determined: {}; columns with no mass inside the truncation: {:?}",
            r.conclusion.as_str(),
            r.fully_determined,
            r.open_columns.iter().map(|j| j + 1).collect::<Vec<_>>()
        ));
        ctx.emit(&format!("note: {annotation}"));
    }
    if r.conclusion == ForcingConclusion::EqualsRightShift {
        Ok(())
    } else {
        Err(Failure::Negative(format!("forcing ended with {}", r.conclusion.as_str())))
    }
}

#[allow(clippy::too_many_arguments)]
fn demo_paper_matrix(
    ctx: &mut Ctx,
    which: PaperMatrix,
    rows: usize,
    cols: usize,
    lambda: Option<&Path>,
    a: f64,
    mu: Option<&Path>,
    symbolic: bool,
) -> Outcome {
    let lambda = match lambda {
        Some(p) => read_vector(p)?.into_values(),
        None => crate::fixtures::LAMBDA.to_vec(),
    };
    let mu = match mu {
        Some(p) => read_vector(p)?.into_values(),
        None => (0..rows).map(|k| 0.3 * 0.1f64.powi(k as i32)).collect(),
    };
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Failure::Usage(format!("--a must be a nonnegative number, got {a}")));
    }
    let op = paper_matrix(which, rows, cols, &lambda, a, &mu)?;
    if ctx.json() {
        ctx.emit(&to_pretty(&OperatorJson::from_operator(&op)));
    } else {
        let cells = if symbolic {
            symbolic_rows(&op, &lambda, a, &mu)
        } else {
            numeric_rows(&op)
        };
        ctx.emit(&format_rows(&cells));
    }
    Ok(())
}

fn matching_json(m: &Option<Matching>) -> serde_json::Value {
    match m {
        Some(m) => json!(m.pairs.iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>()),
        None => serde_json::Value::Null,
    }
}

fn demo_recip(ctx: &mut Ctx, n: usize) -> Outcome {
    let r = reciprocal_square_example(n)?;
    if ctx.json() {
        ctx.emit(&to_pretty(&json!({
            "n": n,
            "f": VectorJson::from_vector(&r.f),
            "g": VectorJson::from_vector(&r.g),
            "gWeakF": r.g_weak_f.holds,
            "fWeakG": r.f_weak_g.holds,
            "rightShiftWitnessExact": r.right_shift_witness_exact,
            "tailF": VectorJson::from_vector(&r.tail_f),
            "tailG": VectorJson::from_vector(&r.tail_g),
            "tailMutualWeak": r.tail_mutual_weak,
            "tailShiftWitnessesExact": r.tail_shift_witnesses_exact,
            "partialPermutation": matching_json(&r.partial_permutation),
            "tailStrictPermutation": matching_json(&r.tail_strict_permutation),
            "infiniteRangeExcludesZero": r.infinite_range_excludes_zero,
        })));
    } else {
        ctx.emit(&format!("f = 1/i^2 and g = Rf, truncated to n = {n}"));
        ctx.emit(&format!("g weakly majorized by f: {}", r.g_weak_f.holds));
        match &r.f_weak_g.violation {
            Some(v) => ctx.emit(&format!(
                "f weakly majorized by g: false (f({n}) has left the truncation; prefix {} fails)",
                v.index + 1
            )),
            None => ctx.emit("f weakly majorized by g: true"),
        }
        ctx.emit(&format!(
            "with one more index both directions hold: {} (witnesses R and L exact: {})",
            r.tail_mutual_weak, r.tail_shift_witnesses_exact
        ));
        if let Some(m) = &r.partial_permutation {
            let pairs: Vec<String> = m
                .pairs
                .iter()
                .map(|&(a, b)| format!("{}->{}", a + 1, b + 1))
                .collect();
            ctx.emit(&format!("partial permutation between supports: {}", pairs.join(" ")));
        }
        ctx.emit(&format!(
            "strict permutation at n + 1: {}",
            if r.tail_strict_permutation.is_some() { "found (both truncations contain 0)" } else { "none" }
        ));
        ctx.emit("note: untruncated, g(1) = 0 is not a value of f, so no permutation exists");
    }
    Ok(())
}

fn cmd_selftest(ctx: &mut Ctx) -> Outcome {
    let outcomes = run_battery(&ctx.cfg);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if ctx.json() {
        let items: Vec<_> = outcomes
            .iter()
            .map(|o| {
                json!({
                    "id": o.id,
                    "name": o.name,
                    "passed": o.passed,
                    "cases": o.cases,
                    "seconds": o.elapsed.as_secs_f64(),
                    "detail": o.detail,
                })
            })
            .collect();
        ctx.emit(&to_pretty(&json!({
            "tolClass": ctx.cfg.tol_class,
            "tolExact": ctx.cfg.tol_exact,
            "seed": ctx.cfg.seed,
            "criteria": items,
        })));
    } else {
        for o in &outcomes {
            ctx.emit(&o.to_string());
        }
        ctx.emit(&format!(
            "{}/{} criteria passed",
            outcomes.len() - failed,
            outcomes.len()
        ));
    }
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Negative(format!("{failed} criteria failed")))
    }
}
