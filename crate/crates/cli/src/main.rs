mod sweep;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use rotunc_core::relations::{Scalar, SymmetryCondition};
use rotunc_core::specio::{self, ParseOptions, ReportFormat, ReportRow, SpecDocument};
use rotunc_core::{evaluate, Complex64, Engine, Error, RelationId, RelationReport, Verdict};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "rotunc", version, about = "Evaluate Lz-phi uncertainty relations on rotational quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every (state, relation) pair of a spec file
    Eval {
        spec: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// List the relation catalog
    Catalog,
    /// Re-evaluate a spec file over a parameter sweep
    Scan {
        spec: PathBuf,
        /// name=start:stop:steps or name=v1,v2,... with name one of
        /// alpha, n, N, N1, mix:a:b, mag:m, phase:m
        #[arg(long)]
        sweep: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "json")]
    format: ReportFormat,
    /// Absolute tolerance of verdict comparisons
    #[arg(long)]
    tolerance: Option<f64>,
    /// Node count of every quadrature rule
    #[arg(long)]
    quad_nodes: Option<usize>,
    /// Rescale all state coefficients to unit norm
    #[arg(long)]
    normalize: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn load(path: &PathBuf, common: &Common) -> Result<(SpecDocument, Engine), InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let doc = specio::parse_with_options(&text, ParseOptions { force_normalize: common.normalize })
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let mut settings = doc.settings.engine_settings();
    if let Some(t) = common.tolerance {
        settings.tolerance = t;
    }
    if let Some(n) = common.quad_nodes {
        settings.phi_nodes = n;
        settings.theta_nodes = n;
        settings.hermite_nodes = n;
    }
    let engine = Engine::new(settings)?;
    Ok((doc, engine))
}

/// Row for a relation (or observable pair) the state's family does not support.
fn family_mismatch(relation: RelationId, flag: &str) -> RelationReport {
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert(flag.to_string(), Scalar::Real(1.0));
    RelationReport {
        relation,
        lhs: f64::NAN,
        rhs: f64::NAN,
        verdict: Verdict::NotApplicable,
        diagnostics,
        condition31: SymmetryCondition { holds: false, deficit: Complex64::new(f64::NAN, f64::NAN) },
    }
}

fn evaluate_document(doc: &SpecDocument, engine: &Engine, sweep: &[(String, f64)]) -> Result<Vec<ReportRow>, InputError> {
    let pairs: Vec<_> = doc
        .states
        .iter()
        .flat_map(|s| doc.selections.iter().map(move |sel| (s, sel)))
        .collect();
    pairs
        .par_iter()
        .map(|(named, sel)| {
            let report = match evaluate(engine, sel.relation, &named.state, &sel.params) {
                Ok(r) => r,
                Err(Error::FamilyMismatch { .. }) => family_mismatch(sel.relation, "family_mismatch"),
                Err(Error::KindFamilyMismatch { .. }) => family_mismatch(sel.relation, "observable_mismatch"),
                Err(e) => return Err(InputError(format!("state '{}', {}: {e}", named.name, sel.relation))),
            };
            Ok(ReportRow { state_name: named.name.clone(), report, sweep: sweep.to_vec() })
        })
        .collect()
}

fn exit_code(rows: &[ReportRow]) -> u8 {
    let verdicts: Vec<Verdict> = rows.iter().map(|r| r.report.verdict).collect();
    if verdicts.contains(&Verdict::Violated) {
        EXIT_VIOLATED
    } else if verdicts.iter().any(|v| matches!(v, Verdict::Indeterminate | Verdict::NotApplicable)) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    }
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), InputError> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn catalog() -> String {
    let mut out = String::from("id   families                            params  formula\n");
    for r in RelationId::ALL {
        let families: Vec<&str> = r.families().iter().map(|f| f.name()).collect();
        let params = if r.parameters().is_empty() { "-".to_string() } else { r.parameters().join(",") };
        out.push_str(&format!("{:<4} {:<35} {:<7} {}\n", r.to_string(), families.join(","), params, r.formula()));
    }
    out.push_str("\nR9, R13 excluded: under-specified\n");
    out
}

fn run(cli: Cli) -> Result<u8, InputError> {
    match cli.command {
        Command::Catalog => {
            emit(&catalog(), &None)?;
            Ok(EXIT_OK)
        }
        Command::Eval { spec, common } => {
            let (doc, engine) = load(&spec, &common)?;
            let rows = evaluate_document(&doc, &engine, &[])?;
            emit(&specio::serialize_report(&rows, common.format)?, &common.output)?;
            Ok(exit_code(&rows))
        }
        Command::Scan { spec, sweep, common } => {
            let sweep = sweep::parse_sweep(&sweep).map_err(InputError)?;
            let (doc, engine) = load(&spec, &common)?;
            let per_point: Vec<Vec<ReportRow>> = sweep
                .values
                .par_iter()
                .map(|&v| {
                    let point = sweep::apply(&doc, &sweep.target, v, common.normalize).map_err(InputError)?;
                    evaluate_document(&point, &engine, &[(sweep.name.clone(), v)])
                })
                .collect::<Result<_, _>>()?;
            let rows: Vec<ReportRow> = per_point.into_iter().flatten().collect();
            emit(&specio::serialize_report(&rows, common.format)?, &common.output)?;
            Ok(exit_code(&rows))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("rotunc: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
