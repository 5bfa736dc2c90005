//! `sicqb`: JSON/CSV command-line access to the SIC probability toolkit.
//!
//! Exit codes: 0 success or pass, 1 verification failure (non-SIC set,
//! invalid state, failed check), 2 usage error (bad flags, malformed JSON,
//! dimension over the configured maximum). Machine output goes to stdout,
//! diagnostics to stderr.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use sicqb::axioms::{
    certainty_check, computational_projectors, solve_constants, universal_angle_table,
};
use sicqb::born::{
    classical_ltp, conditional_matrix, evolve_probs, reciprocity_posterior, unitary_transition,
    urgleichung, ConditionalMatrix, Povm,
};
use sicqb::geometry::{
    inner_bound_check, max_distant_gram, nflat_min_distance, order2_entropies, sphere_check,
    zeros_audit,
};
use sicqb::io::{
    parse_conditional, parse_fiducial, parse_matrix, parse_prob_vector, parse_sic_set, to_json,
    to_json_pretty, FiducialJson, IoError, MatrixJson, ProbVectorJson, SicSetJson,
};
use sicqb::search::{find_sic, SearchOptions};
use sicqb::selftest;
use sicqb::sic::{builtin_sic, fiducial_orbit, verify_sic, SicSet};
use sicqb::state::{probs_to_state, state_to_probs, validate_probs, ProbVector};
use sicqb::SicError;

#[derive(Parser)]
#[command(name = "sicqb", version, about = "SIC probability representations of quantum states")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output rendering for machine results on stdout
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,

    /// Largest dimension any operation may touch
    #[arg(long, global = true, env = "SICQB_MAX_D", default_value_t = 12)]
    max_d: usize,

    /// Seed for every randomized operation
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Tolerance for verification-style checks
    #[arg(long, global = true, default_value_t = 1e-10)]
    verify_tol: f64,

    /// Acceptance tolerance for numerical SIC searches
    #[arg(long, global = true, default_value_t = 1e-8)]
    search_tol: f64,

    /// Threshold below which a probability counts as zero
    #[arg(long, global = true, default_value_t = 1e-9)]
    zero_tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
    Csv,
}

/// One of four ways to obtain the reference SIC set.
#[derive(Args)]
struct SicSource {
    /// Use the exact built-in set (dimensions 2 and 3)
    #[arg(long, conflicts_with_all = ["sic", "fiducial", "d"])]
    builtin: Option<usize>,

    /// Load a projector set from a SicSet JSON file
    #[arg(long, conflicts_with_all = ["fiducial", "d"])]
    sic: Option<PathBuf>,

    /// Load a fiducial JSON file and expand its displacement orbit
    #[arg(long, conflicts_with = "d")]
    fiducial: Option<PathBuf>,

    /// Target dimension: built-in when available, seeded search otherwise
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a fiducial vector whose orbit is a SIC set
    FindSic {
        /// Dimension to search in
        #[arg(long)]
        d: usize,
        /// Independent seeded restarts
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        /// Iteration budget per restart
        #[arg(long, default_value_t = 4000)]
        max_iters: usize,
        /// Also write the fiducial to this file (pretty JSON)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the expanded orbit as a SicSet JSON file
        #[arg(long)]
        orbit_out: Option<PathBuf>,
    },
    /// Check a candidate set against the defining overlap conditions
    Verify {
        #[command(flatten)]
        source: SicSource,
    },
    /// Convert between density matrices and SIC probability vectors
    Convert {
        #[command(flatten)]
        source: SicSource,
        /// Density matrix JSON file to turn into probabilities
        #[arg(long, conflicts_with = "probs")]
        state: Option<PathBuf>,
        /// Probability vector JSON file to turn into a matrix
        #[arg(long)]
        probs: Option<PathBuf>,
    },
    /// Decide whether a probability vector describes a quantum state
    Validate {
        #[command(flatten)]
        source: SicSource,
        /// Probability vector JSON file
        #[arg(long)]
        state: PathBuf,
    },
    /// Apply the probabilistic Born rule to a prior and a conditional matrix
    Urgleichung {
        #[command(flatten)]
        source: SicSource,
        /// Prior probability vector JSON file
        #[arg(long)]
        prior: PathBuf,
        /// Conditional matrix JSON file
        #[arg(long, conflicts_with = "povm")]
        conditional: Option<PathBuf>,
        /// POVM JSON file; its conditional matrix is built from the SIC source
        #[arg(long)]
        povm: Option<PathBuf>,
        /// Use the classical law of total probability instead
        #[arg(long)]
        classical: bool,
    },
    /// Evolve a probability vector under a unitary matrix
    Evolve {
        #[command(flatten)]
        source: SicSource,
        /// Prior probability vector JSON file
        #[arg(long)]
        prior: PathBuf,
        /// Unitary matrix JSON file
        #[arg(long)]
        unitary: PathBuf,
    },
    /// Posterior over reference outcomes from maximal ignorance
    Posterior {
        #[command(flatten)]
        source: SicSource,
        /// Conditional matrix JSON file
        #[arg(long, conflicts_with = "povm")]
        conditional: Option<PathBuf>,
        /// POVM JSON file; its conditional matrix is built from the SIC source
        #[arg(long)]
        povm: Option<PathBuf>,
        /// Observed ground outcome, 1-based
        #[arg(long)]
        outcome: usize,
    },
    /// Simplex geometry of the state space
    Geometry {
        #[command(subcommand)]
        cmd: GeometryCmd,
    },
    /// Exact constants of the generalized probabilistic Born rule
    Axioms {
        #[command(subcommand)]
        cmd: AxiomsCmd,
    },
    /// Run the acceptance suite
    Selftest {
        /// Include the multi-dimension search criterion
        #[arg(long)]
        slow: bool,
        /// Run a single criterion by its 1-based id
        #[arg(long, conflicts_with = "slow")]
        criterion: Option<usize>,
    },
}

#[derive(Subcommand)]
enum GeometryCmd {
    /// Check a pure-state distribution against the outcome sphere
    Sphere {
        /// Probability vector JSON file
        #[arg(long)]
        probs: PathBuf,
        /// Second state: check the overlap bounds of the pair instead
        #[arg(long)]
        other: Option<PathBuf>,
    },
    /// Count zero components against the d(d-1)/2 bound
    Zeros {
        /// Probability vector JSON file
        #[arg(long)]
        probs: PathBuf,
    },
    /// Spectrum of the Gram matrix of n mutually maximally distant states
    Gram {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Distance from the sphere to an n-flat of the simplex boundary
    Nflat {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Order-2 entropies of a probability vector
    Entropy {
        /// Probability vector JSON file
        #[arg(long)]
        probs: PathBuf,
    },
}

#[derive(Subcommand)]
enum AxiomsCmd {
    /// Solve the integrality constraints for one (qbar, m0) cell
    Solve {
        #[arg(long)]
        qbar: u64,
        #[arg(long)]
        m0: u64,
    },
    /// Tabulate constants and universal angles over a parameter grid
    Table {
        #[arg(long, default_value_t = 4)]
        qbar_max: u64,
        #[arg(long, default_value_t = 6)]
        m0_max: u64,
    },
    /// Verify certainty and the universal angle on an orthogonal basis
    Certainty {
        #[command(flatten)]
        source: SicSource,
    },
}

struct Failure {
    code: i32,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

fn verification(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        msg: msg.into(),
    }
}

impl From<SicError> for Failure {
    fn from(e: SicError) -> Self {
        match e {
            SicError::DimensionTooLarge { .. }
            | SicError::UnsupportedBuiltin { .. }
            | SicError::M0TooSmall { .. }
            | SicError::BadTableBounds { .. } => usage(e.to_string()),
            other => verification(other.to_string()),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Json(err) => usage(format!("malformed JSON: {err}")),
            IoError::Domain(err) => err.into(),
        }
    }
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = Cli::parse();
    if cli.max_d < 2 {
        eprintln!("error: --max-d must be at least 2");
        return 2;
    }
    if !(cli.verify_tol > 0.0 && cli.search_tol > 0.0 && cli.zero_tol > 0.0) {
        eprintln!("error: tolerances must be positive");
        return 2;
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_probs(path: &Path) -> Result<ProbVector, Failure> {
    Ok(parse_prob_vector(&read_file(path)?)?)
}

fn load_conditional(path: &Path) -> Result<ConditionalMatrix, Failure> {
    Ok(parse_conditional(&read_file(path)?)?)
}

fn check_max_d(d: usize, max_d: usize) -> Result<(), Failure> {
    if d > max_d {
        return Err(usage(format!(
            "dimension {d} exceeds the configured maximum {max_d}"
        )));
    }
    Ok(())
}

fn search_options(cli: &Cli, restarts: Option<usize>, max_iters: Option<usize>) -> SearchOptions {
    let defaults = SearchOptions::default();
    SearchOptions {
        search_tol: cli.search_tol,
        max_d: cli.max_d,
        restarts: restarts.unwrap_or(defaults.restarts),
        max_iters: max_iters.unwrap_or(defaults.max_iters),
    }
}

/// Resolves a SIC source without judging it; `verify` wants the raw set.
fn resolve_raw(source: &SicSource, cli: &Cli) -> Result<SicSet, Failure> {
    let set = if let Some(d) = source.builtin {
        builtin_sic(d)?
    } else if let Some(path) = &source.sic {
        parse_sic_set(&read_file(path)?)?
    } else if let Some(path) = &source.fiducial {
        fiducial_orbit(&parse_fiducial(&read_file(path)?)?)
    } else if let Some(d) = source.d {
        check_max_d(d, cli.max_d)?;
        if d == 2 || d == 3 {
            builtin_sic(d)?
        } else {
            fiducial_orbit(&find_sic(d, cli.seed, &search_options(cli, None, None))?)
        }
    } else {
        return Err(usage(
            "no SIC source given: use --builtin, --sic, --fiducial, or --d",
        ));
    };
    check_max_d(set.d(), cli.max_d)?;
    Ok(set)
}

/// Resolves and verifies a SIC source for consuming subcommands. Searched
/// sets are held to the search tolerance they were found under; everything
/// else to the verification tolerance.
fn resolve_verified(source: &SicSource, cli: &Cli) -> Result<SicSet, Failure> {
    let searched = source.sic.is_none()
        && source.builtin.is_none()
        && source.fiducial.is_none()
        && matches!(source.d, Some(d) if d > 3);
    let set = resolve_raw(source, cli)?;
    let tolerance = if searched {
        cli.search_tol
    } else {
        cli.verify_tol
    };
    let report = verify_sic(&set, tolerance);
    if !report.pass {
        return Err(verification(format!(
            "source is not a SIC set at tolerance {tolerance:.1e}: max overlap deviation {:.3e}",
            report.max_overlap_deviation
        )));
    }
    Ok(set)
}

fn emit<T: Serialize>(value: &T, output: Output) -> String {
    match output {
        Output::Json => to_json(value),
        Output::Table => render_table(&serde_json::to_value(value).expect("serializable")),
        Output::Csv => render_csv(&serde_json::to_value(value).expect("serializable")),
    }
}

fn print_result<T: Serialize>(value: &T, output: Output) {
    println!("{}", emit(value, output));
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::FindSic {
            d,
            restarts,
            max_iters,
            out,
            orbit_out,
        } => {
            check_max_d(*d, cli.max_d)?;
            let fiducial = find_sic(
                *d,
                cli.seed,
                &search_options(cli, Some(*restarts), Some(*max_iters)),
            )?;
            let doc = FiducialJson::from(&fiducial);
            if let Some(path) = out {
                std::fs::write(path, to_json_pretty(&doc) + "\n")
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            if let Some(path) = orbit_out {
                let orbit = SicSetJson::from(&fiducial_orbit(&fiducial));
                std::fs::write(path, to_json_pretty(&orbit) + "\n")
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            }
            print_result(&doc, cli.output);
            Ok(0)
        }
        Command::Verify { source } => {
            let set = resolve_raw(source, cli)?;
            let report = verify_sic(&set, cli.verify_tol);
            print_result(&report, cli.output);
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Convert {
            source,
            state,
            probs,
        } => {
            let sic = resolve_verified(source, cli)?;
            match (state, probs) {
                (Some(path), None) => {
                    let rho = sicqb::io::parse_density(&read_file(path)?)?;
                    let p = state_to_probs(&rho, &sic)?;
                    print_result(&ProbVectorJson::from(&p), cli.output);
                    Ok(0)
                }
                (None, Some(path)) => {
                    let p = load_probs(path)?;
                    let m = probs_to_state(&p, &sic)?;
                    print_result(&MatrixJson::from(&m), cli.output);
                    Ok(0)
                }
                _ => Err(usage("convert needs exactly one of --state or --probs")),
            }
        }
        Command::Validate { source, state } => {
            let sic = resolve_verified(source, cli)?;
            let p = load_probs(state)?;
            let validity = validate_probs(&p, &sic, cli.verify_tol)?;
            print_result(&validity, cli.output);
            Ok(if validity.is_valid() { 0 } else { 1 })
        }
        Command::Urgleichung {
            source,
            prior,
            conditional,
            povm,
            classical,
        } => {
            let p = load_probs(prior)?;
            let (r, d) = conditional_from_flags(source, conditional, povm, &p, cli)?;
            let q = if *classical {
                classical_ltp(&p, &r)?
            } else {
                urgleichung(&p, &r, d)?
            };
            print_result(&ProbVectorJson::from(&q), cli.output);
            Ok(0)
        }
        Command::Evolve {
            source,
            prior,
            unitary,
        } => {
            let sic = resolve_verified(source, cli)?;
            let p = load_probs(prior)?;
            let u = parse_matrix(&read_file(unitary)?)?;
            let r = unitary_transition(&sic, &u)?;
            let evolved = evolve_probs(&p, &r, sic.d())?;
            print_result(&ProbVectorJson::from(&evolved), cli.output);
            Ok(0)
        }
        Command::Posterior {
            source,
            conditional,
            povm,
            outcome,
        } => {
            let r = match (conditional, povm) {
                (Some(path), None) => load_conditional(path)?,
                (None, Some(path)) => {
                    let sic = resolve_verified(source, cli)?;
                    let ground = Povm::try_from(
                        serde_json::from_str::<sicqb::io::PovmJson>(&read_file(path)?)
                            .map_err(IoError::Json)?,
                    )
                    .map_err(IoError::Domain)?;
                    conditional_matrix(&sic, &ground)?
                }
                _ => return Err(usage("posterior needs exactly one of --conditional or --povm")),
            };
            let posterior = reciprocity_posterior(&r, *outcome)?;
            print_result(&ProbVectorJson::from(&posterior), cli.output);
            Ok(0)
        }
        Command::Geometry { cmd } => geometry(cmd, cli),
        Command::Axioms { cmd } => axioms(cmd, cli),
        Command::Selftest { slow, criterion } => {
            if let Some(id) = criterion {
                let outcome = selftest::criterion(*id, cli.seed)?;
                eprintln!(
                    "criterion {} ({}): {}",
                    outcome.id,
                    outcome.name,
                    if outcome.pass { "PASS" } else { "FAIL" }
                );
                let pass = outcome.pass;
                print_result(&outcome, cli.output);
                return Ok(if pass { 0 } else { 1 });
            }
            let report = selftest::run(cli.seed, *slow);
            for outcome in &report.criteria {
                eprintln!(
                    "criterion {} ({}): {} [{}]",
                    outcome.id,
                    outcome.name,
                    if outcome.pass { "PASS" } else { "FAIL" },
                    outcome.details
                );
            }
            print_result(&report, cli.output);
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

/// Builds the conditional matrix for `urgleichung` from either a file or a
/// POVM plus SIC source, returning it with the reference dimension.
fn conditional_from_flags(
    source: &SicSource,
    conditional: &Option<PathBuf>,
    povm: &Option<PathBuf>,
    prior: &ProbVector,
    cli: &Cli,
) -> Result<(ConditionalMatrix, usize), Failure> {
    match (conditional, povm) {
        (Some(path), None) => {
            let r = load_conditional(path)?;
            let d = infer_dimension(r.n())?;
            check_max_d(d, cli.max_d)?;
            Ok((r, d))
        }
        (None, Some(path)) => {
            let sic = resolve_verified(source, cli)?;
            let ground = Povm::try_from(
                serde_json::from_str::<sicqb::io::PovmJson>(&read_file(path)?)
                    .map_err(IoError::Json)?,
            )
            .map_err(IoError::Domain)?;
            let r = conditional_matrix(&sic, &ground)?;
            Ok((r, sic.d()))
        }
        _ => {
            let _ = prior;
            Err(usage("urgleichung needs exactly one of --conditional or --povm"))
        }
    }
}

/// Recovers d from a reference-measurement outcome count n = d².
fn infer_dimension(n: usize) -> Result<usize, Failure> {
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(usage(format!(
            "outcome count {n} is not a perfect square, cannot infer the dimension"
        )));
    }
    Ok(d)
}

fn geometry(cmd: &GeometryCmd, cli: &Cli) -> Result<i32, Failure> {
    match cmd {
        GeometryCmd::Sphere { probs, other } => {
            let p = load_probs(probs)?;
            let d = infer_dimension(p.len())?;
            check_max_d(d, cli.max_d)?;
            let report = match other {
                Some(path) => inner_bound_check(&p, &load_probs(path)?, d)?,
                None => sphere_check(&p, d)?,
            };
            print_result(&report, cli.output);
            Ok(if report.pass() { 0 } else { 1 })
        }
        GeometryCmd::Zeros { probs } => {
            let p = load_probs(probs)?;
            let d = infer_dimension(p.len())?;
            check_max_d(d, cli.max_d)?;
            let audit = zeros_audit(&p, d, cli.zero_tol)?;
            print_result(&audit, cli.output);
            Ok(if audit.pass { 0 } else { 1 })
        }
        GeometryCmd::Gram { d, n } => {
            check_max_d(*d, cli.max_d)?;
            let gram = max_distant_gram(*d, *n)?;
            print_result(&gram, cli.output);
            Ok(0)
        }
        GeometryCmd::Nflat { d, n } => {
            check_max_d(*d, cli.max_d)?;
            let result = nflat_min_distance(*d, *n)?;
            print_result(&result, cli.output);
            Ok(0)
        }
        GeometryCmd::Entropy { probs } => {
            let p = load_probs(probs)?;
            let entropies = order2_entropies(&p);
            print_result(&entropies, cli.output);
            Ok(0)
        }
    }
}

fn axioms(cmd: &AxiomsCmd, cli: &Cli) -> Result<i32, Failure> {
    match cmd {
        AxiomsCmd::Solve { qbar, m0 } => {
            let params = solve_constants(*qbar, *m0)?;
            #[derive(Serialize)]
            struct SolveOut {
                n: u64,
                alpha: String,
                beta: String,
            }
            let out = SolveOut {
                n: params.n,
                alpha: params.alpha.to_string(),
                beta: params.beta.to_string(),
            };
            print_result(&out, cli.output);
            Ok(0)
        }
        AxiomsCmd::Table { qbar_max, m0_max } => {
            let table = universal_angle_table(*qbar_max, *m0_max)?;
            print_result(&table, cli.output);
            Ok(0)
        }
        AxiomsCmd::Certainty { source } => {
            let sic = resolve_verified(source, cli)?;
            let report = certainty_check(&sic, &computational_projectors(sic.d()))?;
            print_result(&report, cli.output);
            Ok(if report.pass { 0 } else { 1 })
        }
    }
}

fn scalar_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn is_object_array(v: &Value) -> bool {
    matches!(v, Value::Array(items)
        if !items.is_empty() && items.iter().all(|x| matches!(x, Value::Object(_))))
}

/// Aligned two-column or tabular text rendering of any result document.
fn render_table(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut out = String::new();
            let scalars: Vec<_> = map.iter().filter(|(_, v)| is_scalar(v)).collect();
            if !scalars.is_empty() {
                let width = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, val) in &scalars {
                    let _ = writeln!(out, "{k:width$}  {}", scalar_str(val));
                }
            }
            for (k, val) in map {
                if is_object_array(val) {
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    let _ = writeln!(out, "{k}:");
                    out.push_str(&object_array_table(val.as_array().expect("array")));
                } else if let Value::Array(items) = val {
                    let rendered: Vec<String> = items.iter().map(scalar_str).collect();
                    let _ = writeln!(out, "{k}  [{}]", rendered.join(", "));
                }
            }
            out.trim_end().to_string()
        }
        Value::Array(_) if is_object_array(v) => {
            object_array_table(v.as_array().expect("array")).trim_end().to_string()
        }
        Value::Array(items) => items
            .iter()
            .map(scalar_str)
            .collect::<Vec<_>>()
            .join("\n"),
        scalar => scalar_str(scalar),
    }
}

fn object_array_table(items: &[Value]) -> String {
    let keys: Vec<&String> = match items.first() {
        Some(Value::Object(map)) => map.keys().collect(),
        _ => return String::new(),
    };
    let mut rows: Vec<Vec<String>> = vec![keys.iter().map(|k| k.to_string()).collect()];
    for item in items {
        let map = item.as_object().expect("object row");
        rows.push(
            keys.iter()
                .map(|k| map.get(*k).map(scalar_str).unwrap_or_default())
                .collect(),
        );
    }
    let widths: Vec<usize> = (0..keys.len())
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, w)| format!("{cell:w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_cell(v: &Value) -> String {
    csv_escape(&scalar_str(v))
}

/// CSV rendering: tabular documents become rows, flat objects a header plus
/// one row. The main table inside a report (its only object-array field) is
/// what gets emitted.
fn render_csv(v: &Value) -> String {
    if is_object_array(v) {
        return object_array_csv(v.as_array().expect("array"));
    }
    match v {
        Value::Object(map) => {
            let arrays: Vec<&Value> = map.values().filter(|x| is_object_array(x)).collect();
            if arrays.len() == 1 {
                return object_array_csv(arrays[0].as_array().expect("array"));
            }
            let header: Vec<String> = map.keys().map(|k| csv_escape(k)).collect();
            let row: Vec<String> = map.values().map(csv_cell).collect();
            format!("{}\n{}", header.join(","), row.join(","))
        }
        Value::Array(items) => items
            .iter()
            .map(csv_cell)
            .collect::<Vec<_>>()
            .join("\n"),
        scalar => csv_cell(scalar),
    }
}

fn object_array_csv(items: &[Value]) -> String {
    let keys: Vec<&String> = match items.first() {
        Some(Value::Object(map)) => map.keys().collect(),
        _ => return String::new(),
    };
    let mut out: Vec<String> = vec![keys
        .iter()
        .map(|k| csv_escape(k))
        .collect::<Vec<_>>()
        .join(",")];
    for item in items {
        let map = item.as_object().expect("object row");
        out.push(
            keys.iter()
                .map(|k| map.get(*k).map(csv_cell).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(","),
        );
    }
    out.join("\n")
}
