//! Command-line front end for `muub`.
//!
//! [`dispatch`] parses an argument vector, runs one command, and returns a
//! [`CommandResult`] holding the JSON payload and the exit status. [`run`]
//! adds the printing and file writing the binary needs.

use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use muub::basis::{certify_family, frame_potential, OperatorBasis};
use muub::builtin::{
    builtin_qubit_family, builtin_qubit_n2, builtin_qutrit_family, builtin_qutrit_subspace,
};
use muub::entangled::{
    average_fidelity_exact_over, average_fidelity_mc_over, basis_action_table,
    covariant_orbit_check, entangled_mapping_table, orbit_initial_state, prime_entangled_mubs,
};
use muub::json::{
    basis_value, family_value, matrix_value, nonexistence_report_value, round_value,
    search_report_value, BasisJson, EntangledBasisJson, FamilyJson, StateJson,
};
use muub::pauli::{weyl, WeylIndex};
use muub::qkd::{run_protocol_with_rounds, ProtocolConfig};
use muub::search::{
    certify_n3_nonexistence, closure_check, default_phase_order, phase_search_with_limit,
    standard_seed, DEFAULT_CANDIDATE_LIMIT,
};
use muub::{Error, EPS};

pub mod reproduce;

/// Significant digits for every float in emitted JSON.
pub const OUTPUT_DIGITS: i32 = 12;

/// Seed used by randomized commands when none is given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    CertificationFailure,
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::CertificationFailure => 2,
            Status::UsageError => 64,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::CertificationFailure => "certification_failure",
            Status::UsageError => "usage_error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    /// Plain text shown instead of JSON (help and version output).
    pub text: Option<String>,
    pub out: Option<PathBuf>,
}

impl CommandResult {
    fn ok(payload: Value) -> Self {
        Self {
            status: Status::Ok,
            payload,
            text: None,
            out: None,
        }
    }

    fn check(passed: bool, payload: Value) -> Self {
        Self {
            status: if passed {
                Status::Ok
            } else {
                Status::CertificationFailure
            },
            ..Self::ok(payload)
        }
    }

    fn failure(status: Status, kind: &str, message: String) -> Self {
        Self {
            status,
            payload: json!({
                "status": status.label(),
                "error": {"kind": kind, "message": message},
            }),
            text: None,
            out: None,
        }
    }

    fn from_error(e: &Error) -> Self {
        Self::failure(status_for(e), e.kind(), e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// JSON text with floats rounded to [`OUTPUT_DIGITS`], or the plain text.
    pub fn render(&self) -> String {
        match &self.text {
            Some(t) => t.clone(),
            None => {
                let v = round_value(self.payload.clone(), OUTPUT_DIGITS);
                serde_json::to_string_pretty(&v).expect("JSON value") + "\n"
            }
        }
    }
}

/// Whether an error means "the math says no" rather than bad input.
fn status_for(e: &Error) -> Status {
    match e {
        Error::NonUnitary { .. }
        | Error::NotOrthogonal { .. }
        | Error::NotUnbiased { .. }
        | Error::ZeroConstant
        | Error::InvalidGenerator
        | Error::InconsistentAction { .. }
        | Error::NoConsistentImage { .. }
        | Error::NoValidPairing(_) => Status::CertificationFailure,
        _ => Status::UsageError,
    }
}

#[derive(Debug, Parser)]
#[command(name = "muub", version, about = "Mutually unbiased unitary bases: construct, search, certify")]
struct Cli {
    /// Write the JSON result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form bases and families.
    #[command(subcommand)]
    Builtin(Builtin),
    /// Certify a basis file.
    VerifyBasis(VerifyBasis),
    /// Certify that the given bases are pairwise unbiased with a common constant.
    VerifyMuub(VerifyMuub),
    /// Frame potential of a set of unitaries (default: the qubit family).
    FramePotential(FramePotential),
    /// Exhaustive root-of-unity phase search for unbiased bases.
    Search(Search),
    /// Certificate that no qubit family exists on three-dimensional subspaces.
    #[command(name = "nonexistence-n3")]
    NonexistenceN3,
    /// Whether a set of Weyl exponents is closed under addition mod d.
    Closure(Closure),
    /// Mutually unbiased bases of maximally entangled states for prime d.
    MubStates(MubStates),
    /// Average fidelity of estimating the twelve qubit unitaries.
    Fidelity(Fidelity),
    /// Where the qubit unitary bases send the Bell and magic bases.
    MappingTable,
    /// Orbit of a Bell or magic state under the F4 x F4 representation.
    OrbitCheck(OrbitCheck),
    /// Simulate the two-way key distribution protocol.
    Qkd(Qkd),
    /// Run every acceptance check and print a pass/fail table.
    Reproduce(Reproduce),
}

#[derive(Debug, Subcommand)]
enum Builtin {
    /// The three qubit bases on all of M(2), C = 1.
    QubitFamily,
    /// One basis of the qubit family.
    QubitBasis {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..3))]
        index: u8,
    },
    /// Two bases on span{I, sigma_axis}, C = 2.
    QubitN2 {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..4))]
        axis: u8,
    },
    /// The eight qutrit bases on all of M(3), C = 1.
    QutritFamily,
    /// One basis of the qutrit family.
    QutritBasis {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..8))]
        index: u8,
    },
    /// Three bases on span{I, A, A^2} for the Weyl operator A = X^a Z^b.
    QutritSubspace {
        #[arg(long, default_value_t = 1)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
    },
    /// The Weyl operator X^a Z^b in dimension d.
    Weyl {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Debug, Args)]
struct Tolerance {
    /// Absolute tolerance for every certification test.
    #[arg(long, default_value_t = EPS)]
    tol: f64,
}

#[derive(Debug, Args)]
struct VerifyBasis {
    file: PathBuf,
    #[command(flatten)]
    tol: Tolerance,
}

#[derive(Debug, Args)]
struct VerifyMuub {
    /// Basis or family files; at least two bases in total.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[command(flatten)]
    tol: Tolerance,
}

#[derive(Debug, Args)]
struct FramePotential {
    /// Basis or family files (default: the qubit family).
    files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct Search {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// Seed basis file (default: the standard seed for d, n).
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Roots of unity used for the phases (default: 4 for d = 2, else d).
    #[arg(long)]
    phase_order: Option<usize>,
    /// Scan even when the candidate count exceeds the built-in limit.
    #[arg(long)]
    force: bool,
    #[command(flatten)]
    tol: Tolerance,
}

#[derive(Debug, Args)]
struct Closure {
    #[arg(long)]
    d: usize,
    /// Exponent pairs, e.g. "(0,0),(1,0),(2,0)".
    #[arg(long)]
    set: String,
}

#[derive(Debug, Args)]
struct MubStates {
    #[arg(long)]
    d: usize,
}

#[derive(Debug, Args)]
struct Fidelity {
    /// Exact sum (the default when --trials is absent).
    #[arg(long, conflicts_with = "trials")]
    exact: bool,
    /// Monte-Carlo trial count.
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Input bases, e.g. "0,1,2".
    #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1, 2])]
    inputs: Vec<usize>,
    /// Measurement basis.
    #[arg(long, default_value_t = 0)]
    measure: usize,
}

#[derive(Debug, Args)]
struct OrbitCheck {
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..3))]
    basis: u8,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..4))]
    index: u8,
}

#[derive(Debug, Args)]
struct Qkd {
    #[arg(long)]
    rounds: u64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    eve: bool,
    /// Probabilities of Alice's three bases, e.g. "1,0,0".
    #[arg(long, value_delimiter = ',', num_args = 1)]
    weights: Option<Vec<f64>>,
    /// Pin Eve's measurement basis.
    #[arg(long, requires = "eve")]
    eve_basis: Option<usize>,
    /// Probability of a random Pauli error on the returning qubit.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Write every round as a JSON line.
    #[arg(long, value_name = "FILE")]
    dump_rounds: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Reproduce {
    /// Tolerance handed to every certification step.
    #[arg(long, default_value_t = EPS)]
    eps: f64,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    text: Some(e.to_string()),
                    ..CommandResult::ok(Value::Null)
                },
                _ => CommandResult::failure(Status::UsageError, "Usage", e.to_string()),
            };
        }
    };
    let mut result = match execute(cli.command) {
        Ok(r) => r,
        Err(e) => CommandResult::from_error(&e),
    };
    result.out = cli.out;
    result
}

/// [`dispatch`], then print or write the result. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let result = dispatch(argv);
    let text = result.render();
    match (&result.out, result.status) {
        (Some(path), Status::Ok | Status::CertificationFailure) if result.text.is_none() => {
            if let Err(e) = fs::write(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return Status::UsageError.exit_code();
            }
        }
        (_, Status::UsageError) => eprint!("{text}"),
        _ => print!("{text}"),
    }
    result.exit_code()
}

fn read_json(path: &Path) -> muub::Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Bases from a basis file or a family file.
fn read_bases(path: &Path, tol: f64) -> muub::Result<Vec<OperatorBasis>> {
    let v = read_json(path)?;
    let format = |e: serde_json::Error| Error::Format(format!("{}: {e}", path.display()));
    if v.get("bases").is_some() {
        let fam: FamilyJson = serde_json::from_value(v).map_err(format)?;
        fam.bases.iter().map(|b| b.to_basis(tol)).collect()
    } else {
        let b: BasisJson = serde_json::from_value(v).map_err(format)?;
        Ok(vec![b.to_basis(tol)?])
    }
}

fn execute(command: Command) -> muub::Result<CommandResult> {
    match command {
        Command::Builtin(b) => builtin(b),
        Command::VerifyBasis(a) => {
            let bases = read_bases(&a.file, a.tol.tol)?;
            let [basis] = <[OperatorBasis; 1]>::try_from(bases)
                .map_err(|_| Error::InvalidInput("expected a single basis".into()))?;
            let mut v = basis_value(&basis);
            v["certified"] = json!(true);
            Ok(CommandResult::ok(v))
        }
        Command::VerifyMuub(a) => {
            let mut bases = Vec::new();
            for f in &a.files {
                bases.extend(read_bases(f, a.tol.tol)?);
            }
            let fam = certify_family(bases, a.tol.tol)?;
            Ok(CommandResult::ok(json!({
                "constant": fam.constant(),
                "bases": fam.len(),
                "d": fam.d(),
                "n": fam.n(),
            })))
        }
        Command::FramePotential(a) => {
            let us = if a.files.is_empty() {
                builtin_qubit_family().unitaries()
            } else {
                let mut us = Vec::new();
                for f in &a.files {
                    for b in read_bases(f, EPS)? {
                        us.extend(b.into_elements());
                    }
                }
                us
            };
            let d = us.first().map_or(0, |u| u.rows());
            let fp = frame_potential(&us)?;
            Ok(CommandResult::ok(json!({
                "unitaries": us.len(),
                "d": d,
                "frame_potential": fp,
                "haar_value": 2.0,
            })))
        }
        Command::Search(a) => {
            let seed = match &a.seed_file {
                Some(f) => {
                    let bases = read_bases(f, a.tol.tol)?;
                    bases
                        .into_iter()
                        .next()
                        .ok_or_else(|| Error::InvalidInput("empty seed file".into()))?
                }
                None => standard_seed(a.d, a.n)?,
            };
            if seed.d() != a.d || seed.n() != a.n {
                return Err(Error::InvalidInput(format!(
                    "seed basis has d = {}, n = {}; expected d = {}, n = {}",
                    seed.d(),
                    seed.n(),
                    a.d,
                    a.n
                )));
            }
            let order = a.phase_order.unwrap_or_else(|| default_phase_order(a.d));
            let limit = (!a.force).then_some(DEFAULT_CANDIDATE_LIMIT);
            let report = phase_search_with_limit(&seed, order, a.tol.tol, limit)?;
            Ok(CommandResult::ok(search_report_value(&report)))
        }
        Command::NonexistenceN3 => {
            let r = certify_n3_nonexistence()?;
            Ok(CommandResult::check(r.certified, nonexistence_report_value(&r)))
        }
        Command::Closure(a) => {
            let set = parse_index_set(&a.set)?;
            let closed = closure_check(&set, a.d)?;
            Ok(CommandResult::ok(json!({
                "d": a.d,
                "set": set.iter().map(|(x, y)| [x, y]).collect::<Vec<_>>(),
                "size": set.len(),
                "closed": closed,
            })))
        }
        Command::MubStates(a) => mub_states(a.d),
        Command::Fidelity(a) => {
            let r = match a.trials {
                Some(t) => {
                    average_fidelity_mc_over(&a.inputs, a.measure, t, a.seed.unwrap_or(DEFAULT_SEED))?
                }
                None => average_fidelity_exact_over(&a.inputs, a.measure)?,
            };
            let mut v = serde_json::to_value(r).expect("plain data");
            if a.trials.is_some() {
                v["seed"] = json!(a.seed.unwrap_or(DEFAULT_SEED));
            }
            v["inputs"] = json!(a.inputs);
            v["measure"] = json!(a.measure);
            Ok(CommandResult::ok(v))
        }
        Command::MappingTable => {
            let m = entangled_mapping_table()?;
            let action = basis_action_table()?;
            Ok(CommandResult::ok(json!({
                "table": m.table,
                "formula": "(i + j) mod 2",
                "formula_mismatches": m.formula_mismatches.iter().map(|(i, j, k, f)| json!({
                    "state_basis": i, "unitary_basis": j, "computed": k, "formula": f,
                })).collect::<Vec<_>>(),
                "action_table": action.images.iter().enumerate().map(|(j, row)| json!({
                    "basis": j, "Z": row[0].to_string(), "X": row[1].to_string(),
                })).collect::<Vec<_>>(),
            })))
        }
        Command::OrbitCheck(a) => {
            let initial = orbit_initial_state(a.basis as usize, a.index as usize)?;
            let r = covariant_orbit_check(&initial)?;
            Ok(CommandResult::check(
                r.passed,
                json!({
                    "basis": a.basis,
                    "index": a.index,
                    "initial": StateJson::from(&initial),
                    "member_of": r.member_of,
                    "orbit_size": r.orbit.len(),
                    "stabilizer_size": r.stabilizer_size,
                    "orbit": r.orbit.iter().map(StateJson::from).collect::<Vec<_>>(),
                    "passed": r.passed,
                }),
            ))
        }
        Command::Qkd(a) => qkd(a),
        Command::Reproduce(a) => {
            let table = reproduce::reproduce_all(a.eps);
            let passed = table.iter().all(|c| c.passed);
            let text = reproduce::format_table(&table);
            let mut r = CommandResult::check(
                passed,
                json!({"passed": passed, "criteria": table}),
            );
            r.text = Some(text);
            Ok(r)
        }
    }
}

fn builtin(b: Builtin) -> muub::Result<CommandResult> {
    let v = match b {
        Builtin::QubitFamily => family_value(&builtin_qubit_family()),
        Builtin::QubitBasis { index } => basis_value(&builtin_qubit_family().bases()[index as usize]),
        Builtin::QubitN2 { axis } => family_value(&builtin_qubit_n2(axis as usize)?),
        Builtin::QutritFamily => family_value(&builtin_qutrit_family()?),
        Builtin::QutritBasis { index } => {
            basis_value(&builtin_qutrit_family()?.bases()[index as usize])
        }
        Builtin::QutritSubspace { a, b } => {
            family_value(&builtin_qutrit_subspace(WeylIndex::new(3, a, b)?)?)
        }
        Builtin::Weyl { d, a, b } => matrix_value(&weyl(WeylIndex::new(d, a, b)?)),
    };
    Ok(CommandResult::ok(v))
}

/// Parses `"(0,0),(1,2)"`; whitespace is ignored.
pub fn parse_index_set(text: &str) -> muub::Result<Vec<(usize, usize)>> {
    let bad = || Error::InvalidInput(format!("cannot parse index set {text:?}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let inner = compact
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    inner
        .split("),(")
        .map(|pair| {
            let (a, b) = pair.split_once(',').ok_or_else(bad)?;
            Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        })
        .collect()
}

fn mub_states(d: usize) -> muub::Result<CommandResult> {
    let bases = prime_entangled_mubs(d)?;
    let target = 1.0 / d as f64;
    let mut max_overlap_dev: f64 = 0.0;
    for i in 0..bases.len() {
        for j in i + 1..bases.len() {
            let (lo, hi) = bases[i].cross_overlap_range(&bases[j]);
            max_overlap_dev = max_overlap_dev
                .max((lo - target).abs())
                .max((hi - target).abs());
        }
    }
    let mut max_reduced_dev: f64 = 0.0;
    let mixed = muub::ComplexMatrix::identity(d).scale(muub::linalg::ONE * target);
    for b in &bases {
        for s in b.states() {
            let (ra, rb) = s.reduced_density_matrices(d)?;
            max_reduced_dev = max_reduced_dev
                .max(ra.max_abs_diff(&mixed))
                .max(rb.max_abs_diff(&mixed));
        }
    }
    Ok(CommandResult::ok(json!({
        "d": d,
        "count": bases.len(),
        "overlap_modulus": target,
        "max_overlap_deviation": max_overlap_dev,
        "max_reduced_state_deviation": max_reduced_dev,
        "bases": bases.iter().map(EntangledBasisJson::from).collect::<Vec<_>>(),
    })))
}

fn qkd(a: Qkd) -> muub::Result<CommandResult> {
    let seed = a.seed.unwrap_or(DEFAULT_SEED);
    let mut cfg = ProtocolConfig::new(a.rounds, seed).with_eve(a.eve);
    if let Some(w) = a.weights {
        cfg.basis_weights = <[f64; 3]>::try_from(w.as_slice())
            .map_err(|_| Error::InvalidInput("--weights needs three values".into()))?;
    }
    cfg.eve_basis = a.eve_basis;
    cfg.noise = a.noise;
    let (report, rounds) = run_protocol_with_rounds(&cfg)?;
    if let Some(path) = &a.dump_rounds {
        let mut lines = String::new();
        for r in &rounds {
            lines.push_str(&serde_json::to_string(r).expect("plain data"));
            lines.push('\n');
        }
        fs::write(path, lines)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    }
    let mut v = serde_json::to_value(&report).expect("plain data");
    v["expected_sift_decomposition"] = json!(report
        .per_basis
        .iter()
        .map(|b| b.expected_sift_rate)
        .collect::<Vec<_>>());
    Ok(CommandResult::ok(v))
}
