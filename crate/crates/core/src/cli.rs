//! The `qspace` command-line frontend.
//!
//! Every command writes a single JSON document to stdout (or to `--out`).
//! Commands that act on a state read a Qubit document from stdin, so they can
//! be chained with shell pipes:
//!
//! ```text
//! qspace state --a 0.6 --b 0.8 | qspace basic --phi 0 --alpha-im 1 | qspace recover --phi 0 --alpha-im 1
//! ```
//!
//! Exit codes: 0 success, 1 domain or input error, 2 usage error.

use std::f64::consts::FRAC_1_SQRT_2;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Error;
use crate::fuzzy::{cells_for_register, fuzzy_sphere, noncommutativity, verify_sphere};
use crate::linalg::{ComplexMatrix, MAX_DIMENSION};
use crate::measurement::{
    basic_measure, basic_measure_in_basis, recover, recover_in_basis, standard_measure,
    DiagonalUnitary,
};
use crate::qubit::{dual_basis, from_bloch, Qubit};
use crate::rotation::{apply_unitary, decompose_unitary, UnitaryGate2};

/// Residual bound used by `fuzzy … verify`.
pub const VERIFY_TOL: f64 = 1e-9;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qspace", version, about = "Projective and reversible qubit measurement, Bloch rotations, fuzzy spheres")]
struct Cli {
    /// Emit single-line JSON.
    #[arg(long, global = true)]
    compact: bool,

    /// Write the JSON document to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Create a normalized qubit state.
    #[command(allow_negative_numbers = true)]
    State(StateArgs),
    /// Standard (collapsing) measurement of the state on stdin.
    Measure {
        /// Seed for the measurement generator.
        #[arg(long)]
        seed: u64,
    },
    /// Basic measurement: apply e^{iφ} diag(α, α*) to the state on stdin.
    #[command(allow_negative_numbers = true)]
    Basic(DiagonalArgs),
    /// Undo a basic measurement with the same parameters.
    #[command(allow_negative_numbers = true)]
    Recover(DiagonalArgs),
    /// Apply a one-qubit unitary to the state on stdin.
    #[command(allow_negative_numbers = true)]
    Rotate(GateArgs),
    /// Decompose a unitary into global phase, angle and axis. Without gate
    /// flags, a matrix document is read from stdin.
    #[command(allow_negative_numbers = true)]
    Decompose(GateArgs),
    /// Fuzzy sphere with n cells.
    Fuzzy {
        #[arg(long)]
        n: usize,
        #[arg(value_enum, default_value = "info")]
        mode: FuzzyMode,
    },
    /// Cell count n = 2^N for an N-qubit register.
    Register {
        #[arg(long)]
        qubits: u32,
    },
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long = "a-re", visible_alias = "a", value_name = "RE", conflicts_with_all = ["basis", "theta"])]
    a_re: Option<f64>,
    #[arg(long = "a-im", value_name = "IM", conflicts_with_all = ["basis", "theta"])]
    a_im: Option<f64>,
    #[arg(long = "b-re", visible_alias = "b", value_name = "RE", conflicts_with_all = ["basis", "theta"])]
    b_re: Option<f64>,
    #[arg(long = "b-im", value_name = "IM", conflicts_with_all = ["basis", "theta"])]
    b_im: Option<f64>,
    /// Polar angle on the Bloch sphere, in [0, π].
    #[arg(long, conflicts_with = "basis")]
    theta: Option<f64>,
    /// Azimuth on the Bloch sphere, in [0, 2π).
    #[arg(long, requires = "theta")]
    azimuth: Option<f64>,
    /// Named basis state.
    #[arg(long, value_enum)]
    basis: Option<NamedState>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NamedState {
    Zero,
    One,
    Plus,
    Minus,
}

#[derive(Debug, Args)]
struct DiagonalArgs {
    /// Global phase φ in radians.
    #[arg(long, default_value_t = 0.0)]
    phi: f64,
    #[arg(long = "alpha-re", default_value_t = 1.0)]
    alpha_re: f64,
    #[arg(long = "alpha-im", default_value_t = 0.0)]
    alpha_im: f64,
    /// Measurement basis; `dual` conjugates by the Hadamard matrix.
    #[arg(long, value_enum, default_value = "computational")]
    basis: MeasureBasis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureBasis {
    Computational,
    Dual,
}

#[derive(Debug, Args)]
struct GateArgs {
    /// Named gate.
    #[arg(long, value_enum, conflicts_with_all = ["phi", "alpha_re", "alpha_im", "beta_re", "beta_im"])]
    gate: Option<NamedGate>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long = "alpha-re")]
    alpha_re: Option<f64>,
    #[arg(long = "alpha-im")]
    alpha_im: Option<f64>,
    #[arg(long = "beta-re")]
    beta_re: Option<f64>,
    #[arg(long = "beta-im")]
    beta_im: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NamedGate {
    Identity,
    Hadamard,
    X,
    Y,
    Z,
    S,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuzzyMode {
    Info,
    Verify,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Domain(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

/// Rendered JSON plus an optional failure raised after rendering (used by
/// `fuzzy verify`, which prints its report and still exits nonzero).
struct Output {
    doc: serde_json::Value,
    failure: Option<CliError>,
}

impl Output {
    fn ok<T: Serialize>(value: &T) -> Result<Self, CliError> {
        let doc = serde_json::to_value(value).map_err(|e| CliError::Domain(e.to_string()))?;
        Ok(Output { doc, failure: None })
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, S>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(sink, "{rendered}");
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };

    let result = execute(&cli.command, stdin).and_then(|out| {
        let text = if cli.compact {
            serde_json::to_string(&out.doc)
        } else {
            serde_json::to_string_pretty(&out.doc)
        }
        .map_err(|e| CliError::Domain(e.to_string()))?;
        match &cli.out {
            Some(path) => std::fs::write(path, format!("{text}\n"))
                .map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))?,
            None => writeln!(stdout, "{text}").map_err(|e| CliError::Domain(e.to_string()))?,
        }
        match out.failure {
            Some(f) => Err(f),
            None => Ok(()),
        }
    });

    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "qspace: {}", e.message());
            e.exit_code()
        }
    }
}

fn execute(command: &Command, stdin: &mut dyn Read) -> Result<Output, CliError> {
    match command {
        Command::State(args) => Output::ok(&build_state(args)?),
        Command::Measure { seed } => {
            let q: Qubit = read_stdin(stdin, "Qubit")?;
            Output::ok(&standard_measure(&q, *seed))
        }
        Command::Basic(args) => {
            let q: Qubit = read_stdin(stdin, "Qubit")?;
            let u = DiagonalUnitary::new(args.phi, Complex64::new(args.alpha_re, args.alpha_im))?;
            let out = match args.basis {
                MeasureBasis::Computational => basic_measure(&q, &u)?,
                MeasureBasis::Dual => basic_measure_in_basis(&q, &u, &ComplexMatrix::hadamard())?,
            };
            Output::ok(&out)
        }
        Command::Recover(args) => {
            let q: Qubit = read_stdin(stdin, "Qubit")?;
            let u = DiagonalUnitary::new(args.phi, Complex64::new(args.alpha_re, args.alpha_im))?;
            let out = match args.basis {
                MeasureBasis::Computational => recover(&q, &u)?,
                MeasureBasis::Dual => recover_in_basis(&q, &u, &ComplexMatrix::hadamard())?,
            };
            Output::ok(&out)
        }
        Command::Rotate(args) => {
            let gate = match gate_matrix_from_args(args)? {
                Some(m) => UnitaryGate2::from_matrix(&m)?,
                None => return Err(CliError::Usage("rotate needs --gate or gate parameters".into())),
            };
            let q: Qubit = read_stdin(stdin, "Qubit")?;
            Output::ok(&apply_unitary(&gate, &q))
        }
        Command::Decompose(args) => {
            let m = match gate_matrix_from_args(args)? {
                Some(m) => m,
                None => read_stdin::<ComplexMatrix>(stdin, "matrix")?,
            };
            Output::ok(&decompose_unitary(&m)?)
        }
        Command::Fuzzy { n, mode } => fuzzy_command(*n, *mode),
        Command::Register { qubits } => {
            let n = cells_for_register(*qubits)?;
            Output::ok(&serde_json::json!({ "n": n }))
        }
    }
}

fn build_state(args: &StateArgs) -> Result<Qubit, CliError> {
    if let Some(named) = args.basis {
        let (plus, minus) = dual_basis();
        return Ok(match named {
            NamedState::Zero => Qubit::ZERO,
            NamedState::One => Qubit::ONE,
            NamedState::Plus => plus,
            NamedState::Minus => minus,
        });
    }
    if let Some(theta) = args.theta {
        return Ok(from_bloch(theta, args.azimuth.unwrap_or(0.0))?);
    }
    let given = [args.a_re, args.a_im, args.b_re, args.b_im];
    if given.iter().all(Option::is_none) {
        return Err(CliError::Usage(
            "state needs amplitudes (--a-re/--a-im/--b-re/--b-im), --theta, or --basis".into(),
        ));
    }
    let [a_re, a_im, b_re, b_im] = given.map(|x| x.unwrap_or(0.0));
    Ok(Qubit::new(Complex64::new(a_re, a_im), Complex64::new(b_re, b_im))?)
}

fn named_gate(g: NamedGate) -> ComplexMatrix {
    let c = Complex64::new;
    match g {
        NamedGate::Identity => ComplexMatrix::identity(2),
        NamedGate::Hadamard => ComplexMatrix::hadamard(),
        NamedGate::X => ComplexMatrix::pauli_x(),
        NamedGate::Y => ComplexMatrix::pauli_y(),
        NamedGate::Z => ComplexMatrix::pauli_z(),
        NamedGate::S => ComplexMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]),
        NamedGate::T => ComplexMatrix::diagonal(&[c(1.0, 0.0), c(FRAC_1_SQRT_2, FRAC_1_SQRT_2)]),
    }
}

fn gate_matrix_from_args(args: &GateArgs) -> Result<Option<ComplexMatrix>, CliError> {
    if let Some(named) = args.gate {
        return Ok(Some(named_gate(named)));
    }
    let params = [args.phi, args.alpha_re, args.alpha_im, args.beta_re, args.beta_im];
    if params.iter().all(Option::is_none) {
        return Ok(None);
    }
    let [phi, a_re, a_im, b_re, b_im] = params.map(|x| x.unwrap_or(0.0));
    let gate = UnitaryGate2::new(phi, Complex64::new(a_re, a_im), Complex64::new(b_re, b_im))?;
    Ok(Some(gate.matrix()))
}

fn fuzzy_command(n: usize, mode: FuzzyMode) -> Result<Output, CliError> {
    if !(2..=MAX_DIMENSION).contains(&n) {
        return Err(CliError::Domain(format!("cell count must be in 2..={MAX_DIMENSION}, got {n}")));
    }
    match mode {
        FuzzyMode::Info => Output::ok(&serde_json::json!({
            "n": n,
            "k": noncommutativity(n),
            "dimensions": [n, n],
        })),
        FuzzyMode::Verify => {
            let report = verify_sphere(&fuzzy_sphere(n)?);
            let mut out = Output::ok(&report)?;
            if !report.residuals.all_within(VERIFY_TOL) {
                out.failure = Some(CliError::Domain(format!(
                    "fuzzy sphere residual {:e} exceeds {VERIFY_TOL:e}",
                    report.residuals.max()
                )));
            }
            Ok(out)
        }
    }
}

fn read_stdin<T: DeserializeOwned>(stdin: &mut dyn Read, what: &str) -> Result<T, CliError> {
    let mut text = String::new();
    stdin
        .read_to_string(&mut text)
        .map_err(|e| CliError::Domain(format!("cannot read stdin: {e}")))?;
    if text.trim().is_empty() {
        return Err(CliError::Domain(format!("expected a {what} JSON document on stdin")));
    }
    parse_document(&text, what)
}

/// Parses a JSON document, reporting the path of the offending field.
fn parse_document<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::Domain(format!("malformed {what} JSON: {inner}"))
        } else {
            CliError::Domain(format!("malformed {what} JSON at field `{path}`: {inner}"))
        }
    })
}
