//! Command-line front end for `qutrit-gain-core`.
//!
//! Exit codes: 0 ok, 1 bound violated, 2 input could not be parsed,
//! 3 validation or usage error, 4 state not decomposable.

pub mod format;

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qutrit_gain_core::{
    check_form_conditions, embed_qutrit, extract_decomposition, gamma_sweep, qubit_portrait,
    random_decomposable, verify_ensemble, DensityMatrix, Error as CoreError, SweepRow, TensorDecomposition,
    DEFAULT_BOUND_TOL, DEFAULT_FORM_TOL,
};

use crate::format::{format_complex, format_matrix, format_sig, parse_gamma_grid, MatrixFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_VIOLATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NOT_DECOMPOSABLE: i32 = 4;

pub const SWEEP_CSV_HEADER: [&str; 6] = ["gamma", "entropy_in", "entropy_out", "lhs_gain", "rhs_bound", "slack"];

#[derive(Parser, Debug)]
#[command(name = "qutrit-gain", version, about = "Entropy-gain bounds for qutrits embedded in two-qubit systems")]
pub struct Cli {
    /// Numerical tolerance (decompose: form conditions, default 1e-9;
    /// sweep/verify: slack floor, default 1e-8)
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Seed for generated states
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Von Neumann entropy (nats) of a density matrix
    Entropy(InputArg),
    /// Qubit portrait of a qutrit and its entropy
    Portrait(InputArg),
    /// Check the two-term tensor form of a two-qubit state and extract it
    Decompose(InputArg),
    /// Sweep the amplitude damping strength and write both sides of the bound as CSV
    Sweep(SweepArgs),
    /// Monte Carlo check of the bound over seeded decomposable states
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct InputArg {
    /// Matrix file (JSON with "dim" and row-major "entries" of [re, im] pairs)
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// State to sweep: a 4x4 decomposable state or a 3x3 qutrit (embedded).
    /// Without it the state is generated from --seed.
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Gamma values: start:end:step or a comma-separated list
    #[arg(long, default_value = "0:1:0.1")]
    pub gamma_grid: String,

    /// CSV destination; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Number of seeded states
    #[arg(long)]
    pub samples: usize,

    /// Gamma values: start:end:step or a comma-separated list
    #[arg(long, default_value = "0:1:0.1")]
    pub gamma_grid: String,
}

/// A failure that ends the process with a specific exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn parse(message: impl Into<String>) -> Self {
        Self { code: EXIT_PARSE, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::validation(format!("I/O error: {e}"))
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::NotDecomposable(_) | CoreError::InconsistentEntries { .. } => EXIT_NOT_DECOMPOSABLE,
            _ => EXIT_VALIDATION,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult = Result<i32, CliError>;

/// Parses `args` (including the program name) and runs the command. Reports go
/// to `out`, diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_VALIDATION
                }
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    if let Some(tol) = cli.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(CliError::validation(format!("--tol must be a non-negative number, got {tol}")));
        }
    }
    match &cli.command {
        Command::Entropy(a) => cmd_entropy(&a.input, out),
        Command::Portrait(a) => cmd_portrait(&a.input, out),
        Command::Decompose(a) => cmd_decompose(&a.input, cli.tol.unwrap_or(DEFAULT_FORM_TOL), out),
        Command::Sweep(a) => cmd_sweep(a, cli.seed, cli.tol.unwrap_or(DEFAULT_BOUND_TOL), out, err),
        Command::Verify(a) => cmd_verify(a, cli.seed.unwrap_or(0), cli.tol.unwrap_or(DEFAULT_BOUND_TOL), out),
    }
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    MatrixFile::parse(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

fn read_state(path: &Path) -> Result<DensityMatrix, CliError> {
    let file = read_matrix_file(path)?;
    DensityMatrix::new(file.to_matrix())
        .map_err(|e| CliError::validation(format!("{}: invalid density matrix: {e}", path.display())))
}

fn require_dim(rho: &DensityMatrix, dim: usize, what: &str) -> Result<(), CliError> {
    if rho.dim() != dim {
        return Err(CliError::validation(format!("{what} needs a {dim}x{dim} matrix, got d = {}", rho.dim())));
    }
    Ok(())
}

fn cmd_entropy(path: &Path, out: &mut dyn Write) -> CliResult {
    let rho = read_state(path)?;
    writeln!(out, "{}", format_sig(rho.entropy()))?;
    Ok(EXIT_OK)
}

fn cmd_portrait(path: &Path, out: &mut dyn Write) -> CliResult {
    let rho = read_state(path)?;
    require_dim(&rho, 3, "portrait")?;
    let sigma = qubit_portrait(&rho)?;
    writeln!(out, "portrait:")?;
    write!(out, "{}", format_matrix(sigma.matrix()))?;
    writeln!(out, "entropy = {}", format_sig(sigma.entropy()))?;
    Ok(EXIT_OK)
}

fn write_decomposition(dec: &TensorDecomposition, out: &mut dyn Write) -> std::io::Result<()> {
    let a = dec.alpha();
    writeln!(out, "alpha:")?;
    write!(out, "{}", format_matrix(a))?;
    let vec = |h: [num_complex::Complex64; 2]| format!("{} {}", format_complex(h[0]), format_complex(h[1]));
    writeln!(out, "h1 = {}", vec(dec.h1()))?;
    writeln!(out, "h2 = {}", vec(dec.h2()))
}

fn cmd_decompose(path: &Path, tol: f64, out: &mut dyn Write) -> CliResult {
    let rho = read_state(path)?;
    require_dim(&rho, 4, "decompose")?;
    let diag = check_form_conditions(&rho, tol)?;
    writeln!(out, "minor_residual = {}", format_sig(diag.minor_residual))?;
    writeln!(out, "det3_residual = {}", format_sig(diag.det3_residual))?;
    writeln!(out, "support_residual = {}", format_sig(diag.support_residual))?;
    writeln!(out, "tol = {tol:e}")?;
    writeln!(out, "decomposable = {}", diag.decomposable)?;
    if !diag.decomposable {
        return Ok(EXIT_NOT_DECOMPOSABLE);
    }
    let dec = extract_decomposition(&rho, tol)?;
    write_decomposition(&dec, out)?;
    Ok(EXIT_OK)
}

fn gamma_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let grid = parse_gamma_grid(spec).map_err(CliError::validation)?;
    if let Some(bad) = grid.iter().find(|g| !(0.0..=1.0).contains(*g)) {
        return Err(CliError::validation(format!("gamma = {bad} is outside [0, 1]")));
    }
    Ok(grid)
}

fn sweep_state(args: &SweepArgs, seed: Option<u64>) -> Result<TensorDecomposition, CliError> {
    match (&args.input, seed) {
        (Some(_), Some(_)) => Err(CliError::validation("sweep takes either --input or --seed, not both")),
        (None, None) => Err(CliError::validation("sweep needs --input <FILE> or --seed <N>")),
        (None, Some(seed)) => Ok(random_decomposable(seed)),
        (Some(path), None) => {
            let mut rho = read_state(path)?;
            if rho.dim() == 3 {
                rho = embed_qutrit(&rho)?;
            }
            require_dim(&rho, 4, "sweep --input")?;
            Ok(extract_decomposition(&rho, DEFAULT_FORM_TOL)?)
        }
    }
}

/// Renders sweep rows as CSV with the fixed header.
pub fn sweep_csv(rows: &[SweepRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::validation(format!("CSV error: {e}"));
    w.write_record(SWEEP_CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([r.gamma, r.entropy_in, r.entropy_out, r.lhs, r.rhs, r.slack].map(format_sig))
            .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::validation(format!("CSV error: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV output is ASCII"))
}

fn cmd_sweep(args: &SweepArgs, seed: Option<u64>, tol: f64, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let grid = gamma_grid(&args.gamma_grid)?;
    let dec = sweep_state(args, seed)?;
    let rows = gamma_sweep(&dec, &grid)?;
    let csv = sweep_csv(&rows)?;
    let min_slack = rows.iter().map(|r| r.slack).fold(f64::INFINITY, f64::min);
    let summary = format!("min slack = {}", format_sig(min_slack));
    match &args.out {
        Some(path) => {
            fs::write(path, csv)?;
            writeln!(out, "wrote {} rows to {}", rows.len(), path.display())?;
            writeln!(out, "{summary}")?;
        }
        None => {
            write!(out, "{csv}")?;
            writeln!(err, "{summary}")?;
        }
    }
    Ok(if min_slack >= -tol { EXIT_OK } else { EXIT_BOUND_VIOLATION })
}

fn cmd_verify(args: &VerifyArgs, seed: u64, tol: f64, out: &mut dyn Write) -> CliResult {
    if args.samples == 0 {
        return Err(CliError::validation("--samples must be at least 1"));
    }
    let grid = gamma_grid(&args.gamma_grid)?;
    let summary = verify_ensemble(args.samples, seed, &grid, tol)?;
    writeln!(
        out,
        "checked = {} ({} states x {} gamma values, seeds {}..{})",
        summary.checked,
        args.samples,
        grid.len(),
        seed,
        seed.wrapping_add(args.samples as u64 - 1)
    )?;
    writeln!(out, "tol = {tol:e}")?;
    writeln!(out, "min slack = {}", format_sig(summary.min_slack))?;
    if let Some(w) = summary.worst {
        writeln!(
            out,
            "worst case: seed = {}, gamma = {}, lhs = {}, rhs = {}, slack = {}",
            w.seed,
            format_sig(w.gamma),
            format_sig(w.report.lhs),
            format_sig(w.report.rhs),
            format_sig(w.report.slack)
        )?;
    }
    writeln!(out, "violations = {}", summary.violations.len())?;
    for v in &summary.violations {
        writeln!(
            out,
            "violation: seed = {}, gamma = {}, lhs = {}, rhs = {}, slack = {}",
            v.seed,
            format_sig(v.gamma),
            format_sig(v.report.lhs),
            format_sig(v.report.rhs),
            format_sig(v.report.slack)
        )?;
    }
    Ok(if summary.all_hold() { EXIT_OK } else { EXIT_BOUND_VIOLATION })
}
