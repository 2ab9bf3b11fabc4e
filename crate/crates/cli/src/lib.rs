//! The `qortho` command line.
//!
//! Every command writes one document: a JSON object
//! `{schema_version, config, records, summary, data}` or a CSV projection of
//! it. The exit status summarises the records:
//!
//! | code | meaning |
//! |------|---------|
//! | 0    | every check passed |
//! | 1    | a check failed, or could not be evaluated |
//! | 2    | no failures, but at least one check was inconclusive |
//! | 64   | usage error (bad flag or parameter domain) |
//! | 74   | the output could not be written |

mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qortho_core::orthogonality::{Identity, Precision, Status, VerificationReport, VerifyOptions};
use qortho_core::{QParams, Truncation};

pub use output::{format_f64, to_csv, to_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(
    name = "qortho",
    version,
    about = "Numerical checks for big q-Laguerre and q-Meixner polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Verify,
    Spectrum,
    Table,
    Limit,
    ReportAll,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run orthogonality and biorthogonality checks over the index grid.
    Verify(Options),
    /// Compare truncated-matrix eigenvalues with the exact spectrum.
    Spectrum(Options),
    /// Tabulate polynomial values and normalization constants.
    Table(Options),
    /// Run the q -> 1 limit sweeps.
    Limit(Options),
    /// Run every suite into a single report.
    ReportAll(Options),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityArg {
    BigLaguerre,
    Sears,
    Unitarity,
    Dual,
    Meixner,
    MeixnerNegb,
    EqZero,
    Biortho,
    All,
}

impl IdentityArg {
    pub fn identities(self) -> Vec<Identity> {
        match self {
            IdentityArg::BigLaguerre => vec![Identity::BigLaguerre],
            IdentityArg::Sears => vec![Identity::Sears],
            IdentityArg::Unitarity => vec![Identity::Unitarity],
            IdentityArg::Dual => vec![Identity::Dual],
            IdentityArg::Meixner => vec![Identity::Meixner],
            IdentityArg::MeixnerNegb => vec![Identity::MeixnerNegB],
            IdentityArg::EqZero => vec![Identity::EqZero],
            IdentityArg::Biortho => vec![Identity::Biortho],
            IdentityArg::All => Identity::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PrecisionArg {
    Double,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct Options {
    /// Base q, in (0, 1).
    #[arg(long, default_value_t = 0.5)]
    pub q: f64,
    /// Parameter a, in (0, 1/q).
    #[arg(long, default_value_t = 0.5)]
    pub a: f64,
    /// Parameter b, negative.
    #[arg(long, default_value_t = -0.7)]
    pub b: f64,
    /// Lowest weight; overrides a with q^(2l-1).
    #[arg(long)]
    pub l: Option<f64>,
    #[arg(long, value_enum, default_value_t = IdentityArg::All)]
    pub identity: IdentityArg,
    #[arg(long, default_value_t = 8)]
    pub index_max: usize,
    /// Truncation size of the matrix of A.
    #[arg(long, default_value_t = 200)]
    pub dim: usize,
    /// Relative tolerance of every check.
    #[arg(long = "tol", default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    pub precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; all cores when absent.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Leave the generation time out of the report.
    #[arg(long)]
    pub no_timestamp: bool,
    /// Limit sweeps: exponent with a = q^alpha (default 2l - 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Limit sweeps: exponent with b = q^beta / (q - 1).
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    /// Limit sweeps: polynomial argument.
    #[arg(long, default_value_t = 0.4)]
    pub x: f64,
    /// Limit sweeps: eigenvalue of the eigenfunction checks.
    #[arg(long, default_value_t = 0.3)]
    pub lambda: f64,
    /// Limit sweeps run over q = 1 - 2^-k, k = 2..=k-max.
    #[arg(long, default_value_t = 10)]
    pub k_max: u32,
}

/// Validated settings, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandName,
    pub params: QParams,
    pub identity: IdentityArg,
    pub index_max: usize,
    pub dim: usize,
    pub tolerance: f64,
    pub precision: PrecisionArg,
    pub format: Format,
    pub limit: LimitConfig,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: Option<usize>,
    #[serde(skip)]
    pub timestamp: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitConfig {
    pub alpha: f64,
    pub beta: f64,
    pub x: f64,
    pub lambda: f64,
    pub k_max: u32,
}

/// A failure before any computation, reported with exit status 64.
#[derive(Debug, Clone, PartialEq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl RunConfig {
    pub fn from_options(command: CommandName, o: &Options) -> Result<Self, UsageError> {
        let usage = |e: qortho_core::Error| UsageError(e.to_string());
        let params = match o.l {
            Some(l) => QParams::from_weight(o.q, l, o.b).map_err(usage)?,
            None => QParams::new(o.q, o.a, o.b).map_err(usage)?,
        };
        if !(o.tolerance > 0.0 && o.tolerance.is_finite()) {
            return Err(UsageError(format!(
                "tol must be positive (got {})",
                o.tolerance
            )));
        }
        if o.dim == 0 {
            return Err(UsageError("dim must be at least 1".into()));
        }
        if o.jobs == Some(0) {
            return Err(UsageError("jobs must be at least 1".into()));
        }
        if !(2..=52).contains(&o.k_max) {
            return Err(UsageError(format!(
                "k-max must lie in 2..=52 (got {})",
                o.k_max
            )));
        }
        let alpha = o.alpha.unwrap_or(2.0 * params.l - 1.0);
        if alpha.is_nan() || alpha <= -1.0 {
            return Err(UsageError(format!("alpha must exceed -1 (got {alpha})")));
        }
        Ok(RunConfig {
            command,
            params,
            identity: o.identity,
            index_max: o.index_max,
            dim: o.dim,
            tolerance: o.tolerance,
            precision: o.precision,
            format: o.format,
            limit: LimitConfig {
                alpha,
                beta: o.beta,
                x: o.x,
                lambda: o.lambda,
                k_max: o.k_max,
            },
            out: o.out.clone(),
            jobs: o.jobs,
            timestamp: !o.no_timestamp,
        })
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            truncation: Truncation::default(),
            tolerance: self.tolerance,
            precision: match self.precision {
                PrecisionArg::Double => Precision::Double,
                PrecisionArg::Extended => Precision::Extended,
            },
        }
    }
}

/// Record counts by status.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn of(records: &[VerificationReport]) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Passed => s.passed += 1,
                Status::Failed => s.failed += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            EXIT_FAILED
        } else if self.inconclusive > 0 {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_OK
        }
    }
}

/// Output of one command before serialisation.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub config: RunConfig,
    /// Sorted by `(identity_id, indices)`.
    pub records: Vec<VerificationReport>,
    /// Command-specific plot data.
    pub data: serde_json::Value,
    /// Rows of the `table` command, written instead of the records in CSV.
    pub table: Option<Vec<commands::TableRow>>,
    /// Seconds since the Unix epoch, when timestamps are enabled.
    pub generated_at: Option<u64>,
}

impl Document {
    pub fn summary(&self) -> Summary {
        Summary::of(&self.records)
    }
}

pub use commands::{execute, TableRow};

/// Parses `args`, runs the command and writes its output; returns the exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (name, opts) = match &cli.command {
        Command::Verify(o) => (CommandName::Verify, o),
        Command::Spectrum(o) => (CommandName::Spectrum, o),
        Command::Table(o) => (CommandName::Table, o),
        Command::Limit(o) => (CommandName::Limit, o),
        Command::ReportAll(o) => (CommandName::ReportAll, o),
    };
    let config = match RunConfig::from_options(name, opts) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let doc = match execute(&config) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_FAILED;
        }
    };
    let text = match config.format {
        Format::Json => to_json(&doc),
        Format::Csv => to_csv(&doc),
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_IO;
        }
    };
    let written = match &config.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_IO;
    }
    let s = doc.summary();
    let _ = writeln!(
        stderr,
        "{} passed, {} failed, {} inconclusive",
        s.passed, s.failed, s.inconclusive
    );
    s.exit_code()
}
