//! `lrb`: construct left regular bands, analyse their algebras and verify
//! the two routes to Ext against each other.

mod analyze;
mod construct;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrb::io::parse_json;
use lrb::{FieldSpec, Lrb, LrbError};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "lrb",
    version,
    about = "Left regular bands and the homology of their algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Build a monoid and write it as JSON.
    Construct(ConstructArgs),
    /// Compute Ext tables, the quiver and homological dimensions.
    Analyze(AnalyzeArgs),
    /// Check axioms, idempotents and the bar-resolution oracle.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Free,
    Fpc,
    Covectors,
    Arrangement,
    ComplexSign,
    Kr,
    Rhodes,
    Quiver,
    Product,
    Submonoid,
}

#[derive(Args)]
struct ConstructArgs {
    kind: Kind,
    /// Comma separated alphabet (free).
    #[arg(long)]
    letters: Option<String>,
    /// Graph JSON (fpc).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// JSON array of sign vector strings such as "+-0" (covectors).
    #[arg(long)]
    covectors: Option<PathBuf>,
    /// Arrangement JSON (arrangement).
    #[arg(long)]
    normals: Option<PathBuf>,
    /// Number of coordinates (complex-sign).
    #[arg(long)]
    n: Option<usize>,
    /// Lattice JSON (kr, rhodes).
    #[arg(long)]
    lattice: Option<PathBuf>,
    /// Generators: `letter=lattice element` pairs for kr, element names for submonoid.
    #[arg(long)]
    gens: Option<String>,
    /// Quiver JSON (quiver).
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Monoid JSON files (product).
    #[arg(long)]
    left: Option<PathBuf>,
    #[arg(long)]
    right: Option<PathBuf>,
    /// Monoid JSON (submonoid).
    #[arg(long)]
    monoid: Option<PathBuf>,
    /// Maximum number of elements.
    #[arg(long, default_value_t = lrb::lrb::DEFAULT_SIZE_CAP)]
    cap: usize,
    /// Cap on the number of hyperplanes (arrangement).
    #[arg(long, default_value_t = lrb::constructions::DEFAULT_HYPERPLANE_CAP)]
    hyperplane_cap: usize,
    /// Output file; the monoid goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    monoid: PathBuf,
    /// Ext table as CSV (ext.csv).
    #[arg(long)]
    ext: bool,
    /// Quiver as Graphviz DOT (quiver.dot).
    #[arg(long)]
    quiver: bool,
    /// Global dimension (gldim.txt).
    #[arg(long)]
    gldim: bool,
    /// Leray number of the order complex of the monoid (leray.txt).
    #[arg(long)]
    leray: bool,
    /// Global dimension against its upper bounds (bounds.json).
    #[arg(long)]
    bounds: bool,
    /// Coefficient field: q or fp:P.
    #[arg(long, default_value = "q")]
    field: FieldSpec,
    /// Highest Ext degree; defaults to the length of the longest lattice chain.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Directory for the artifacts; they are printed to stdout when omitted.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    monoid: PathBuf,
    /// Re-check every monoid axiom and report the witness of a failure.
    #[arg(long)]
    axioms: bool,
    /// Orthogonal idempotents, the idempotent basis and the fibre decomposition.
    #[arg(long)]
    idempotents: bool,
    /// Compare bar-resolution Ext with the order-complex formula.
    #[arg(long)]
    oracle: bool,
    /// Compare Δ(0,1) with the clique complex of the commutation graph.
    #[arg(long)]
    geometric: bool,
    /// Highest degree compared by the oracle; defaults to the chain bound.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Nonzero-entry budget per bar coboundary.
    #[arg(long, default_value_t = lrb::oracle::DEFAULT_BAR_BUDGET)]
    budget: usize,
    #[arg(long, default_value = "q")]
    field: FieldSpec,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input, a resource cap, or an internal error.
    Error(LrbError),
    /// A file could not be read or written.
    Io(String),
    /// An error already written to stderr.
    Reported(LrbError),
    /// Every check ran and at least one did not pass.
    Verification,
}

impl From<LrbError> for Failure {
    fn from(e: LrbError) -> Self {
        Failure::Error(e)
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    Ok(parse_json(&read_text(path)?)?)
}

pub fn load_monoid(path: &Path) -> CliResult<Lrb> {
    Ok(lrb::io::read_monoid(&read_text(path)?)?)
}

pub fn report_error(kind: &str, message: &str) {
    eprintln!("{}", json!({ "error": kind, "message": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            report_error("Usage", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.command {
        Command::Construct(args) => construct::run(&args),
        Command::Analyze(args) => analyze::run(&args),
        Command::Verify(args) => verify::run(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Io(msg)) => {
            report_error("Io", &msg);
            ExitCode::from(2)
        }
        Err(Failure::Reported(e)) => exit_code(&e),
        Err(Failure::Error(e)) => {
            report_error(e.kind(), &e.to_string());
            exit_code(&e)
        }
    }
}

fn exit_code(e: &LrbError) -> ExitCode {
    match e {
        LrbError::VerificationFailed(_) => ExitCode::from(1),
        e if e.is_resource_cap() => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}
