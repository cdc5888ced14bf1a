//! `lpa`: command-line front end for lpa-core.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lpa_core::{ErrorCategory, FieldSpec, Limits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
    JsonLines,
}

#[derive(Parser)]
#[command(name = "lpa", version, about = "Leavitt path algebra computations on finite digraphs")]
pub struct Cli {
    /// Coefficient field, Q or F<p>; overrides the ideal file.
    #[arg(long, global = true)]
    pub field: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Vertex classes, cycles and hereditary saturated sets.
    Analyze { graph: PathBuf },
    /// Hereditary saturated closure of a vertex set.
    Closure {
        graph: PathBuf,
        /// Comma-separated vertex ids.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
    },
    /// The graded quotient Γ/(H,S).
    Quotient { graph: PathBuf, ideal: PathBuf },
    /// Is the quotient by the ideal a Leavitt path algebra?
    Decide { graph: PathBuf, ideal: PathBuf },
    /// The severed digraph Γ//J.
    Sever {
        graph: PathBuf,
        ideal: PathBuf,
        /// Sever by the degrees of θ even when the ideal is not dlf.
        #[arg(long)]
        force_degree_only: bool,
    },
    /// Generator images for L(Γ)/J ≅ L(Γ//J).
    Certificate { graph: PathBuf, ideal: PathBuf },
    /// Replace every θ(C) by its squarefree part.
    Radical { graph: PathBuf, ideal: PathBuf },
    /// Dimension of L(Γ), or of L(Γ)/J.
    Dim { graph: PathBuf, ideal: Option<PathBuf> },
    /// Graph monoid relations, optionally testing a congruence.
    Monoid {
        graph: PathBuf,
        /// Left-hand element, e.g. "v1 w1".
        #[arg(long, requires = "to")]
        congruent: Option<String>,
        #[arg(long)]
        to: Option<String>,
    },
    /// Stratum parameter and dlf counts over a prime field.
    Strata {
        graph: PathBuf,
        #[arg(long)]
        max_deg: usize,
    },
    /// Orthogonality of a projective and an ideal.
    Orth {
        graph: PathBuf,
        projective: PathBuf,
        ideal: PathBuf,
    },
    /// Non-simple fgip classes.
    Fgip { graph: PathBuf },
    /// Simple projective classes.
    Simples { graph: PathBuf },
    /// Endomorphism algebra of a projective.
    End { graph: PathBuf, projective: PathBuf },
    /// Admissibility of a digraph morphism.
    CheckMorphism {
        source: PathBuf,
        target: PathBuf,
        morphism: PathBuf,
    },
    /// DOT rendering of a digraph.
    Dot { graph: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Core(lpa_core::Error),
    Read(PathBuf, std::io::Error),
    Usage(String),
}

impl From<lpa_core::Error> for CliError {
    fn from(e: lpa_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.category() {
                ErrorCategory::Parse => 2,
                ErrorCategory::Validation => 3,
                ErrorCategory::ResourceLimit => 4,
                ErrorCategory::Internal => 5,
            },
            CliError::Read(..) | CliError::Usage(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Read(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

/// Applies `LPA_LIMITS`, e.g. `maxCycles=500,congruenceDepth=6`.
fn limits_from_env(spec: Option<&str>) -> Result<Limits, CliError> {
    let mut l = Limits::default();
    let Some(spec) = spec else { return Ok(l) };
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("LPA_LIMITS: expected key=value, got `{part}`")))?;
        let n: u64 = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("LPA_LIMITS: `{k}` needs a positive integer")))?;
        match k.trim() {
            "maxCycles" | "max_cycles" => l.max_cycles = n as usize,
            "maxPairs" | "max_pairs" => l.max_pairs = n as usize,
            "maxParamPoints" | "max_param_points" => l.max_param_points = n,
            "congruenceDepth" | "congruence_depth" => l.congruence_depth = n as usize,
            "maxSubsetVertices" | "max_subset_vertices" => l.max_subset_vertices = n as usize,
            other => return Err(CliError::Usage(format!("LPA_LIMITS: unknown key `{other}`"))),
        }
    }
    Ok(l)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let limits = limits_from_env(std::env::var("LPA_LIMITS").ok().as_deref())?;
    let field = cli
        .field
        .as_deref()
        .map(str::parse::<FieldSpec>)
        .transpose()
        .map_err(|e| CliError::Usage(format!("--field: {e}")))?;
    let report = commands::dispatch(&cli.command, field, &limits)?;
    report.render(cli.format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
