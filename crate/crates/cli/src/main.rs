use clap::{Parser, Subcommand, ValueEnum};
use kvp_cli::commands::{self, CommandError, ComplexKind, EXIT_INPUT_ERROR};
use kvp_cli::report::RunReport;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact-arithmetic workbench for structure-constant algebras: axiom
/// audits, cochain-complex cohomology tables, and polynomial classification
/// of dim-2 skew products. All scalars are exact rationals; reports are
/// deterministic and byte-identical across runs.
#[derive(Parser)]
#[command(name = "kvp", version, about, max_term_width = 100)]
struct Cli {
    /// Emit the structured JSON report (schema_version 1) instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Run the built-in verification battery and exit (0 iff every check
    /// passes). Cannot be combined with a subcommand.
    #[arg(long = "paper-suite")]
    paper_suite: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexArg {
    Ce,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Audit the axioms of an algebra file.
    ///
    /// Exit code 0 when every axiom named in --axioms passes (or none are
    /// requested), 1 on a failed requested axiom, 2 on input errors.
    Check {
        /// Algebra file (see docs/algebra-file.md for the grammar).
        file: PathBuf,
        /// Comma-separated axioms to require: symmetric, skew, kv, jacobi,
        /// leibniz-self, nilpotent, kv-poisson.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
    },
    /// Per-degree cohomology table of an algebra file.
    Cohomology {
        file: PathBuf,
        /// Which complex to build: `ce` (alternating cochains, adjoint
        /// action) or `kv` (unrestricted multilinear cochains).
        #[arg(long, value_enum)]
        complex: ComplexArg,
        /// Highest degree in the table (default: the dimension for `ce`,
        /// 2 for `kv`; `kv` supports at most 3).
        #[arg(long = "max-q")]
        max_q: Option<usize>,
        /// On a precondition refusal, emit the raw coboundary matrices
        /// without betti numbers instead of failing.
        #[arg(long = "force-matrices")]
        force_matrices: bool,
    },
    /// Constraint systems in the structure constants, the exact dim-2 skew
    /// variety, grid-scan oracles, and pencil closure checks.
    Classify {
        /// Dimension of the structures (1..=3).
        #[arg(long)]
        dim: usize,
        /// Comma-separated axioms generating the system.
        #[arg(long, value_delimiter = ',')]
        axioms: Vec<String>,
        /// Grid `BOUND` or `BOUND/DEN`: scan all assignments with free
        /// coordinates in {-BOUND..BOUND} step 1/DEN.
        #[arg(long)]
        grid: Option<String>,
        /// Audit this many random pencils over the grid survivors
        /// (requires --grid).
        #[arg(long)]
        pencil: Option<usize>,
        /// Seed for the pencil sampling.
        #[arg(long, default_value_t = kvp_core::classify::DEFAULT_SEED)]
        seed: u64,
    },
    /// Audit the member (x0, y0) of the dim-2 skew family and print its
    /// alternating-complex table.
    AuditFamily {
        /// x0 as an integer or `p/q`.
        #[arg(long)]
        x0: String,
        /// y0 as an integer or `p/q`.
        #[arg(long)]
        y0: String,
    },
}

fn dispatch(cli: &Cli) -> Result<(RunReport, i32), CommandError> {
    if cli.paper_suite {
        if cli.command.is_some() {
            return Err(CommandError(
                "--paper-suite runs the whole battery and takes no subcommand".to_string(),
            ));
        }
        return Ok(commands::cmd_suite());
    }
    let Some(command) = &cli.command else {
        return Err(CommandError(
            "missing subcommand (try `kvp --help` or `kvp --paper-suite`)".to_string(),
        ));
    };
    match command {
        Command::Check { file, axioms } => {
            let requested = commands::parse_axioms(axioms)?;
            let text = read(file)?;
            commands::cmd_check(&text, &requested)
        }
        Command::Cohomology {
            file,
            complex,
            max_q,
            force_matrices,
        } => {
            let kind = match complex {
                ComplexArg::Ce => ComplexKind::Ce,
                ComplexArg::Kv => ComplexKind::Kv,
            };
            let text = read(file)?;
            commands::cmd_cohomology(&text, kind, *max_q, *force_matrices)
        }
        Command::Classify {
            dim,
            axioms,
            grid,
            pencil,
            seed,
        } => {
            let axioms = commands::parse_axioms(axioms)?;
            let grid = grid.as_deref().map(commands::parse_grid).transpose()?;
            commands::cmd_classify(*dim, &axioms, grid, *pencil, *seed)
        }
        Command::AuditFamily { x0, y0 } => commands::cmd_audit_family(x0, y0),
    }
}

fn read(path: &PathBuf) -> Result<String, CommandError> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandError(format!("cannot read {}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((report, code)) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(code as u8)
        }
        Err(CommandError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}
