mod document;
mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use pdepoly::{
    build_block, build_full, default_variables, homogeneous_solutions, parse_operator, parse_point_any, parse_poly,
    predicted_dimension, rhs_solve, system_solutions, verify, Error, GaussianRational, Mode, MultiPoly,
    ParseContext, SolutionSpace, Verification,
};
use thiserror::Error as ThisError;

use document::{DimensionDocument, MatrixDocument, SolutionDocument};

#[derive(Parser)]
#[command(
    name = "pdepoly",
    version,
    about = "Exact polynomial-exponential solutions of linear PDEs with constant coefficients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve P(-iD)u = 0, or a system of such equations, in e^{i x0.x} Π≤L
    Solve {
        /// Symbol polynomials (or operators with --operator); several form a system
        #[arg(required = true)]
        symbols: Vec<String>,
        /// Degree cap L
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        problem: Problem,
    },
    /// Solve P(-iD)u = e^{i x0.x} F
    SolveRhs {
                symbol: String,
        /// Right-hand side polynomial F
        #[arg(long)]
        rhs: String,
        /// Degree cap L (default: deg F + least vanishing order at the root)
        #[arg(long)]
        degree: Option<u32>,
        #[command(flatten)]
        problem: Problem,
    },
    /// Print the derivative matrix, or one of its blocks
    Matrix {
                symbol: String,
        #[arg(long)]
        degree: u32,
        /// Only the block with row level k and column level K
        #[arg(long, num_args = 2, value_names = ["k", "K"])]
        block: Option<Vec<u32>>,
        #[command(flatten)]
        problem: Problem,
    },
    /// Compare the predicted and computed solution-space dimensions
    Dim {
                symbol: String,
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        problem: Problem,
    },
    /// Re-check a JSON solution document by applying the operator directly
    Verify {
        /// Solution document, or `-` for standard input
        #[arg(long)]
        solution: PathBuf,
        #[arg(required = true)]
        symbols: Vec<String>,
        #[arg(long)]
        rhs: Option<String>,
        /// Read symbols as operators in Dx, Dy, ... and I
        #[arg(long)]
        operator: bool,
    },
}

#[derive(Args)]
struct Problem {
    /// Root x0, e.g. "(1,i)"
    #[arg(long)]
    root: String,
    /// Comma-separated variable names (default x,y,z or x1..xd)
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Read symbols as operators in Dx, Dy, ... and I
    #[arg(long)]
    operator: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Latex,
    Csv,
}

#[derive(Debug, ThisError)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("invalid solution document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("predicted dimension {predicted} differs from computed {computed}")]
    DimensionDisagreement { predicted: usize, computed: usize },
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Parse { .. } | Error::UnknownVariable { .. } | Error::InvalidVariables(_))
            | CliError::Json(_) => 2,
            CliError::Core(Error::Inconsistent) => 4,
            CliError::Core(_) | CliError::Usage(_) => 3,
            CliError::DimensionDisagreement { .. } => 5,
            CliError::Verification(_) => 6,
            CliError::Io(_) => 1,
        }
    }
}

/// Parsed `--root`/`--vars`/`--operator` options.
struct Setup {
    ctx: ParseContext,
    root: Vec<GaussianRational>,
    operator: bool,
}

impl Setup {
    fn new(problem: &Problem) -> Result<Self, CliError> {
        let root = parse_point_any(unprotect(&problem.root))?;
        let ctx = make_context(problem.vars.as_deref(), root.len())?;
        if ctx.dim() != root.len() {
            return Err(Error::ArityMismatch { expected: ctx.dim(), found: root.len() }.into());
        }
        Ok(Self { ctx, root, operator: problem.operator })
    }

    fn symbol(&self, text: &str) -> Result<MultiPoly, CliError> {
        read_symbol(text, &self.ctx, self.operator)
    }

    fn vars(&self) -> Vec<String> {
        self.ctx.variables().to_vec()
    }
}

fn make_context(vars: Option<&[String]>, dim: usize) -> Result<ParseContext, CliError> {
    let names = match vars {
        Some(v) => v.iter().map(|s| s.trim().to_string()).collect(),
        None if dim == 0 => return Err(CliError::Usage("the root has no coordinates".into())),
        None => default_variables(dim),
    };
    Ok(ParseContext::new(names, Mode::Symbol)?)
}

/// Undoes [`protect_expressions`] so error offsets match the user's text.
fn unprotect(text: &str) -> &str {
    match text.strip_prefix(' ') {
        Some(rest) if rest.starts_with('-') => rest,
        _ => text,
    }
}

fn read_symbol(text: &str, ctx: &ParseContext, operator: bool) -> Result<MultiPoly, CliError> {
    let text = unprotect(text);
    Ok(if operator { parse_operator(text, ctx)? } else { parse_poly(text, ctx)? })
}

fn emit_solution(space: &SolutionSpace, vars: &[String], notes: Vec<String>, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Plain => render::solution_plain(space, vars, &notes),
        Format::Latex => render::solution_latex(space, vars, &notes),
        Format::Csv => render::solution_csv(space, vars),
        Format::Json => serde_json::to_string_pretty(&SolutionDocument::new(space, vars, notes))? + "\n",
    })
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve { symbols, degree, problem } => {
            let setup = Setup::new(&problem)?;
            let parsed = symbols.iter().map(|s| setup.symbol(s)).collect::<Result<Vec<_>, _>>()?;
            let space = if parsed.len() == 1 {
                homogeneous_solutions(&parsed[0], &setup.root, degree)?
            } else {
                system_solutions(&parsed, &setup.root, degree)?
            };
            let mut notes = Vec::new();
            if parsed.iter().any(|p| !p.evaluate(&setup.root).is_zero()) {
                notes.push("trivial space: the symbol does not vanish at the root".to_string());
            }
            emit_solution(&space, &setup.vars(), notes, problem.format)
        }
        Command::SolveRhs { symbol, rhs, degree, problem } => {
            let setup = Setup::new(&problem)?;
            let p = setup.symbol(&symbol)?;
            let f = parse_poly(unprotect(&rhs), &setup.ctx)?;
            let space = rhs_solve(&p, &f, &setup.root, degree)?;
            let mut notes = Vec::new();
            if space.basis().is_empty() {
                notes.push("unique: the particular solution is the only solution".to_string());
            }
            emit_solution(&space, &setup.vars(), notes, problem.format)
        }
        Command::Matrix { symbol, degree, block, problem } => {
            let setup = Setup::new(&problem)?;
            let p = setup.symbol(&symbol)?;
            let (m, block) = match block.as_deref() {
                Some(&[k, big_k]) => {
                    if big_k > degree {
                        return Err(CliError::Usage(format!("block level {big_k} exceeds the degree cap {degree}")));
                    }
                    (build_block(&p, &setup.root, k, big_k)?, Some((k, big_k)))
                }
                _ => (build_full(&p, &setup.root, degree)?.matrix, None),
            };
            Ok(match problem.format {
                Format::Csv => render::matrix_csv(&m),
                Format::Plain => render::matrix_plain(&m),
                Format::Latex => render::matrix_latex(&m),
                Format::Json => serde_json::to_string_pretty(&MatrixDocument::new(&m, block))? + "\n",
            })
        }
        Command::Dim { symbol, degree, problem } => {
            let setup = Setup::new(&problem)?;
            let p = setup.symbol(&symbol)?;
            let report = predicted_dimension(&p, &setup.root, degree)?;
            if !report.consistent() {
                return Err(CliError::DimensionDisagreement { predicted: report.predicted, computed: report.computed });
            }
            Ok(match problem.format {
                Format::Json => serde_json::to_string_pretty(&DimensionDocument::from(&report))? + "\n",
                Format::Csv => format!(
                    "degree_cap,least_order,predicted,computed\n{},{},{},{}\n",
                    report.degree_cap, report.least_order, report.predicted, report.computed
                ),
                Format::Plain | Format::Latex => format!(
                    "m={}, predicted={}, computed={}\n",
                    report.least_order, report.predicted, report.computed
                ),
            })
        }
        Command::Verify { solution, symbols, rhs, operator } => {
            let text = if solution.as_os_str() == "-" {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf)?;
                buf
            } else {
                std::fs::read_to_string(&solution)?
            };
            let doc: SolutionDocument = serde_json::from_str(&text)?;
            let space = doc.to_space()?;
            let ctx = make_context(Some(&doc.vars), doc.d)?;
            let parsed = symbols.iter().map(|s| read_symbol(s, &ctx, operator)).collect::<Result<Vec<_>, _>>()?;
            let f = rhs.map(|r| parse_poly(unprotect(&r), &ctx)).transpose()?;
            if space.particular().is_some() && f.is_none() {
                return Err(CliError::Usage("the solution has a particular part; pass --rhs".into()));
            }
            match verify(&space, &parsed, f.as_ref()) {
                Verification::Passed => Ok("verified\n".to_string()),
                Verification::Failed(why) => Err(CliError::Verification(why)),
            }
        }
    }
}

/// Expressions such as `-x^2-y^2` look like short flags to clap. The only
/// short flags are `-h` and `-V`, so any other argument starting with a
/// single `-` gets a leading space, which the expression parsers skip.
fn protect_expressions(args: impl Iterator<Item = String>) -> Vec<String> {
    args.map(|a| {
        let flag_like = a == "-" || a.starts_with("--") || a == "-h" || a == "-V";
        if a.starts_with('-') && !flag_like {
            format!(" {a}")
        } else {
            a
        }
    })
    .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(protect_expressions(std::env::args()));
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
