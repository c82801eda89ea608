//! The `softcut` command-line front end.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 non-submodular input,
//! 3 instance too large for the exhaustive oracle.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::cutgraph::build_network;
use crate::error::Error;
use crate::format;
use crate::model::Instance;
use crate::par::Execution;
use crate::solver::{brute_force, compile, solve_with_network, Solution};

#[derive(Parser, Debug)]
#[command(
    name = "softcut",
    version,
    about = "Exact minimisation of submodular soft constraint instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum-evaluation assignment via minimum cut
    Solve {
        file: PathBuf,
        /// Also write the cut network edge list to this path
        #[arg(long, value_name = "PATH")]
        emit_graph: Option<PathBuf>,
    },
    /// Report the first non-submodular binary constraint, if any
    Check { file: PathBuf },
    /// Rewrite every table as generalized interval constraints
    Decompose { file: PathBuf },
    /// Minimum-evaluation assignment by exhaustive search
    Oracle { file: PathBuf },
    /// Print the cut network edge list
    Graph { file: PathBuf },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

fn failure(e: Error) -> Outcome {
    match e {
        Error::NotSubmodular {
            constraint: Some(i),
            witness,
        } => Outcome {
            code: 2,
            stdout: format!("not submodular: constraint {i} witness {witness}\n"),
            stderr: String::new(),
        },
        Error::TooLarge(_) => Outcome::fail(3, "too large\n".into()),
        Error::Parse { .. } => Outcome::fail(1, format!("parse error: {e}\n")),
        other => Outcome::fail(1, format!("error: {other}\n")),
    }
}

fn load(path: &Path) -> Result<Instance, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(1, format!("error: cannot read {}: {e}\n", path.display())))?;
    format::parse(&text).map_err(failure)
}

fn print_solution(inst: &Instance, s: &Solution) -> String {
    let mut out = String::new();
    for v in inst.variables() {
        let _ = writeln!(out, "{} = {}", inst.name(v), s.assignment.get(v));
    }
    let _ = writeln!(out, "evaluation = {}", s.evaluation);
    out
}

fn decompose_document(inst: &Instance) -> Result<String, Error> {
    let mut out = String::new();
    format::print_preamble(inst, &mut out);
    for (i, c) in inst.constraints().iter().enumerate() {
        let single = {
            let mut one = inst.with_same_variables();
            one.add_constraint(c.clone())?;
            compile(&one).map_err(|e| match e {
                Error::NotSubmodular { witness, .. } => Error::NotSubmodular {
                    constraint: Some(i),
                    witness,
                },
                other => other,
            })?
        };
        let _ = writeln!(out, "# constraint {i}");
        for term in single.constraints() {
            format::print_constraint(inst, term, &mut out);
        }
    }
    Ok(out)
}

fn execute(command: Command) -> Result<Outcome, Outcome> {
    match command {
        Command::Solve { file, emit_graph } => {
            let inst = load(&file)?;
            let (solution, net) = solve_with_network(&inst, Execution::default()).map_err(failure)?;
            if let Some(path) = emit_graph {
                std::fs::write(&path, net.dump())
                    .map_err(|e| Outcome::fail(1, format!("error: cannot write {}: {e}\n", path.display())))?;
            }
            Ok(Outcome::ok(print_solution(&inst, &solution)))
        }
        Command::Check { file } => {
            let inst = load(&file)?;
            compile(&inst).map_err(failure)?;
            Ok(Outcome::ok("submodular\n".into()))
        }
        Command::Decompose { file } => {
            let inst = load(&file)?;
            decompose_document(&inst).map(Outcome::ok).map_err(failure)
        }
        Command::Oracle { file } => {
            let inst = load(&file)?;
            let solution = brute_force(&inst).map_err(failure)?;
            Ok(Outcome::ok(print_solution(&inst, &solution)))
        }
        Command::Graph { file } => {
            let inst = load(&file)?;
            let net = compile(&inst).and_then(|c| build_network(&c)).map_err(failure)?;
            Ok(Outcome::ok(net.dump()))
        }
    }
}

/// Runs one command; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return Outcome::fail(1, e.render().to_string()),
        Err(e) => return Outcome::ok(e.render().to_string()),
    };
    execute(cli.command).unwrap_or_else(|o| o)
}
