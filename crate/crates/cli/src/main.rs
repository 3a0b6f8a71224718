use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dissolution::format::{parse_dimacs_edges, parse_instance, InstanceFile, RolesFile, SolutionFile};
use dissolution::oracle::{brute_force_biased_with, brute_force_dissolution, brute_force_fixed_roles};
use dissolution::{solve, verify_solution, ExactOptions, Instance, SolveOutcome, Strategy};

mod generate;

#[derive(Parser)]
#[command(name = "dissolve", version, about = "Verify, solve and generate district dissolution instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a verified solution
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Roles file for flow-roles: {"dissolved": [..], "winning": [..]}
        #[arg(long)]
        roles: Option<PathBuf>,
        /// Worker threads for exact enumeration; 0 uses every core
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Stop exact enumeration once the target is met
        #[arg(long)]
        first: bool,
    },
    /// Check a solution file against an instance
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Solve by exhaustive search, independent of the flow solvers
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Fix dissolved and winning districts instead of searching roles
        #[arg(long)]
        roles: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print a generated instance
    #[command(subcommand)]
    Generate(generate::GenerateCommand),
}

#[derive(clap::Args)]
struct InputArgs {
    /// Instance file, or - for stdin
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// District size for dimacs-edges input
    #[arg(long)]
    s: Option<u64>,
    /// Growth per district for dimacs-edges input
    #[arg(long)]
    delta_s: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    DimacsEdges,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Auto,
    FlowRoles,
    Matching,
    Biased11,
    Clique,
    Exact,
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

impl InputArgs {
    fn load(&self) -> Result<Instance> {
        let text = read_text(&self.input)?;
        let inst = match self.format {
            Format::Json => parse_instance(&text),
            Format::DimacsEdges => {
                let (Some(s), Some(delta_s)) = (self.s, self.delta_s) else {
                    bail!("dimacs-edges input needs --s and --delta-s");
                };
                parse_dimacs_edges(&text, s, delta_s)
            }
        };
        inst.with_context(|| format!("parsing {}", self.input.display()))
    }
}

fn load_roles(path: &Path) -> Result<RolesFile> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing roles file {}", path.display()))
}

/// Prints the outcome after re-checking any witness; refuses to print a
/// solution the verifier rejects.
fn emit(inst: &Instance, out: &SolveOutcome) -> Result<ExitCode> {
    if let (true, Some(w)) = (out.feasible, &out.witness) {
        if let Err(v) = verify_solution(inst, w) {
            bail!("internal error: solver produced an invalid solution ({v})");
        }
    }
    println!("{}", serde_json::to_string_pretty(&SolutionFile::from_outcome(out))?);
    Ok(if out.feasible { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            input,
            strategy,
            roles,
            threads,
            first,
        } => {
            let inst = input.load()?;
            let strategy = match (strategy, roles) {
                (StrategyArg::FlowRoles, Some(path)) => Strategy::FlowRoles(load_roles(&path)?.to_roles()),
                (StrategyArg::FlowRoles, None) => bail!("--strategy flow-roles needs --roles"),
                (_, Some(_)) => bail!("--roles only applies to --strategy flow-roles"),
                (StrategyArg::Auto, None) => Strategy::Auto,
                (StrategyArg::Matching, None) => Strategy::Matching,
                (StrategyArg::Biased11, None) => Strategy::Biased11,
                (StrategyArg::Clique, None) => Strategy::Clique,
                (StrategyArg::Exact, None) => Strategy::Exact,
            };
            let opts = ExactOptions {
                threads,
                stop_at_target: first,
                ..ExactOptions::default()
            };
            let out = solve(&inst, &strategy, &opts)?;
            emit(&inst, &out)
        }
        Command::Verify { input, solution } => {
            let inst = input.load()?;
            let text = read_text(&solution)?;
            let file: SolutionFile =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", solution.display()))?;
            match verify_solution(&inst, &file.to_solution()) {
                Ok(()) => {
                    println!("valid");
                    Ok(ExitCode::SUCCESS)
                }
                Err(v) => {
                    println!("invalid: {v}");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Oracle { input, roles, threads } => {
            let inst = input.load()?;
            let out = match roles {
                Some(path) => {
                    let roles = load_roles(&path)?.to_roles();
                    match brute_force_fixed_roles(&inst, &roles.dissolved, &roles.winning)? {
                        Some(w) if w.winning.len() >= inst.target() => SolveOutcome {
                            feasible: true,
                            achieved_r_alpha: w.winning.len(),
                            witness: Some(w),
                        },
                        Some(w) => SolveOutcome::infeasible(w.winning.len()),
                        None => SolveOutcome::infeasible(0),
                    }
                }
                None if inst.is_biased() => brute_force_biased_with(&inst, threads)?,
                None => brute_force_dissolution(&inst)?,
            };
            emit(&inst, &out)
        }
        Command::Generate(cmd) => {
            let inst = generate::run(cmd)?;
            println!("{}", serde_json::to_string(&InstanceFile::from_instance(&inst))?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
