mod bench;
mod gadgets;
mod io;
mod oracle_cmd;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use planecut::approx::{approx_min_quotient, ApproxParams, TauGrid};
use planecut::exact::{solve, Method};
use planecut::Objective;
use serde_json::json;

use crate::io::{print_json, read_graph, write_json, CutJson};

pub enum CliError {
    Usage(String),
    Claim(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Claim(m) => write!(f, "claim violated: {m}"),
        }
    }
}

impl From<planecut::Error> for CliError {
    fn from(e: planecut::Error) -> Self {
        match e {
            planecut::Error::ClaimViolated(msg) => CliError::Claim(msg),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "planecut",
    version,
    about = "Sparsest and minimum quotient cuts in planar graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact minimum quotient cut or sparsest cut.
    Exact(ExactArgs),
    /// 3.29-approximate minimum quotient cut.
    Approx(ApproxArgs),
    /// Generate a hardness instance.
    Gen(gadgets::GenArgs),
    /// Check a generated instance's claims with the oracles.
    Verify(gadgets::VerifyArgs),
    /// Brute-force reference computations.
    Oracle(oracle_cmd::OracleArgs),
    /// Run a benchmark suite and write CSV.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Quotient,
    Sparsity,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Layered,
    Separator,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Doubling,
    Fine,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Quotient)]
    objective: ObjectiveArg,
    #[arg(long, value_enum, default_value_t = MethodArg::Layered)]
    method: MethodArg,
    /// Write the cut (side and crossing edges) as JSON.
    #[arg(long)]
    emit_cut: Option<PathBuf>,
}

#[derive(Args)]
struct ApproxArgs {
    #[arg(long)]
    input: PathBuf,
    /// Accuracy parameter, of the form 1/k (default: the largest that keeps the 3.29 budget).
    #[arg(long)]
    eps: Option<String>,
    /// Cost-scale grid.
    #[arg(long, value_enum, default_value_t = GridArg::Doubling)]
    grid: GridArg,
    #[arg(long)]
    emit_cut: Option<PathBuf>,
    /// Write decomposition and search statistics as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
}

fn run_exact(args: &ExactArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    let objective = match args.objective {
        ObjectiveArg::Quotient => Objective::Quotient,
        ObjectiveArg::Sparsity => Objective::Sparsity,
    };
    let method = match args.method {
        MethodArg::Layered => Method::Layered,
        MethodArg::Separator => Method::Separator,
    };
    let cut = solve(&g, objective, method)?;
    let out = CutJson::from(&cut);
    if let Some(path) = &args.emit_cut {
        write_json(path, &out)?;
    }
    print_json(&json!({
        "objective": out.objective,
        "value": format!("{}/{}", out.value_num, out.value_den),
        "value_num": out.value_num,
        "value_den": out.value_den,
        "cost": out.cost,
        "side_size": out.side.len(),
    }));
    Ok(())
}

fn run_approx(args: &ApproxArgs) -> Result<(), CliError> {
    let g = read_graph(&args.input)?;
    let eps_inv = match &args.eps {
        None => ApproxParams::default_eps_inv(),
        Some(s) => {
            let eps = io::parse_rational(s)?;
            let inv = eps.recip();
            if eps <= planecut::Frac::from_integer(0) || !inv.is_integer() {
                return Err(CliError::Usage(format!(
                    "--eps must be 1/k for a positive integer k, got {s}"
                )));
            }
            i64::try_from(inv.to_integer())
                .map_err(|_| CliError::Usage("--eps is too small".into()))?
        }
    };
    let mut params = ApproxParams::new(eps_inv)?;
    params.tau_grid = match args.grid {
        GridArg::Doubling => TauGrid::Doubling,
        GridArg::Fine => TauGrid::Fine,
    };
    let result = approx_min_quotient(&g, &params)?;
    let out = CutJson::from(&result.cut);
    if let Some(path) = &args.emit_cut {
        write_json(path, &out)?;
    }
    if let Some(path) = &args.trace {
        write_json(path, &result.trace)?;
    }
    print_json(&json!({
        "objective": out.objective,
        "value": format!("{}/{}", out.value_num, out.value_den),
        "value_num": out.value_num,
        "value_den": out.value_den,
        "cost": out.cost,
        "eps": format!("1/{eps_inv}"),
        "search_steps": result.trace.steps.len(),
    }));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Exact(a) => run_exact(a),
        Command::Approx(a) => run_approx(a),
        Command::Gen(a) => gadgets::run_gen(a),
        Command::Verify(a) => gadgets::run_verify(a),
        Command::Oracle(a) => oracle_cmd::run_oracle(a),
        Command::Bench(a) => bench::run_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Claim(msg)) => {
            eprintln!("claim violated: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
