use std::path::PathBuf;

use clap::{Parser, Subcommand};
use hardylab::cli::{cmd_bounds, cmd_constants, cmd_sweep, cmd_verify, RunOptions};

const COLUMNS: &str = "\
CSV columns (floats printed as {:.16e}):
  constants  name,N,p,value
  verify     identity,domain,p,lambda,residual,relative_residual,pass
  bounds     domain,N,mu,D_inf,davies,improved,lambda1,margin
  sweep      parameter,value,identity,domain,p,lambda,residual,relative_residual,pass

Exit codes: 0 pass, 1 residual or ordering failure, 2 schema error, 3 precondition failure.";

#[derive(Parser)]
#[command(name = "hardylab", version, about = "Verify weighted Hardy identities and spectral lower bounds", after_help = COLUMNS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON descriptor for the run.
    #[arg(long, global = true)]
    descriptor: Option<PathBuf>,
    /// Directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Relative tolerance overriding the descriptor.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Worker threads.
    #[arg(long, global = true, env = "HARDYLAB_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Print λ₀, z₀ and a table of Ξ(N,p).
    Constants,
    /// Check one identity.
    Verify,
    /// Compute the spectral bounds and λ₁.
    Bounds,
    /// Run one identity over a list of parameter values.
    Sweep,
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let opts = RunOptions {
        descriptor: cli.descriptor,
        out: cli.out,
        tolerance: cli.tolerance,
    };
    let mut stdout = std::io::stdout().lock();
    let code = match cli.command {
        Command::Constants => cmd_constants(&opts, &mut stdout),
        Command::Verify => cmd_verify(&opts, &mut stdout),
        Command::Bounds => cmd_bounds(&opts, &mut stdout),
        Command::Sweep => cmd_sweep(&opts, &mut stdout),
    };
    std::process::exit(code);
}
