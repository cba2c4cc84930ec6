use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use graft_cli::commands;
use graft_cli::document::{GraftDocument, ToothDocument};
use graft_cli::generate::GenParams;
use graft_cli::verify::Mutation;
use graft_cli::CliError;

#[derive(Parser)]
#[command(name = "graft", version, about = "Minimum joins, F-distances and comb decompositions of grafts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum join of a graft.
    Minjoin { file: PathBuf },
    /// Distances from one vertex.
    Dist {
        file: PathBuf,
        #[arg(long)]
        from: String,
    },
    /// Root profile, primality and certificate at a root.
    Primal {
        file: PathBuf,
        #[arg(long)]
        root: String,
    },
    /// Skeleton comb, teeth and fringe around a greedy maximal extreme set.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        seed_vertex: String,
        /// Attach recursive certificates to the teeth.
        #[arg(long)]
        recursive: bool,
    },
    /// Glue tooth grafts into a skeleton comb.
    Synthesize {
        #[arg(long)]
        skeleton: PathBuf,
        #[arg(long)]
        tooth: Vec<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "GRAFT_MAX_N", default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "GRAFT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true, default_value = "none")]
        mutate: Mutation,
    },
    /// Random connected graft.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, env = "GRAFT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        bipartite: bool,
    },
    /// Graphviz rendering.
    Export {
        file: PathBuf,
        #[arg(long, required = true)]
        dot: bool,
        #[arg(long)]
        seed_vertex: Option<String>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn graft(path: &Path) -> Result<GraftDocument, CliError> {
    GraftDocument::parse(&read(path)?)
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let out = match cli.command {
        Command::Minjoin { file } => commands::minjoin(&graft(&file)?)?,
        Command::Dist { file, from } => commands::dist(&graft(&file)?, &from)?,
        Command::Primal { file, root } => commands::primal(&graft(&file)?, &root)?,
        Command::Decompose { file, seed_vertex, recursive } => commands::decompose_cmd(&graft(&file)?, &seed_vertex, recursive)?,
        Command::Synthesize { skeleton, tooth } => {
            let teeth = tooth.iter().map(|p| ToothDocument::parse(&read(p)?)).collect::<Result<Vec<_>, _>>()?;
            commands::synthesize_cmd(&graft(&skeleton)?, &teeth)?
        }
        Command::Verify { suite, max_n, trials, seed, mutate } => {
            let (out, report) = commands::verify(&suite, max_n, trials, seed, mutate)?;
            return Ok((out, report.exit_code() as u8));
        }
        Command::Gen { n, m, density, seed, bipartite } => commands::gen(GenParams { n, m, density, bipartite }, seed)?,
        Command::Export { file, seed_vertex, .. } => commands::export_dot(&graft(&file)?, seed_vertex.as_deref())?,
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
