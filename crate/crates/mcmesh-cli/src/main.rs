use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mcmesh_cli::scenario::{execute, Stage};
use mcmesh_cli::{compare_files, render_summary};

#[derive(Parser)]
#[command(name = "mcmesh", version, about = "Multi-channel mesh multicast toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage the scenario describes
    Run(ScenarioArgs),
    /// Realize the scenario network and write it out
    Generate(ScenarioArgs),
    /// Build the multicast tree (implies generate)
    Tree(ScenarioArgs),
    /// Assign channels (implies tree)
    Assign(ScenarioArgs),
    /// Simulate and write the metrics CSV (implies assign)
    Simulate(ScenarioArgs),
    /// Run the configured shortest-path solvers
    Sp(ScenarioArgs),
    /// Run the seed x channel sweep grid
    Sweep(ScenarioArgs),
    /// Compare two metrics CSVs column by column
    Compare(CompareArgs),
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario description file (JSON)
    #[arg(long)]
    scenario: PathBuf,
    /// Directory artifacts are written into
    #[arg(long)]
    out: PathBuf,
    /// Replace every seed in the scenario with this value
    #[arg(long)]
    seed_override: Option<u64>,
    /// Sweep worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// Baseline CSV (the "a" side)
    a: PathBuf,
    /// Candidate CSV (the "b" side)
    b: PathBuf,
    /// Optional directory for a compare.csv copy of the table
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run_stage(stage: Stage, args: &ScenarioArgs) -> Result<(), mcmesh_cli::CliError> {
    let written = execute(stage, &args.scenario, &args.out, args.seed_override, args.jobs)?;
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_compare(args: &CompareArgs) -> Result<(), mcmesh_cli::CliError> {
    let summaries = compare_files(&args.a, &args.b)?;
    let table = render_summary(&summaries);
    print!("{table}");
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|e| {
            mcmesh_cli::CliError::new(
                mcmesh_cli::ErrorKind::Io,
                dir,
                "compare",
                e.to_string(),
            )
        })?;
        let path = dir.join("compare.csv");
        mcmesh::io::write_atomic(&path, &table).map_err(|e| {
            mcmesh_cli::CliError::new(mcmesh_cli::ErrorKind::Io, &path, "compare", e.to_string())
        })?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => run_stage(Stage::Full, args),
        Command::Generate(args) => run_stage(Stage::Network, args),
        Command::Tree(args) => run_stage(Stage::Tree, args),
        Command::Assign(args) => run_stage(Stage::Assign, args),
        Command::Simulate(args) => run_stage(Stage::Simulate, args),
        Command::Sp(args) => run_stage(Stage::ShortestPath, args),
        Command::Sweep(args) => run_stage(Stage::Sweep, args),
        Command::Compare(args) => run_compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(2)
        }
    }
}
