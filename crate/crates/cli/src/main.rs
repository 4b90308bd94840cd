use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dirhom_cli::format::parse_rational;
use dirhom_cli::{command_check, command_compare, command_compute, command_render, CliError, OutputFormat, RunConfig};

/// Persistent homology of directed complexes built from asymmetric
/// dissimilarity matrices.
#[derive(Parser)]
#[command(name = "dirhom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Undirected and directed persistence diagrams of one input.
    Compute(Common),
    /// Checks the stability bound between two matrices.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Upper bound on the correspondence distortion, skipping the exhaustive search.
        #[arg(long, value_parser = parse_rational)]
        distortion_bound: Option<dirhom_core::Rational>,
        #[arg(long, default_value_t = dirhom_core::metrics::DEFAULT_MAP_PAIR_BUDGET)]
        map_pair_budget: u128,
    },
    /// Runs structural and semiring checks on one input.
    Check(Common),
    /// Draws diagrams previously written as JSON or CSV.
    Render(Common),
}

#[derive(Args)]
struct Common {
    /// Input file: matrix as CSV or JSON, or a filtered complex as JSON.
    #[arg(long = "input", short, required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = 1)]
    max_dim: usize,
    #[arg(long, overrides_with = "no_directed")]
    directed: bool,
    #[arg(long, overrides_with = "directed")]
    no_directed: bool,
    #[arg(long, value_enum)]
    output: Option<OutputFormat>,
    /// Coefficient bound for homologous and cycle searches.
    #[arg(long, default_value_t = dirhom_core::semihomology::DEFAULT_SEARCH_BOUND)]
    bound: u32,
    #[arg(long, default_value_t = dirhom_core::directed::DEFAULT_CIRCUIT_BUDGET)]
    circuit_budget: usize,
    #[arg(long, default_value_t = dirhom_core::rips::DEFAULT_SIMPLEX_BUDGET)]
    simplex_budget: u128,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self, default_output: OutputFormat) -> RunConfig {
        RunConfig {
            inputs: self.inputs.clone(),
            max_dim: self.max_dim,
            directed: self.directed || !self.no_directed,
            bound: self.bound,
            circuit_budget: self.circuit_budget,
            simplex_budget: self.simplex_budget,
            output: self.output.unwrap_or(default_output),
            ..RunConfig::default()
        }
    }
}

fn run(cli: Cli) -> Result<(bool, Option<PathBuf>, String), CliError> {
    let (outcome, out) = match cli.command {
        Command::Compute(c) => (command_compute(&c.config(OutputFormat::Json))?, c.out),
        Command::Compare { common, distortion_bound, map_pair_budget } => {
            let cfg = RunConfig { map_pair_budget, ..common.config(OutputFormat::Text) };
            (command_compare(&cfg, distortion_bound)?, common.out)
        }
        Command::Check(c) => (command_check(&c.config(OutputFormat::Text))?, c.out),
        Command::Render(c) => (command_render(&c.config(OutputFormat::Text))?, c.out),
    };
    Ok((outcome.success, out, outcome.output))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((success, out, text)) => {
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
