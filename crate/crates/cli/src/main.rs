use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ncg_cli::{exit_code, run_scenario, run_suite, Format, Options, DEFAULT_SEED, INPUT_ERROR};

#[derive(Parser)]
#[command(name = "ncg", version, about = "Exact checks for derivation-based geometry on transformation groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Run scenario tasks in parallel; report order is unchanged.
    #[arg(long, global = true)]
    parallel: bool,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a scenario file.
    Run { scenario: PathBuf },
    /// Run a built-in suite: algebra, representation, geometry, sheaf, appendixB.
    Suite { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { seed: cli.seed, parallel: cli.parallel };
    let result = match &cli.command {
        Command::Run { scenario } => run_scenario(scenario, opts),
        Command::Suite { name } => run_suite(name, cli.seed),
    };
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR as u8)
        }
    }
}
