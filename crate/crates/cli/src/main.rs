use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use realforms::scenarios::{
    list_scenarios, run_all, run_scenario, RunOptions, DEFAULT_CORPUS_SIZE, DEFAULT_SEED,
};

const USAGE_ERROR: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Runs the verified computations over formally real fields.
#[derive(Debug, Parser)]
#[command(name = "realforms", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the random corpora.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Number of forms in each random corpus.
    #[arg(long, default_value_t = DEFAULT_CORPUS_SIZE, global = true)]
    corpus_size: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario, or all of them with `--all`.
    Check {
        /// Scenario name, as printed by `list`.
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        scenario: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// List the registered scenarios.
    List,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let options = RunOptions {
        seed: cli.seed,
        corpus_size: cli.corpus_size,
    };
    match cli.command {
        Command::List => {
            let entries = list_scenarios();
            match cli.format {
                Format::Text => {
                    for s in entries {
                        println!("{:<28} {}", s.name, s.description);
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&entries).expect("registry serializes")
                ),
            }
            ExitCode::SUCCESS
        }
        Command::Check { scenario, all } => {
            let report = if all {
                run_all(&options)
            } else {
                let name = scenario.expect("clap requires a name without --all");
                match run_scenario(&name, &options) {
                    Ok(r) => r,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(USAGE_ERROR);
                    }
                }
            };
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
