use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use crossed_forge::{emit_report, parse_scenario, run_scenario, CheckSpec, Format, ResolvedCheck};

#[derive(Parser)]
#[command(name = "crossed-forge", version, about = "Structure checks for crossed products of finite and Laurent rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check in a scenario file.
    Run {
        scenario: PathBuf,
        /// Overrides the scenario's output format.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Catalog constructors.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check only the crossed-system axioms of a scenario's system.
    Verify {
        scenario: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

fn load(path: &PathBuf) -> anyhow::Result<crossed_forge::Scenario> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_scenario(&text).with_context(|| format!("parsing {}", path.display()))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run { scenario, format, out } => {
            let scenario = load(&scenario)?;
            let format = format.unwrap_or(scenario.definition.output.format);
            let text = emit_report(&run_scenario(&scenario), format);
            match out {
                Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
        }
        Command::Catalog { action: CatalogAction::List } => print!("{}", crossed_forge::catalog_listing()),
        Command::Verify { scenario, format } => {
            let mut scenario = load(&scenario)?;
            let format = format.unwrap_or(scenario.definition.output.format);
            scenario.definition.checks = vec![CheckSpec::Verify];
            scenario.checks = vec![ResolvedCheck::Verify];
            print!("{}", emit_report(&run_scenario(&scenario), format));
        }
    }
    Ok(())
}
