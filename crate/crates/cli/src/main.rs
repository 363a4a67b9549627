//! `ctrop`: command-line front end for the cluster-trop engine.

mod commands;
mod error;
mod input;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use crate::commands::Command;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "ctrop", version, about = "Exact cluster-algebra mutation, tropical invariants and generic representations")]
pub struct Cli {
    /// Base RNG seed for the generic-representation oracle.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Output format; CSV is available for vector-valued results only.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    let ctx = commands::Ctx { seed: cli.seed };
    let result = commands::execute(&cli.command, &ctx).and_then(|out| {
        print!("{}", output::render(&out, format)?);
        Ok(out)
    });
    match result {
        Ok(out) if out.failed => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
