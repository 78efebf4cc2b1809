mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

/// Exit codes: 0 success, 1 input or configuration error, 2 verification
/// failure.
#[derive(Parser, Debug)]
#[command(
    name = "nmaw",
    version,
    about = "Near-memory workloads workbench: genomic pre-alignment filtering, \
             weather stencils, an accelerator stage model, and roofline placement"
)]
struct Cli {
    #[command(subcommand)]
    command: commands::Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command.run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
