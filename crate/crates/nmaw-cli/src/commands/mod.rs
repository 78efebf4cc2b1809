pub mod filter;
pub mod report;
pub mod roofline;
pub mod simulate;
pub mod stencil;

use clap::Subcommand;

use crate::error::CliError;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the pre-alignment filter over a pair batch.
    Filter(filter::FilterArgs),
    /// Run a stencil's reference and optimized variants and check agreement.
    Stencil(stencil::StencilArgs),
    /// Sweep the accelerator model and report the reference trend checks.
    Simulate(simulate::SimulateArgs),
    /// Place instrumented kernels against compute and bandwidth roofs.
    Roofline(roofline::RooflineArgs),
    /// Produce the full desk-scale report bundle.
    Report(report::ReportArgs),
}

impl Command {
    pub fn run(&self) -> Result<(), CliError> {
        match self {
            Command::Filter(args) => filter::execute(args),
            Command::Stencil(args) => stencil::execute(args),
            Command::Simulate(args) => simulate::execute(args),
            Command::Roofline(args) => roofline::execute(args),
            Command::Report(args) => report::execute(args),
        }
    }
}
