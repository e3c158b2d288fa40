//! Command-line sweeps over the Casimir engine.
//!
//! Each subcommand turns a validated [`RunConfig`] into a [`SweepOutput`]
//! whose rows are computed in parallel and written in input order, so the
//! same configuration always produces the same bytes.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use args::{Cli, Command, Format};
pub use config::{ConstantsSpec, RunConfig};
pub use error::{CliError, Result};
pub use output::SweepOutput;

/// Validates, computes and writes one invocation.
pub fn execute(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::from_command(&cli.command, ConstantsSpec::from_env()?)?;
    let out = commands::run(&cfg)?;
    out.write(cfg.format, cfg.out.as_deref())
}
