//! Command-line front end: single-state reports, fidelity sweeps, purification
//! traces and randomized checks of the additive family.
//!
//! Exit codes: 0 on success, 1 for usage, parse and IO errors, 2 when a run
//! detects a numerical invariant violation. Output files are written before a
//! violation is reported.

mod args;
pub mod commands;
mod error;
pub mod table;

use std::io::Write;

pub use args::{Cli, Command, DiscordArgs, KoashiArgs, Preset, PurifyArgs, StateArg, SweepArgs};
pub use error::{CliError, Result};

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let out_dir = cli.out_dir.as_deref();
    match &cli.command {
        Command::Discord(a) => commands::discord::run(a, out),
        Command::Sweep(a) => commands::sweep::run(a, out_dir, out),
        Command::Purify(a) => commands::purify::run(a, out_dir, out),
        Command::KoashiCheck(a) => commands::koashi::run(a, out_dir, out),
    }
}
