use std::io::Write;

use qdiscord_core::correlations::{analytic_report, discord_numeric, CorrelationReport};
use qdiscord_core::states::{bell_diagonal_from_c, bell_index, werner, BellDiagonalState, CVector};

use crate::table::num;
use crate::{CliError, DiscordArgs, Result, StateArg};

fn c_vector(state: &StateArg) -> Result<CVector> {
    Ok(match *state {
        StateArg::Werner { f } => {
            werner(f)?;
            CVector::werner(f)
        }
        StateArg::Bell { a, b } => {
            let mut w = [0.0; 4];
            w[bell_index(a, b)] = 1.0;
            BellDiagonalState::new(w)?.c_vector()
        }
        StateArg::C { c1, c2, c3 } => CVector::new(c1, c2, c3)?,
    })
}

fn describe(state: &StateArg) -> String {
    match *state {
        StateArg::Werner { f } => format!("werner F={f}"),
        StateArg::Bell { a, b } => format!("bell beta_{a}{b}"),
        StateArg::C { c1, c2, c3 } => format!("bell-diagonal c=({c1}, {c2}, {c3})"),
    }
}

pub fn report(args: &DiscordArgs) -> Result<CorrelationReport> {
    let c = c_vector(&args.state)?;
    if args.numeric {
        Ok(discord_numeric(&bell_diagonal_from_c(&c)?)?)
    } else {
        Ok(analytic_report(&c))
    }
}

pub fn run(args: &DiscordArgs, out: &mut dyn Write) -> Result<()> {
    let r = report(args)?;
    let method = if args.numeric { "numeric" } else { "analytic" };
    let io = |e| CliError::io("<stdout>", e);
    writeln!(out, "state   {}", describe(&args.state)).map_err(io)?;
    writeln!(out, "method  {method}").map_err(io)?;
    writeln!(out, "I       {}", num(r.mutual_information)).map_err(io)?;
    writeln!(out, "C       {}", num(r.classical_correlation)).map_err(io)?;
    writeln!(out, "D       {}", num(r.discord)).map_err(io)?;
    if let Some(d) = &r.optimizer {
        writeln!(out, "search  {:?}, {} refinement steps", d.path, d.refinement_iterations).map_err(io)?;
    }
    Ok(())
}
