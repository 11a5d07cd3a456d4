use std::io::Write;
use std::path::Path;

use qdiscord_core::curves::Quantity;
use qdiscord_core::purification::{coincidence_probability, iterate, purified_fidelity, RoundRecord};

use crate::table::{self, num, Table};
use crate::{CliError, PurifyArgs, Result};

const TOLERANCE: f64 = 1e-12;

fn stages(r: &RoundRecord) -> [(&'static str, &qdiscord_core::correlations::CorrelationReport); 3] {
    [("rho", &r.input), ("rho_prime", &r.intermediate), ("chi", &r.final_state)]
}

pub fn build_table(args: &PurifyArgs) -> Result<(Table, Vec<String>)> {
    if !(0.0..=1.0).contains(&args.f0) {
        return Err(CliError::Usage(format!("--f0 must lie in [0, 1], got {}", args.f0)));
    }
    if args.rounds == 0 {
        return Err(CliError::Usage("--rounds must be at least 1".into()));
    }
    let trace = iterate(args.f0, args.rounds)?;
    let mut header: Vec<String> = ["round", "F_in", "F_out", "p_success", "cumulative_yield"].map(String::from).into();
    for stage in ["rho", "rho_prime", "chi"] {
        header.extend(Quantity::ALL.iter().map(|q| format!("{}_{stage}", q.symbol())));
    }
    let mut table =
        Table::new(table::provenance(&format!("purify f0={} rounds={}", args.f0, args.rounds), None), header);
    let mut problems = Vec::new();
    let mut cumulative = 1.0;
    for (k, r) in trace.rounds.iter().enumerate() {
        cumulative *= r.p_success / 2.0;
        if (r.f_out - purified_fidelity(r.f_in)).abs() > TOLERANCE {
            problems.push(format!("round {}: F_out {} departs from the recurrence", k + 1, r.f_out));
        }
        if (r.p_success - coincidence_probability(r.f_in)).abs() > TOLERANCE {
            problems.push(format!("round {}: success probability {} departs from the closed form", k + 1, r.p_success));
        }
        let mut row = vec![(k + 1).to_string(), num(r.f_in), num(r.f_out), num(r.p_success), num(cumulative)];
        for (_, report) in stages(r) {
            row.extend(Quantity::ALL.iter().map(|q| num(q.of(report))));
        }
        table.rows.push(row);
    }
    Ok((table, problems))
}

pub fn run(args: &PurifyArgs, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let (table, problems) = build_table(args)?;
    let io = |e| CliError::io("<stdout>", e);
    writeln!(
        out,
        "{:>5}  {:>18}  {:>18}  {:>18}  {:>18}  {:>18}",
        "round", "F_in", "F_out", "p_success", "yield", "D_chi"
    )
    .map_err(io)?;
    let d_chi = table.header.iter().position(|h| h == "D_chi").expect("D_chi column");
    for row in &table.rows {
        writeln!(
            out,
            "{:>5}  {:>18}  {:>18}  {:>18}  {:>18}  {:>18}",
            row[0], row[1], row[2], row[3], row[4], row[d_chi]
        )
        .map_err(io)?;
    }
    if let Some(path) = &args.csv {
        table::write_file(&table::resolve(path, out_dir), &table.to_bytes()?)?;
    }
    if !problems.is_empty() {
        return Err(CliError::Violation(problems.join("; ")));
    }
    Ok(())
}
