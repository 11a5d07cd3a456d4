use std::io::Write;
use std::path::Path;

use qdiscord_core::correlations::OptimizerConfig;
use qdiscord_core::koashi::{
    additivity_report_with, koashi_winter_check_with, purify_class, ClassStateSpec, MAX_SUBSYSTEM_DIM,
};
use qdiscord_core::random::{random_pure_state, rng_from_seed};
use rayon::prelude::*;

use crate::table::{self, num, Table};
use crate::{CliError, KoashiArgs, Result};

/// Limits on the per-trial residuals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub haar_identity: f64,
    pub class_identity: f64,
    /// `|C − S(ρ_A)|` when B is a qubit.
    pub classical_qubit: f64,
    /// Same, for the sampled-basis search at `d_B ≥ 3`.
    pub classical_sampled: f64,
    pub additivity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            haar_identity: 1e-5,
            class_identity: 1e-6,
            classical_qubit: 1e-4,
            classical_sampled: 1e-3,
            additivity: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub index: usize,
    pub seed: u64,
    /// Only for `2 2 2`: identity residual on a Haar-random pure state.
    pub haar_residual: Option<f64>,
    pub discord: f64,
    pub entropy_a: f64,
    pub classical_numeric: f64,
    pub ppt: bool,
    pub ppt_min_eigenvalue: f64,
    pub additivity_residual: f64,
    pub class_residual: f64,
}

impl Trial {
    pub fn classical_residual(&self) -> f64 {
        (self.classical_numeric - self.entropy_a).abs()
    }
}

fn run_trial(dims: (usize, usize, usize), index: usize, args: &KoashiArgs) -> Result<Trial> {
    let seed = args.seed.wrapping_add(index as u64);
    let mut rng = rng_from_seed(seed);
    let (da, db, dc) = dims;
    let spec =
        if args.product { ClassStateSpec::product(da, db, dc)? } else { ClassStateSpec::random(da, db, dc, &mut rng)? };
    let config = OptimizerConfig { seed, ..OptimizerConfig::default() };
    let haar_residual = if dims == (2, 2, 2) {
        let psi = if args.product { purify_class(&spec) } else { random_pure_state(8, &mut rng) };
        Some(koashi_winter_check_with(&psi, &config)?.residual)
    } else {
        None
    };
    let r = additivity_report_with(&spec, args.copies, &config)?;
    Ok(Trial {
        index,
        seed,
        haar_residual,
        discord: r.discord_single,
        entropy_a: r.entropy_a,
        classical_numeric: r.classical_correlation_numeric,
        ppt: r.ac_separability.is_ppt,
        ppt_min_eigenvalue: r.ac_separability.min_eigenvalue,
        additivity_residual: (r.discord_n_copies - args.copies as f64 * r.discord_single).abs(),
        class_residual: r.monogamy_residual,
    })
}

pub fn dims(args: &KoashiArgs) -> Result<(usize, usize, usize)> {
    match args.dims[..] {
        [a, b, c] if [a, b, c].iter().all(|&d| (1..=MAX_SUBSYSTEM_DIM).contains(&d)) => Ok((a, b, c)),
        _ => Err(CliError::Usage(format!("--dims takes three values in 1..={MAX_SUBSYSTEM_DIM}, got {:?}", args.dims))),
    }
}

pub fn trials(args: &KoashiArgs) -> Result<Vec<Trial>> {
    let d = dims(args)?;
    if args.trials == 0 || args.copies == 0 {
        return Err(CliError::Usage("--trials and --copies must be at least 1".into()));
    }
    (0..args.trials).into_par_iter().map(|t| run_trial(d, t, args)).collect()
}

pub fn violations(trials: &[Trial], db: usize, tol: &Tolerances) -> Vec<String> {
    let classical_tol = if db <= 2 { tol.classical_qubit } else { tol.classical_sampled };
    let mut out = Vec::new();
    for t in trials {
        let mut fail =
            |what: &str, value: f64| out.push(format!("trial {} (seed {}): {what} {value:e}", t.index, t.seed));
        if let Some(r) = t.haar_residual.filter(|&r| r > tol.haar_identity) {
            fail("Haar-state identity residual", r);
        }
        if t.classical_residual() > classical_tol {
            fail("|C - S(A)|", t.classical_residual());
        }
        if !t.ppt {
            fail("partial transpose eigenvalue", t.ppt_min_eigenvalue);
        }
        if t.additivity_residual > tol.additivity {
            fail("additivity residual", t.additivity_residual);
        }
        if t.class_residual > tol.class_identity {
            fail("class identity residual", t.class_residual);
        }
    }
    out
}

pub fn build_table(args: &KoashiArgs, trials: &[Trial]) -> Table {
    let d = &args.dims;
    let command = format!(
        "koashi-check dims={}x{}x{} trials={} copies={} product={}",
        d[0], d[1], d[2], args.trials, args.copies, args.product
    );
    let header = [
        "trial",
        "seed",
        "haar_identity_residual",
        "discord",
        "entropy_a",
        "classical_numeric",
        "classical_residual",
        "ppt",
        "ppt_min_eigenvalue",
        "additivity_residual",
        "class_identity_residual",
    ];
    let mut table = Table::new(table::provenance(&command, Some(args.seed)), header.map(String::from).into());
    for t in trials {
        table.rows.push(vec![
            t.index.to_string(),
            t.seed.to_string(),
            t.haar_residual.map(num).unwrap_or_default(),
            num(t.discord),
            num(t.entropy_a),
            num(t.classical_numeric),
            num(t.classical_residual()),
            t.ppt.to_string(),
            num(t.ppt_min_eigenvalue),
            num(t.additivity_residual),
            num(t.class_residual),
        ]);
    }
    table
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

pub fn run(args: &KoashiArgs, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let trials = trials(args)?;
    let (_, db, _) = dims(args)?;
    let io = |e| CliError::io("<stdout>", e);
    let d = &args.dims;
    writeln!(out, "dims {}x{}x{}, {} trials, seed {}", d[0], d[1], d[2], args.trials, args.seed).map_err(io)?;
    if trials.iter().any(|t| t.haar_residual.is_some()) {
        let m = max_of(trials.iter().filter_map(|t| t.haar_residual));
        writeln!(out, "max Haar-state identity residual  {}", num(m)).map_err(io)?;
    }
    writeln!(out, "max |C - S(A)|                    {}", num(max_of(trials.iter().map(Trial::classical_residual))))
        .map_err(io)?;
    writeln!(out, "PPT                               {}/{}", trials.iter().filter(|t| t.ppt).count(), trials.len())
        .map_err(io)?;
    writeln!(out, "max additivity residual           {}", num(max_of(trials.iter().map(|t| t.additivity_residual))))
        .map_err(io)?;
    writeln!(out, "max class identity residual       {}", num(max_of(trials.iter().map(|t| t.class_residual))))
        .map_err(io)?;
    if let Some(path) = &args.csv {
        table::write_file(&table::resolve(path, out_dir), &build_table(args, &trials).to_bytes()?)?;
    }
    let problems = violations(&trials, db, &Tolerances::default());
    if !problems.is_empty() {
        return Err(CliError::Violation(format!("{} failures, first: {}", problems.len(), problems[0])));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clean() -> Trial {
        Trial {
            index: 0,
            seed: 1,
            haar_residual: Some(1e-9),
            discord: 0.3,
            entropy_a: 0.5,
            classical_numeric: 0.5,
            ppt: true,
            ppt_min_eigenvalue: 0.0,
            additivity_residual: 0.0,
            class_residual: 0.0,
        }
    }

    #[test]
    fn violations_are_reported() {
        let tol = Tolerances::default();
        assert!(violations(&[clean()], 2, &tol).is_empty());
        let off = Trial { classical_numeric: 0.5005, ..clean() };
        assert_eq!(violations(std::slice::from_ref(&off), 2, &tol).len(), 1);
        assert!(violations(&[off], 3, &tol).is_empty());
        let npt = Trial { ppt: false, ppt_min_eigenvalue: -0.1, haar_residual: Some(1e-3), ..clean() };
        assert_eq!(violations(&[npt], 2, &tol).len(), 2);
    }

    #[test]
    fn violation_maps_to_exit_two() {
        assert_eq!(CliError::Violation("x".into()).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }
}
