use std::io::Write;
use std::path::Path;

use qdiscord_core::curves::{closed_form_point, simulated_point, Quantity, Stage};
use rayon::prelude::*;

use crate::table::{self, num, Table};
use crate::{CliError, Result, SweepArgs};

/// Largest accepted closed-form vs simulation gap under `--verify`.
pub const VERIFY_TOLERANCE: f64 = 1e-12;
const MAX_POINTS: f64 = 1e6;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub f_min: f64,
    pub f_max: f64,
    pub step: f64,
    pub quantities: Vec<Quantity>,
    pub verify: bool,
}

impl SweepConfig {
    pub fn from_args(args: &SweepArgs) -> Result<Self> {
        let (f_min, f_max, quantities) = match args.preset {
            Some(p) => (if args.extended { 0.0 } else { 0.5 }, 1.0, vec![p.quantity()]),
            None => {
                let q = if args.quantities.is_empty() { Quantity::ALL.to_vec() } else { args.quantities.clone() };
                (args.from.unwrap_or(0.0), args.to.unwrap_or(1.0), q)
            }
        };
        let config = Self { f_min, f_max, step: args.step, quantities, verify: args.verify };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        let in_range = |f: f64| (0.0..=1.0).contains(&f);
        if !in_range(self.f_min) || !in_range(self.f_max) {
            return Err(CliError::Usage(format!("fidelity range [{}, {}] must lie in [0, 1]", self.f_min, self.f_max)));
        }
        if self.f_min > self.f_max {
            return Err(CliError::Usage(format!("--from {} exceeds --to {}", self.f_min, self.f_max)));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(CliError::Usage(format!("step must be positive, got {}", self.step)));
        }
        if (self.f_max - self.f_min) / self.step > MAX_POINTS {
            return Err(CliError::Usage("grid exceeds 10^6 points".into()));
        }
        Ok(())
    }

    /// `f_min + i·step`, with the last point clamped to `f_max`.
    pub fn grid(&self) -> Vec<f64> {
        let n = ((self.f_max - self.f_min) / self.step - 1e-9).ceil().max(0.0) as usize;
        (0..=n).map(|i| (self.f_min + i as f64 * self.step).min(self.f_max)).collect()
    }

    fn describe(&self) -> String {
        let names: Vec<&str> = self.quantities.iter().map(|q| q.name()).collect();
        format!(
            "sweep from={} to={} step={} quantities={} verify={}",
            self.f_min,
            self.f_max,
            self.step,
            names.join(","),
            self.verify
        )
    }
}

pub fn column_name(q: Quantity, stage: Stage) -> String {
    format!("{}_{}", q.symbol(), stage.name())
}

/// Builds the table and the largest verification gap (0 without `--verify`).
pub fn compute(config: &SweepConfig) -> Result<(Table, f64)> {
    let mut header = vec!["F".to_owned()];
    for &q in &config.quantities {
        header.extend(Stage::ALL.iter().map(|&s| column_name(q, s)));
    }
    if config.verify {
        for &q in &config.quantities {
            header.extend(Stage::ALL.iter().map(|&s| format!("{}_absdiff", column_name(q, s))));
        }
    }
    let rows: Vec<(Vec<String>, f64)> = config
        .grid()
        .into_par_iter()
        .map(|f| -> Result<(Vec<String>, f64)> {
            let point = closed_form_point(f)?;
            let mut row = vec![num(f)];
            for &q in &config.quantities {
                row.extend(Stage::ALL.iter().map(|&s| num(point.value(s, q))));
            }
            let mut worst: f64 = 0.0;
            if config.verify {
                let sim = simulated_point(f)?;
                for &q in &config.quantities {
                    for &s in &Stage::ALL {
                        let d = (point.value(s, q) - sim.value(s, q)).abs();
                        worst = worst.max(d);
                        row.push(num(d));
                    }
                }
            }
            Ok((row, worst))
        })
        .collect::<Result<_>>()?;
    let worst = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let mut table = Table::new(table::provenance(&config.describe(), None), header);
    table.rows = rows.into_iter().map(|r| r.0).collect();
    Ok((table, worst))
}

pub fn run(args: &SweepArgs, out_dir: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    let config = SweepConfig::from_args(args)?;
    let (table, worst) = compute(&config)?;
    let bytes = table.to_bytes()?;
    let target = match (&args.output, args.preset, out_dir) {
        (Some(p), _, _) => Some(table::resolve(p, out_dir)),
        (None, Some(preset), Some(dir)) => Some(dir.join(preset.file_name())),
        _ => None,
    };
    match target {
        Some(path) => table::write_file(&path, &bytes)?,
        None => table::write_stdout(out, &bytes)?,
    }
    if worst > VERIFY_TOLERANCE {
        return Err(CliError::Violation(format!("closed form and simulation differ by {worst:e}")));
    }
    Ok(())
}
