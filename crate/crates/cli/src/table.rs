//! CSV tables with a provenance comment line and locale-free number format.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::{CliError, Result};

/// 12 significant digits in scientific notation; `-0` is written as `0`.
pub fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub provenance: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(provenance: String, header: Vec<String>) -> Self {
        Self { provenance, header, rows: Vec::new() }
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        writeln!(buf, "# {}", self.provenance).expect("writing to a Vec cannot fail");
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))
    }
}

pub(crate) fn provenance(command: &str, seed: Option<u64>) -> String {
    let seed = seed.map_or_else(|| "none".to_owned(), |s| s.to_string());
    format!("qdiscord {} {command} seed={seed}", env!("CARGO_PKG_VERSION"))
}

pub(crate) fn resolve(path: &Path, out_dir: Option<&Path>) -> PathBuf {
    match out_dir {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

pub(crate) fn write_stdout(out: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    out.write_all(bytes).map_err(|e| CliError::io("<stdout>", e))
}
