use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// One CSV cell. Reals are written with 17 significant digits.
#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(u64),
    Real(f64),
}

#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Int(v) => write!(out, "{v}"),
                    Cell::Real(v) => write!(out, "{v:.16e}"),
                }
                .expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct RngInfo {
    pub algorithm: &'static str,
    pub seed: u64,
}

/// Top-level JSON document shared by every command.
#[derive(Debug, Serialize)]
pub struct Summary<P: Serialize, R: Serialize> {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: &'static str,
    pub rng: RngInfo,
    /// resolved inputs in SI units
    pub parameters: P,
    pub results: R,
}

impl<P: Serialize, R: Serialize> Summary<P, R> {
    pub fn new(command: &'static str, seed: u64, parameters: P, results: R) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            tool: Tool { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") },
            command,
            rng: RngInfo { algorithm: nondiss::averaging::RNG_ALGORITHM, seed },
            parameters,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary is serializable");
        s.push('\n');
        s
    }
}

/// What a command produced, before anything touches the filesystem.
#[derive(Debug)]
pub struct Report {
    pub table: Option<Table>,
    pub summary: String,
}

/// Writes `contents` to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::input(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(contents.as_bytes()).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}
