//! Fits a damped cosine to a `t_s,<column>` CSV, or a power law to an `n,<column>` CSV.

use std::fs::File;
use std::path::{Path, PathBuf};

use nondiss::analysis::{fit_damped_cosine, fit_power_law, TimeSeries};
use serde::{Deserialize, Serialize};

use crate::config::{overlay_fields, Common, Overlay};
use crate::error::CliError;
use crate::output::{Cell, Report, Summary, Table};

const DEFAULT_COLUMN: &str = "value";

#[derive(Debug, Clone, Default, clap::Args, Deserialize)]
#[serde(default)]
pub struct FitArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
    /// CSV with a header row: `t_s` and the value column, or `n`/`n_plus_1` with --power-law
    #[arg(long, value_name = "CSV")]
    pub input: Option<PathBuf>,
    /// Name of the value column [default: value]
    #[arg(long)]
    pub column: Option<String>,
    /// Fit value ≈ A (n+1)^p instead of a damped cosine
    #[arg(long, num_args = 0..=1, default_missing_value = "true", value_name = "BOOL")]
    pub power_law: Option<bool>,
}

impl Overlay for FitArgs {
    fn common(&self) -> &Common {
        &self.common
    }

    fn common_mut(&mut self) -> &mut Common {
        &mut self.common
    }

    fn overlay_rest(&mut self, file: Self) {
        overlay_fields!(self, file; input, column, power_law);
    }
}

#[derive(Debug, Serialize)]
struct Parameters {
    input: String,
    kind: &'static str,
    abscissa_column: String,
    value_column: String,
    points: usize,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum Results {
    DampedCosine {
        gamma_per_s: f64,
        nu_rad_per_s: f64,
        amplitude: f64,
        offset: f64,
        sign: i8,
        rms_residual: f64,
        gamma_std_err_per_s: f64,
        nu_std_err_rad_per_s: f64,
        iterations: usize,
    },
    PowerLaw {
        prefactor: f64,
        exponent: f64,
        max_rel_dev: f64,
    },
}

/// Two numeric columns read from a CSV file.
struct Columns {
    abscissa_name: String,
    value_name: String,
    pairs: Vec<(f64, f64)>,
}

fn read_columns(path: &Path, abscissa: &[&str], value: &str) -> Result<Columns, CliError> {
    let shown = path.display();
    let file = File::open(path).map_err(|e| CliError::input(format!("cannot open {shown}: {e}")))?;
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| CliError::input(format!("{shown}: {}", describe(&e))))?
        .clone();
    if headers.is_empty() || headers.iter().all(str::is_empty) {
        return Err(CliError::input(format!("{shown}: file is empty, expected a header row")));
    }
    let find = |name: &str| headers.iter().position(|h| h == name);
    let (a_idx, a_name) = abscissa
        .iter()
        .find_map(|n| find(n).map(|i| (i, n.to_string())))
        .ok_or_else(|| CliError::input(format!("{shown}: header has no '{}' column", abscissa.join("' or '"))))?;
    let v_idx = find(value).ok_or_else(|| CliError::input(format!("{shown}: header has no '{value}' column")))?;

    let mut pairs = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::input(format!("{shown}: {}", describe(&e))))?;
        let line = record.position().map_or(0, |p| p.line());
        let parse = |idx: usize, name: &str| -> Result<f64, CliError> {
            let field = record.get(idx).unwrap_or("");
            field.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
                CliError::input(format!("{shown}: line {line}: column '{name}' holds '{field}', not a finite number"))
            })
        };
        pairs.push((parse(a_idx, &a_name)?, parse(v_idx, value)?));
    }
    if pairs.is_empty() {
        return Err(CliError::input(format!("{shown}: no data rows after the header")));
    }
    Ok(Columns { abscissa_name: a_name, value_name: value.to_string(), pairs })
}

fn describe(e: &csv::Error) -> String {
    match e.position() {
        Some(p) => format!("line {}: malformed CSV: {e}", p.line()),
        None => format!("malformed CSV: {e}"),
    }
}

pub fn run(args: &FitArgs) -> Result<Report, CliError> {
    let path = args.input.as_deref().ok_or_else(|| CliError::input("--input is required"))?;
    let column = args.column.as_deref().unwrap_or(DEFAULT_COLUMN);
    let power_law = args.power_law.unwrap_or(false);

    let (table, results, cols, kind) = if power_law {
        let cols = read_columns(path, &["n_plus_1", "n"], column)?;
        let shift = u64::from(cols.abscissa_name == "n");
        let pairs = cols
            .pairs
            .iter()
            .map(|&(n, v)| {
                if n.fract() != 0.0 || n < 0.0 || n > 1e15 {
                    return Err(CliError::input(format!("column '{}' must hold non-negative integers, got {n}", cols.abscissa_name)));
                }
                Ok((n as u64 + shift, v))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let fit = fit_power_law(&pairs)?;
        let mut table = Table::new(["n_plus_1", "value", "fitted"]);
        for &(m, v) in &pairs {
            table.push(vec![Cell::Int(m), Cell::Real(v), Cell::Real(fit.evaluate(m))]);
        }
        let results = Results::PowerLaw { prefactor: fit.prefactor, exponent: fit.exponent, max_rel_dev: fit.max_rel_dev };
        (table, results, cols, "power_law")
    } else {
        let cols = read_columns(path, &["t_s"], column)?;
        let fit = fit_damped_cosine(&TimeSeries::new(cols.pairs.clone())?)?;
        let mut table = Table::new(["t_s", "value", "fitted", "residual"]);
        for &(t, v) in &cols.pairs {
            let f = fit.evaluate(t);
            table.push(vec![Cell::Real(t), Cell::Real(v), Cell::Real(f), Cell::Real(v - f)]);
        }
        let results = Results::DampedCosine {
            gamma_per_s: fit.gamma,
            nu_rad_per_s: fit.nu,
            amplitude: fit.amplitude,
            offset: fit.offset,
            sign: fit.sign,
            rms_residual: fit.rms_residual,
            gamma_std_err_per_s: fit.gamma_std_err,
            nu_std_err_rad_per_s: fit.nu_std_err,
            iterations: fit.iterations,
        };
        (table, results, cols, "damped_cosine")
    };

    let parameters = Parameters {
        input: path.display().to_string(),
        kind,
        abscissa_column: cols.abscissa_name,
        value_column: cols.value_name,
        points: cols.pairs.len(),
    };
    Ok(Report { table: Some(table), summary: Summary::new("fit", args.common.seed(), parameters, results).to_json() })
}
