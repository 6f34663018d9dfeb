//! Flag/config-file resolution. A `--config` JSON object uses the flag names with
//! dashes replaced by underscores; anything given on the command line wins.

use std::fs;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 1;

/// Copies every field of `$src` into `$dst` where `$dst` has none.
macro_rules! overlay_fields {
    ($dst:expr, $src:expr; $($field:ident),+ $(,)?) => {
        $( if $dst.$field.is_none() { $dst.$field = $src.$field; } )+
    };
}
pub(crate) use overlay_fields;

#[derive(Debug, Clone, Default, clap::Args, Deserialize)]
#[serde(default)]
pub struct Common {
    /// Write the data table to this CSV file
    #[arg(long, value_name = "PATH")]
    pub out_csv: Option<PathBuf>,
    /// Write the JSON summary here instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out_json: Option<PathBuf>,
    /// Seed for Monte-Carlo averaging [default: 1]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte-Carlo samples per time point; 0 drops the MC column
    #[arg(long, value_name = "N")]
    pub mc_samples: Option<usize>,
    /// JSON file with default values for any of these flags
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Common {
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn overlay(&mut self, file: Common) {
        overlay_fields!(self, file; out_csv, out_json, seed, mc_samples);
    }
}

/// Argument sets that can be completed from a config file.
pub trait Overlay: clap::Args + DeserializeOwned {
    fn common(&self) -> &Common;
    fn common_mut(&mut self) -> &mut Common;
    /// Fills fields left unset on the command line from `file`.
    fn overlay_rest(&mut self, file: Self);
}

pub fn resolve<A: Overlay>(mut flags: A) -> Result<A, CliError> {
    let Some(path) = flags.common().config.clone() else {
        return Ok(flags);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("config {}: invalid JSON: {e}", path.display())))?;
    let object = value
        .as_object()
        .ok_or_else(|| CliError::input(format!("config {}: expected a JSON object", path.display())))?;

    let known: Vec<String> = A::augment_args(clap::Command::new("config"))
        .get_arguments()
        .map(|a| a.get_id().to_string())
        .filter(|id| id != "config")
        .collect();
    if let Some(key) = object.keys().find(|k| !known.contains(k)) {
        return Err(CliError::input(format!(
            "config {}: unknown key '{key}' (expected one of: {})",
            path.display(),
            known.join(", ")
        )));
    }

    let mut file: A = serde_json::from_value(value)
        .map_err(|e| CliError::input(format!("config {}: {e}", path.display())))?;
    let file_common = std::mem::take(file.common_mut());
    flags.common_mut().overlay(file_common);
    flags.overlay_rest(file);
    Ok(flags)
}

/// Rejects non-finite or non-positive values.
pub fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(CliError::input(format!("--{name} must be finite and > 0, got {v}")))
    }
}

pub fn non_negative(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(CliError::input(format!("--{name} must be finite and >= 0, got {v}")))
    }
}

/// `0, t_max/steps, …, t_max`.
pub fn time_grid(t_max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps == 0 {
        return Err(CliError::input("--steps must be >= 1"));
    }
    Ok((0..=steps).map(|k| t_max * k as f64 / steps as f64).collect())
}
