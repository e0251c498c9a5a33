//! `key=value` configuration: tolerance fields plus the output format.

use std::fmt;
use std::str::FromStr;

use fracpolylog::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Plain,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "plain" => Ok(OutputFormat::Plain),
            other => Err(format!(
                "unknown output format '{other}' (json, csv, plain)"
            )),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Plain => "plain",
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct CliConfig {
    pub tolerance: ToleranceConfig,
    /// `None` leaves the per-command default in place.
    pub output_format: Option<OutputFormat>,
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value '{value}' for {key}"))
}

impl CliConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let t = &mut self.tolerance;
        let value = value.trim();
        match key.trim() {
            "target_abs_err" => t.target_abs_err = parse_num(key, value)?,
            "max_series_terms" => t.max_series_terms = parse_num(key, value)?,
            "quad_max_depth" => t.quad_max_depth = parse_num(key, value)?,
            "hankel_angle" => t.hankel_angle = parse_num(key, value)?,
            "hankel_radius_cap" => t.hankel_radius_cap = parse_num(key, value)?,
            "ml_direct_terms" => t.ml_direct_terms = parse_num(key, value)?,
            "cut_offset" => t.cut_offset = parse_num(key, value)?,
            "eps_int" => t.eps_int = parse_num(key, value)?,
            "eps_cut" => t.eps_cut = parse_num(key, value)?,
            "output_format" => self.output_format = Some(value.parse()?),
            other => return Err(format!("unknown config key '{other}'")),
        }
        Ok(())
    }

    /// Applies one `key=value` assignment.
    pub fn assign(&mut self, item: &str) -> Result<(), String> {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got '{item}'"))?;
        self.set(key, value)
    }

    /// Applies a config file body: one `key=value` per line, `#` comments.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            self.assign(line)
                .map_err(|e| format!("line {}: {e}", i + 1))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), String> {
        self.tolerance.validate().map_err(|e| e.to_string())
    }
}
