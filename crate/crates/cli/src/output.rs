//! Record rendering for json, csv and plain output.
//!
//! Numbers use `{:.16e}` (17 significant digits, round-trip safe).

use std::io::Write;

use fracpolylog::validation::CheckReport;
use num_complex::Complex64;

use crate::config::OutputFormat;

#[derive(Debug, Clone)]
pub enum Value {
    Real(f64),
    Complex(Complex64),
    Text(String),
    /// Sparse coefficient list keyed by sheet index.
    Indexed(Vec<(i64, Complex64)>),
    Missing,
}

/// Ordered list of named fields.
#[derive(Debug, Clone, Default)]
pub struct Record(Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn field(mut self, name: &'static str, v: Value) -> Self {
        self.0.push((name, v));
        self
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_num(x: f64) -> String {
    if x.is_finite() {
        num(x)
    } else {
        "null".into()
    }
}

fn json_complex(z: Complex64) -> String {
    format!("{{\"re\":{},\"im\":{}}}", json_num(z.re), json_num(z.im))
}

fn json_value(v: &Value) -> String {
    match v {
        Value::Real(x) => json_num(*x),
        Value::Complex(z) => json_complex(*z),
        Value::Text(s) => serde_json::to_string(s).expect("string serialises"),
        Value::Indexed(items) => {
            let parts: Vec<String> = items
                .iter()
                .map(|(k, c)| format!("\"{k}\":{}", json_complex(*c)))
                .collect();
            format!("{{{}}}", parts.join(","))
        }
        Value::Missing => "null".into(),
    }
}

fn json_line(r: &Record) -> String {
    let parts: Vec<String> =
        r.0.iter()
            .map(|(k, v)| format!("\"{k}\":{}", json_value(v)))
            .collect();
    format!("{{{}}}", parts.join(","))
}

fn plain_complex(z: Complex64) -> String {
    format!("{}{:+.16e}i", num(z.re), z.im)
}

fn plain_value(v: &Value) -> String {
    match v {
        Value::Real(x) => num(*x),
        Value::Complex(z) => plain_complex(*z),
        Value::Text(s) => s.clone(),
        Value::Indexed(items) => items
            .iter()
            .map(|(k, c)| format!("[{k}] {}", plain_complex(*c)))
            .collect::<Vec<_>>()
            .join("; "),
        Value::Missing => "-".into(),
    }
}

/// CSV columns: complex fields split into `_re`/`_im`, coefficient lists
/// flattened per index.
fn csv_cells(r: &Record) -> (Vec<String>, Vec<String>) {
    let mut head = Vec::new();
    let mut cells = Vec::new();
    for (k, v) in &r.0 {
        match v {
            Value::Complex(z) => {
                head.push(format!("{k}_re"));
                head.push(format!("{k}_im"));
                cells.push(num(z.re));
                cells.push(num(z.im));
            }
            Value::Indexed(items) => {
                for (i, c) in items {
                    head.push(format!("{k}_{i}_re"));
                    head.push(format!("{k}_{i}_im"));
                    cells.push(num(c.re));
                    cells.push(num(c.im));
                }
            }
            Value::Real(x) => {
                head.push(k.to_string());
                cells.push(num(*x));
            }
            Value::Text(s) => {
                head.push(k.to_string());
                cells.push(s.clone());
            }
            Value::Missing => {
                head.push(k.to_string());
                cells.push(String::new());
            }
        }
    }
    (head, cells)
}

pub fn render(format: OutputFormat, records: &[Record]) -> String {
    let mut s = String::new();
    match format {
        OutputFormat::Json => {
            for r in records {
                s.push_str(&json_line(r));
                s.push('\n');
            }
        }
        OutputFormat::Csv => {
            for (i, r) in records.iter().enumerate() {
                let (head, cells) = csv_cells(r);
                if i == 0 {
                    s.push_str(&head.join(","));
                    s.push('\n');
                }
                s.push_str(&cells.join(","));
                s.push('\n');
            }
        }
        OutputFormat::Plain if records.len() == 1 => {
            for (k, v) in &records[0].0 {
                s.push_str(&format!("{k:<14} {}\n", plain_value(v)));
            }
        }
        OutputFormat::Plain => {
            for r in records {
                let row: Vec<String> = r.0.iter().map(|(_, v)| plain_value(v)).collect();
                s.push_str(&row.join("  "));
                s.push('\n');
            }
        }
    }
    s
}

pub fn write_records(out: &mut impl Write, format: OutputFormat, records: &[Record]) {
    let _ = out.write_all(render(format, records).as_bytes());
}

pub fn write_json_lines(out: &mut impl Write, reports: &[CheckReport]) {
    for r in reports {
        let _ = writeln!(out, "{}", r.to_json_line());
    }
}

pub fn write_summary(out: &mut impl Write, reports: &[CheckReport]) {
    let width = reports
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let _ = writeln!(
        out,
        "{:<width$}  {:>10}  {:>10}  result",
        "name", "measured", "bound"
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{:<width$}  {:>10.3e}  {:>10.3e}  {}",
            r.name,
            r.measured,
            r.bound,
            if r.passed { "PASS" } else { "FAIL" }
        );
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(out, "{passed}/{} checks passed", reports.len());
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Record {
        Record::new()
            .field("z", Value::Complex(Complex64::new(0.25, -1.0)))
            .field("err", Value::Real(1e-17))
            .field("method", Value::Text("Series".into()))
    }

    #[test]
    fn json_is_parseable_and_exact() {
        let text = render(OutputFormat::Json, &[sample()]);
        let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(v["z"]["im"], -1.0);
        assert_eq!(v["err"].as_f64().unwrap(), 1e-17);
        assert_eq!(v["method"], "Series");
    }

    #[test]
    fn csv_splits_complex_and_keeps_missing_cells() {
        let skipped = Record::new()
            .field("z_re", Value::Real(2.0))
            .field("val_re", Value::Missing)
            .field("method", Value::Text("skipped:OnBranchCut".into()));
        let text = render(OutputFormat::Csv, &[skipped]);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "z_re,val_re,method");
        assert_eq!(
            lines.next().unwrap(),
            "2.0000000000000000e0,,skipped:OnBranchCut"
        );
        let text = render(OutputFormat::Csv, &[sample()]);
        assert!(text.starts_with("z_re,z_im,err,method\n"));
    }

    #[test]
    fn seventeen_digits_round_trip() {
        let x = 0.1 + 0.2;
        assert_eq!(num(x).parse::<f64>().unwrap(), x);
    }
}
