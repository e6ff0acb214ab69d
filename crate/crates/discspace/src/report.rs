//! Machine-readable result emission: flat rows written as RFC-4180 CSV or
//! JSON. Every numeric is checked finite before writing; a NaN anywhere is
//! a reported failure, never a silent field.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{DiscError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One emitted result: experiment id, input descriptor, the quantity and
/// its value, the method tag, and optional witness/tolerance/verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub experiment: String,
    pub input: String,
    pub quantity: String,
    pub value: f64,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub est_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl ResultRow {
    pub fn new(experiment: &str, input: &str, quantity: &str, value: f64, method: &str) -> Self {
        Self {
            experiment: experiment.into(),
            input: input.into(),
            quantity: quantity.into(),
            value,
            method: method.into(),
            witness: None,
            est_error: None,
            tolerance: None,
            pass: None,
        }
    }

    pub fn with_witness(mut self, witness: String) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_est_error(mut self, est: f64) -> Self {
        self.est_error = Some(est);
        self
    }

    pub fn with_verdict(mut self, tolerance: f64, pass: bool) -> Self {
        self.tolerance = Some(tolerance);
        self.pass = Some(pass);
        self
    }
}

fn check_finite(rows: &[ResultRow]) -> Result<()> {
    for (i, r) in rows.iter().enumerate() {
        let bad = !r.value.is_finite()
            || r.est_error.is_some_and(|v| !v.is_finite())
            || r.tolerance.is_some_and(|v| !v.is_finite());
        if bad {
            return Err(DiscError::Config(format!(
                "row {i} ({} / {}) contains a non-finite numeric",
                r.experiment, r.quantity
            )));
        }
    }
    Ok(())
}

fn render_csv(rows: &[ResultRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "experiment",
        "input",
        "quantity",
        "value",
        "method",
        "witness",
        "est_error",
        "tolerance",
        "pass",
    ])?;
    for r in rows {
        w.write_record([
            r.experiment.as_str(),
            r.input.as_str(),
            r.quantity.as_str(),
            &format!("{}", r.value),
            r.method.as_str(),
            r.witness.as_deref().unwrap_or(""),
            &r.est_error.map(|v| format!("{v}")).unwrap_or_default(),
            &r.tolerance.map(|v| format!("{v}")).unwrap_or_default(),
            &r.pass.map(|v| v.to_string()).unwrap_or_default(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| DiscError::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| DiscError::Config(e.to_string()))
}

fn render_json(rows: &[ResultRow]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rows)?;
    s.push('\n');
    Ok(s)
}

pub fn render_rows(rows: &[ResultRow], format: OutputFormat) -> Result<String> {
    check_finite(rows)?;
    match format {
        OutputFormat::Csv => render_csv(rows),
        OutputFormat::Json => render_json(rows),
    }
}

/// Write rows to `out`, or to stdout when no path is given.
pub fn write_rows(rows: &[ResultRow], format: OutputFormat, out: Option<&Path>) -> Result<()> {
    let body = render_rows(rows, format)?;
    match out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}
