//! Report layout shared by the subcommands.

use clap::ValueEnum;
use serde::Serialize;

use cpmult_core::experiment::fmt_float;
use cpmult_core::{ComplexMatrix, PureState};

/// Accuracy attached to values computed by direct linear algebra.
pub const EXACT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Serialize)]
pub struct Row {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub value: f64,
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub converged: Option<bool>,
}

impl Row {
    pub fn new(name: &str, value: f64, tol: f64, converged: Option<bool>) -> Self {
        Self {
            name: name.to_string(),
            p: None,
            value,
            tol,
            converged,
        }
    }

    pub fn at(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }
}

#[derive(Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub config: serde_json::Value,
    pub rows: Vec<Row>,
    pub details: serde_json::Value,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, config: serde_json::Value) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            seed,
            config,
            rows: Vec::new(),
            details: serde_json::Value::Null,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => {
                let mut out = String::from("name,p,value,tol,converged\n");
                for r in &self.rows {
                    let p = r.p.map(fmt_float).unwrap_or_default();
                    let converged = r.converged.map(|c| c.to_string()).unwrap_or_default();
                    out.push_str(&format!("{},{p},{},{},{converged}\n", r.name, fmt_float(r.value), fmt_float(r.tol)));
                }
                out
            }
        }
    }
}

pub fn matrix_json(m: &ComplexMatrix) -> serde_json::Value {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect();
    serde_json::json!(rows)
}

pub fn state_json(s: &PureState) -> serde_json::Value {
    let amps: Vec<[f64; 2]> = s.amplitudes().iter().map(|z| [z.re, z.im]).collect();
    serde_json::json!(amps)
}
