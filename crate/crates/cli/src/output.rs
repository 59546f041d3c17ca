//! The report every command produces and its JSON / CSV renderings.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};
use symgraph::{GraphParams, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Serialize)]
pub struct ParamsOut {
    pub k: Option<u32>,
    pub r: Option<u32>,
    pub q: Option<u64>,
}

/// One output value: an exact string when one exists, and its float.
#[derive(Debug, Serialize)]
pub struct Row {
    pub key: String,
    pub exact: Option<String>,
    pub float: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub params: ParamsOut,
    pub inputs: Map<String, Value>,
    pub outputs: Vec<Row>,
    pub diagnostics: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, params: &GraphParams) -> Self {
        Report {
            command: command.to_string(),
            params: ParamsOut {
                k: Some(params.k()),
                r: Some(params.r()),
                q: Some(params.q()),
            },
            inputs: Map::new(),
            outputs: Vec::new(),
            diagnostics: Map::new(),
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.inputs.insert(key.to_string(), v.into());
    }

    pub fn diag(&mut self, key: &str, v: impl Into<Value>) {
        self.diagnostics.insert(key.to_string(), v.into());
    }

    /// A value from any scalar type; complex values with a nonzero
    /// imaginary part are written as `re+imi` in the exact column.
    pub fn value<S: Scalar>(&mut self, key: impl Into<String>, v: &S) {
        let c = v.to_complex();
        let (exact, float) = match v.exact_string() {
            Some(s) => (Some(s), Some(c.re)),
            None if c.im != 0.0 => (Some(format!("{}{:+}i", c.re, c.im)), Some(c.re)),
            None => (None, Some(c.re)),
        };
        self.outputs.push(Row {
            key: key.into(),
            exact,
            float,
        });
    }

    pub fn float(&mut self, key: impl Into<String>, v: f64) {
        self.outputs.push(Row {
            key: key.into(),
            exact: None,
            float: Some(v),
        });
    }

    pub fn exact(&mut self, key: impl Into<String>, exact: impl ToString, float: f64) {
        self.outputs.push(Row {
            key: key.into(),
            exact: Some(exact.to_string()),
            float: Some(float),
        });
    }

    /// A non-numeric output such as "unavailable".
    pub fn text(&mut self, key: impl Into<String>, text: impl ToString) {
        self.outputs.push(Row {
            key: key.into(),
            exact: Some(text.to_string()),
            float: None,
        });
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["key", "exact", "float"])?;
                for row in &self.outputs {
                    w.write_record([
                        row.key.clone(),
                        row.exact.clone().unwrap_or_default(),
                        row.float.map(|f| format!("{f:e}")).unwrap_or_default(),
                    ])?;
                }
                w.flush()
            }
        }
    }
}
