use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::args::Format;
use crate::config::{MaterialSpec, RunConfig};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantsMeta {
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
    pub electron_volt: f64,
}

/// Everything needed to reproduce a file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub tool_version: &'static str,
    pub command: &'static str,
    pub constants_version: String,
    pub constants: ConstantsMeta,
    pub model: MaterialSpec,
    #[serde(rename = "temperatures_K")]
    pub temperatures: Vec<f64>,
    pub rel_tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius_um: Option<f64>,
    #[serde(rename = "q_rad_per_s", skip_serializing_if = "Option::is_none")]
    pub q_fixed: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Meta {
    pub fn for_run(cfg: &RunConfig) -> Self {
        let k = &cfg.constants.values;
        Self {
            tool: "casimir",
            tool_version: env!("CARGO_PKG_VERSION"),
            command: cfg.command.name(),
            constants_version: cfg.constants.version.clone(),
            constants: ConstantsMeta {
                hbar: k.hbar,
                c: k.c,
                k_b: k.k_b,
                electron_volt: k.electron_volt,
            },
            model: cfg.material.clone(),
            temperatures: cfg.temperatures.clone(),
            rel_tol: cfg.rel_tol,
            radius_um: None,
            q_fixed: None,
            notes: Vec::new(),
        }
    }
}

/// A table of finite values with named, unit-suffixed columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub meta: Meta,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepOutput {
    pub fn new(meta: Meta, columns: Vec<String>) -> Self {
        Self {
            meta,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        assert_eq!(row.len(), self.columns.len(), "row width");
        if let Some(i) = row.iter().position(|v| !v.is_finite()) {
            return Err(CliError::config(
                "output",
                format!("non-finite {} in row {}", self.columns[i], self.rows.len()),
            ));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// One `#` line carrying the metadata as JSON, a header, then rows with
    /// shortest round-trip decimals.
    pub fn to_csv(&self) -> String {
        let meta = serde_json::to_string(&self.meta).expect("metadata serializes");
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| format_number(v)))
                .expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8");
        format!("# {meta}\n{body}")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, &v)| (c.clone(), Value::Number(Number::from_f64(v).expect("finite"))))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert(
            "meta".into(),
            serde_json::to_value(&self.meta).expect("metadata serializes"),
        );
        doc.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
        s.push('\n');
        s
    }

    pub fn write(&self, format: Format, out: Option<&std::path::Path>) -> Result<()> {
        let text = self.render(format);
        match out {
            Some(path) => std::fs::write(path, text).map_err(|source| CliError::Output {
                path: path.display().to_string(),
                source,
            }),
            None => std::io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Output {
                    path: "stdout".into(),
                    source,
                }),
        }
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn format_number(v: f64) -> String {
    Number::from_f64(v).map_or_else(|| v.to_string(), |n| n.to_string())
}

/// Reads back a CSV produced by [`SweepOutput::to_csv`]: column names and
/// numeric rows, skipping the metadata line.
pub fn parse_csv(text: &str) -> std::result::Result<(Vec<String>, Vec<Vec<f64>>), String> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let columns = r
        .headers()
        .map_err(|e| e.to_string())?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        rows.push(
            rec.iter()
                .map(|f| f.parse::<f64>().map_err(|e| format!("{f:?}: {e}")))
                .collect::<std::result::Result<Vec<_>, _>>()?,
        );
    }
    Ok((columns, rows))
}
