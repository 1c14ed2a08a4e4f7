//! Column-oriented output: CSV with 12 significant digits and LF endings,
//! or JSON mirroring the columns as arrays.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use crate::config::Format;
use crate::CliError;

pub enum Column {
    F64(Vec<f64>),
    Str(Vec<String>),
}

pub struct Table {
    names: Vec<&'static str>,
    columns: Vec<Column>,
}

pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

impl Table {
    pub fn new() -> Self {
        Table {
            names: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn push_f64(&mut self, name: &'static str, data: Vec<f64>) {
        self.names.push(name);
        self.columns.push(Column::F64(data));
    }

    pub fn push_str(&mut self, name: &'static str, data: Vec<String>) {
        self.names.push(name);
        self.columns.push(Column::Str(data));
    }

    fn rows(&self) -> usize {
        self.columns
            .first()
            .map(|c| match c {
                Column::F64(v) => v.len(),
                Column::Str(v) => v.len(),
            })
            .unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let mut text = self.names.join(",");
        text.push('\n');
        for row in 0..self.rows() {
            for (i, column) in self.columns.iter().enumerate() {
                if i > 0 {
                    text.push(',');
                }
                match column {
                    Column::F64(v) => text.push_str(&fmt_sig(v[row])),
                    Column::Str(v) => text.push_str(&v[row]),
                }
            }
            text.push('\n');
        }
        text
    }

    pub fn to_json(&self) -> Value {
        let mut object = serde_json::Map::new();
        for (name, column) in self.names.iter().zip(&self.columns) {
            let array = match column {
                Column::F64(v) => json!(v),
                Column::Str(v) => json!(v),
            };
            object.insert((*name).to_string(), array);
        }
        Value::Object(object)
    }

    /// Renders per format; `extra` keys are attached to the JSON object
    /// only (CSV stays a plain rectangle).
    pub fn render(&self, format: Format, extra: &[(&str, Value)]) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut value = self.to_json();
                if let Value::Object(object) = &mut value {
                    for (key, val) in extra {
                        object.insert((*key).to_string(), val.clone());
                    }
                }
                render_json(&value)
            }
        }
    }
}

pub fn render_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Data(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Data(format!("writing stdout: {e}"))),
    }
}
