//! Record emission: JSON lines, CSV or an aligned text table.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Table => "table",
        }
    }
}

/// One output row; field order is the column order of csv and table output.
#[derive(Debug, Clone, Default)]
pub struct Record(Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn payload(&self) -> Value {
        Value::Object(
            self.0
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect::<Map<_, _>>(),
        )
    }
}

/// Decimal string for an exact integer.
pub fn num(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

pub fn nums<T: ToString>(vs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(vs.into_iter().map(num).collect())
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

pub fn json_line(command: &Value, record: &Record) -> String {
    let mut obj = Map::new();
    obj.insert(
        "schema_version".into(),
        Value::String(SCHEMA_VERSION.into()),
    );
    obj.insert("command".into(), command.clone());
    obj.insert("payload".into(), record.payload());
    Value::Object(obj).to_string()
}

pub fn emit(
    out: &mut impl Write,
    format: Format,
    command: &Value,
    records: &[Record],
) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", json_line(command, r))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            if let Some(first) = records.first() {
                w.write_record(first.0.iter().map(|(k, _)| *k))?;
            }
            for r in records {
                w.write_record(r.0.iter().map(|(_, v)| cell(v)))?;
            }
            w.flush()?;
        }
        Format::Table => {
            let Some(first) = records.first() else {
                return Ok(());
            };
            let header: Vec<String> = first.0.iter().map(|(k, _)| k.to_string()).collect();
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| r.0.iter().map(|(_, v)| cell(v)).collect())
                .collect();
            let mut widths: Vec<usize> = header.iter().map(String::len).collect();
            for row in &rows {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.len());
                }
            }
            for row in std::iter::once(&header).chain(&rows) {
                let line: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "{}", line.join("  ").trim_end())?;
            }
        }
    }
    Ok(())
}
