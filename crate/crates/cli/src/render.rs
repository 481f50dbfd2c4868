//! Output documents and their table, JSON and CSV renderings.
//!
//! Every integer is carried as its exact decimal string, so the three
//! renderings show identical values.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde_json::{Map, Value as Json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(String),
    Bool(bool),
    Text(String),
    List(Vec<String>),
    Map(Vec<(&'static str, Value)>),
    Null,
}

impl Value {
    pub fn int(n: &BigUint) -> Self {
        Value::Int(n.to_str_radix(10))
    }

    pub fn ints<'a>(ns: impl IntoIterator<Item = &'a BigUint>) -> Self {
        Value::List(ns.into_iter().map(|n| n.to_str_radix(10)).collect())
    }

    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Int(s) | Value::Text(s) => Json::String(s.clone()),
            Value::Bool(b) => Json::Bool(*b),
            Value::List(items) => Json::Array(items.iter().cloned().map(Json::String).collect()),
            Value::Map(fields) => Json::Object(
                fields
                    .iter()
                    .map(|(k, v)| ((*k).to_string(), v.to_json()))
                    .collect(),
            ),
            Value::Null => Json::Null,
        }
    }

    fn to_cell(&self) -> String {
        match self {
            Value::Int(s) | Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::List(items) => items.join(" "),
            Value::Map(fields) => fields
                .iter()
                .map(|(k, v)| format!("{k}={}", v.to_cell()))
                .collect::<Vec<_>>()
                .join(" "),
            Value::Null => String::new(),
        }
    }
}

/// A command result: top-level fields plus a table of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub meta: Vec<(&'static str, Value)>,
    /// JSON key holding the rows.
    pub rows_key: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Document {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        for (k, v) in &self.meta {
            root.insert((*k).to_string(), v.to_json());
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                Json::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| ((*c).to_string(), v.to_json()))
                        .collect(),
                )
            })
            .collect();
        root.insert(self.rows_key.to_string(), Json::Array(rows));
        let mut out = serde_json::to_string_pretty(&Json::Object(root)).expect("plain JSON");
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Value::to_cell))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {}", v.to_cell());
        }
        let headers: Vec<&str> = self
            .columns
            .iter()
            .map(|c| if *c == "delta" { "Δ" } else { c })
            .collect();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Value::to_cell).collect())
            .collect();
        let widths: Vec<usize> = headers
            .iter()
            .enumerate()
            .map(|(i, h)| {
                cells
                    .iter()
                    .map(|r| r[i].chars().count())
                    .chain([h.chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |fields: Vec<&str>| -> String {
            fields
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:>w$}", w = *w))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let _ = writeln!(out, "{}", line(headers.clone()));
        for r in &cells {
            let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
        }
        if cells.is_empty() {
            let _ = writeln!(out, "(no rows)");
        }
        out
    }
}
