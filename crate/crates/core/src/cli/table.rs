//! Column tables rendered as CSV or JSON.

use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::numeric::fmt_sig17;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// An exact integer or rational, kept as its decimal text.
    Exact(String),
    Float(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    pub fn exact(v: impl ToString) -> Self {
        Cell::Exact(v.to_string())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Exact(s) | Cell::Text(s) => s.clone(),
            Cell::Float(v) => fmt_sig17(*v),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Exact(s) => s
                .parse::<i64>()
                .map(Value::from)
                .unwrap_or_else(|_| Value::String(s.clone())),
            Cell::Float(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let records: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(map)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(records))
            .expect("serialising plain values cannot fail");
        s.push('\n');
        s
    }
}

/// Parses CSV written by [`Table::to_csv`]: a header row, then rows of
/// numbers or bare text. Returns the header and the cells.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<Cell>>)> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| Error::domain("empty CSV"))?
        .split(',')
        .map(String::from)
        .collect();
    let rows = lines
        .map(|line| {
            let cells: Vec<Cell> = line.split(',').map(parse_cell).collect();
            if cells.len() != header.len() {
                return Err(Error::domain(format!("ragged CSV row `{line}`")));
            }
            Ok(cells)
        })
        .collect::<Result<_>>()?;
    Ok((header, rows))
}

fn parse_cell(s: &str) -> Cell {
    let looks_exact = !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_digit() || c == '-' || c == '/');
    if looks_exact {
        Cell::Exact(s.to_string())
    } else if let Ok(v) = s.parse::<f64>() {
        Cell::Float(v)
    } else {
        Cell::Text(s.to_string())
    }
}
