//! Rendering of command results as aligned tables, CSV or JSON.
//!
//! Machine-readable formats carry 12 significant digits in plain decimal
//! notation; tables show 4 decimals.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

/// Rows of named columns. A single-row table renders as a key/value list in
/// table mode and as one object in JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn record(fields: Vec<(&'static str, Cell)>) -> Self {
        let (columns, row) = fields.into_iter().unzip();
        Table {
            columns,
            rows: vec![row],
        }
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Table => self.write_table(out),
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_table(&self, out: &mut dyn Write) -> std::io::Result<()> {
        if self.rows.len() == 1 {
            let width = self.columns.iter().map(|c| c.len()).max().unwrap_or(0);
            for (name, cell) in self.columns.iter().zip(&self.rows[0]) {
                writeln!(out, "{name:<width$}  {}", human(cell))?;
            }
            return Ok(());
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(human).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| cells.iter().map(|r| r[j].len()).fold(c.len(), usize::max))
            .collect();
        let header: Vec<String> = self
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "{}", header.join("  "))?;
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            writeln!(out, "{}", line.join("  "))?;
        }
        Ok(())
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(machine).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut objects: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let map: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.to_string(), json_cell(cell)))
                    .collect();
                Value::Object(map)
            })
            .collect();
        let value = if objects.len() == 1 {
            objects.pop().unwrap()
        } else {
            Value::Array(objects)
        };
        serde_json::to_writer_pretty(&mut *out, &value)?;
        writeln!(out)
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig12(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// Plain decimal notation with 12 significant digits, e.g.
/// `0.0123456789012`. Non-finite values print as `inf`, `-inf` or `nan`.
pub fn fmt_sig12(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return format!("{:.11}", 0.0);
    }
    let rounded = round_sig12(v);
    let magnitude = rounded.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{rounded:.decimals$}")
}

fn human(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) if v.is_finite() => format!("{v:.4}"),
        Cell::Num(v) => fmt_sig12(*v),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(t) => t.clone(),
    }
}

fn machine(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) => fmt_sig12(*v),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
        Cell::Text(t) => t.clone(),
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Num(v) => Number::from_f64(round_sig12(*v)).map_or(Value::Null, Value::Number),
        Cell::Int(i) => Value::from(*i),
        Cell::Bool(b) => Value::Bool(*b),
        Cell::Text(t) => Value::String(t.clone()),
    }
}
