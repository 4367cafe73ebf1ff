//! Row sinks: CSV with a header row, or JSON lines with a fixed key order.

use std::io::Write;

use num_bigint::BigInt;

use crate::error::Result;

/// Output format for tabular reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }

    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "csv" => Some(Format::Csv),
            "jsonl" | "json-lines" => Some(Format::Jsonl),
            _ => None,
        }
    }
}

/// One report cell. Integers are written as bare JSON numbers, however large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(BigInt),
    Text(String),
    Bool(bool),
}

impl From<BigInt> for Cell {
    fn from(v: BigInt) -> Self {
        Cell::Int(v)
    }
}

impl From<&BigInt> for Cell {
    fn from(v: &BigInt) -> Self {
        Cell::Int(v.clone())
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v.into())
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v.into())
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json_value(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => serde_json::Value::String(s.clone()).to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

enum Backend<'w> {
    Csv(Box<csv::Writer<&'w mut dyn Write>>),
    Jsonl(&'w mut dyn Write),
}

/// Writes rows under a fixed header.
pub struct Sink<'w> {
    header: Vec<&'static str>,
    backend: Backend<'w>,
    rows: usize,
}

impl<'w> Sink<'w> {
    pub fn new(format: Format, out: &'w mut dyn Write, header: &[&'static str]) -> Result<Self> {
        let backend = match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(header)?;
                Backend::Csv(Box::new(w))
            }
            Format::Jsonl => Backend::Jsonl(out),
        };
        Ok(Sink {
            header: header.to_vec(),
            backend,
            rows: 0,
        })
    }

    pub fn row(&mut self, cells: &[Cell]) -> Result<()> {
        assert_eq!(cells.len(), self.header.len(), "row width must match the header");
        match &mut self.backend {
            Backend::Csv(w) => w.write_record(cells.iter().map(Cell::csv_field))?,
            Backend::Jsonl(w) => {
                let body: Vec<String> = self
                    .header
                    .iter()
                    .zip(cells)
                    .map(|(k, c)| format!("{}:{}", serde_json::Value::String(k.to_string()), c.json_value()))
                    .collect();
                writeln!(w, "{{{}}}", body.join(","))?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn finish(self) -> Result<()> {
        match self.backend {
            Backend::Csv(mut w) => w.flush()?,
            Backend::Jsonl(w) => w.flush()?,
        }
        Ok(())
    }
}
