//! Machine-readable output: CSV with a comment header, or JSON with the
//! same values under a meta object. Floats are written with 17 significant
//! digits so files round-trip exactly.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => fmt17(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) if x.is_finite() => json!(x),
            Cell::Float(x) => json!(x.to_string()),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// 17 significant digits, round-trip safe.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// One tabular result: metadata lines plus named columns.
#[derive(Debug, Default)]
pub struct Table {
    pub command: String,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra named sections (for example gfun root lists): CSV renders them
    /// as trailing comment lines, JSON as an additional array.
    pub extras: Vec<(String, Vec<String>, Vec<Vec<Cell>>)>,
}

impl Table {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Table {
            command: command.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn meta_f64(&mut self, key: &str, value: f64) {
        self.meta.push((key.to_string(), fmt17(value)));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# nlrabi {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# command = {}", self.command);
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        for (name, cols, rows) in &self.extras {
            let _ = writeln!(out, "# section {name}: {}", cols.join(","));
            for row in rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                let _ = writeln!(out, "# {}", cells.join(","));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        meta.insert("tool".into(), json!("nlrabi"));
        meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        meta.insert("command".into(), json!(self.command));
        for (k, v) in &self.meta {
            meta.insert(k.clone(), json!(v));
        }
        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(meta));
        root.insert("columns".into(), json!(self.columns));
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
            .collect();
        root.insert("rows".into(), Value::Array(rows));
        for (name, cols, rows) in &self.extras {
            let data: Vec<Value> = rows
                .iter()
                .map(|row| Value::Array(row.iter().map(Cell::json).collect()))
                .collect();
            root.insert(
                name.clone(),
                json!({ "columns": cols, "rows": Value::Array(data) }),
            );
        }
        serde_json::to_string_pretty(&Value::Object(root)).expect("json encoding")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Writes to the path or stdout. With a path set, a short 10-digit
    /// console table goes to stdout instead.
    pub fn emit(&self, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
        let text = self.render(format);
        match out {
            Some(path) => {
                std::fs::write(path, &text)
                    .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))?;
                print!("{}", self.console_table());
                eprintln!("wrote {} rows to {}", self.rows.len(), path.display());
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Runtime(format!("stdout: {e}")))?;
            }
        }
        Ok(())
    }

    /// Fixed-width summary at 10 significant digits.
    pub fn console_table(&self) -> String {
        let fmt = |c: &Cell| match c {
            Cell::Float(x) => format!("{x:.10}"),
            other => other.csv(),
        };
        let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(fmt(cell).len());
            }
        }
        let mut out = String::new();
        let header: Vec<String> = self
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        let _ = writeln!(out, "{}", header.join("  "));
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{:>w$}", fmt(c)))
                .collect();
            let _ = writeln!(out, "{}", cells.join("  "));
        }
        out
    }
}
