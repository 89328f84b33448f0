use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::config::{OutputFormat, RunConfig};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Self::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Self::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Values of a numeric column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| *c == name)?;
        self.rows
            .iter()
            .map(|r| match r[i] {
                Cell::Num(v) => Some(v),
                Cell::Text(_) => None,
            })
            .collect()
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) => format!("{v:.10e}"),
        Cell::Text(t) if t.contains([',', '"', '\n']) => format!("\"{}\"", t.replace('"', "\"\"")),
        Cell::Text(t) => t.clone(),
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Num(v) => serde_json::Number::from_f64(*v)
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Cell::Text(t) => Value::String(t.clone()),
    }
}

/// Comment lines recording the version and every parameter of the run.
pub fn header(config: &RunConfig) -> String {
    let mut text = format!("# casimir {}\n", env!("CARGO_PKG_VERSION"));
    for line in config.to_config_text().lines() {
        text.push_str("# ");
        text.push_str(line);
        text.push('\n');
    }
    text
}

pub fn render(config: &RunConfig, table: &Table) -> String {
    let mut text = header(config);
    match config.format {
        OutputFormat::Csv => {
            text.push_str(&table.columns.join(","));
            text.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(csv_cell).collect();
                text.push_str(&cells.join(","));
                text.push('\n');
            }
        }
        OutputFormat::JsonLines => {
            for row in &table.rows {
                let fields: Vec<String> = table
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| format!("{}:{}", Value::from(*c), json_cell(v)))
                    .collect();
                text.push('{');
                text.push_str(&fields.join(","));
                text.push_str("}\n");
            }
        }
    }
    text
}

/// Writes `text` to `path` through a temporary file in the same directory,
/// so a failed run never leaves partial output behind.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let io = |context: &str| {
        let context = format!("{context} {}", path.display());
        move |source| CliError::Io { context, source }
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut file = tempfile::NamedTempFile::new_in(dir).map_err(io("creating a temporary file for"))?;
    file.write_all(text.as_bytes()).map_err(io("writing"))?;
    file.flush().map_err(io("writing"))?;
    file.persist(path).map_err(|e| io("renaming into")(e.error))?;
    Ok(())
}
