use crate::args::Format;
use emraman::csv::{fmt_num, Table};
use serde_json::{Map, Value};

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}
impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}
impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}
impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => num(*x),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
        }
    }
}

/// Non-finite numbers become `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// What a subcommand produces. With `summary_only`, JSON output is the
/// summary object and CSV output is the table.
#[derive(Debug, Clone, Default)]
pub struct Artifact {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
    pub summary_only: bool,
    pub message: String,
}

impl Artifact {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.summary.insert(key.to_string(), v.into());
    }

    pub fn set_num(&mut self, key: &str, x: f64) {
        self.summary.insert(key.to_string(), num(x));
    }

    pub fn render(&self, format: Format, config: &Value) -> String {
        match format {
            Format::Csv => {
                let mut t = Table::new(self.header.clone())
                    .comment(format!("emraman {}", env!("CARGO_PKG_VERSION")))
                    .comment(format!("config {config}"));
                if !self.summary.is_empty() {
                    t = t.comment(format!("summary {}", Value::Object(self.summary.clone())));
                }
                for r in &self.rows {
                    t.push_cells(r.iter().map(Cell::csv).collect());
                }
                t.to_csv()
            }
            Format::Json => {
                let v = if self.summary_only {
                    Value::Object(self.summary.clone())
                } else {
                    Value::Array(
                        self.rows
                            .iter()
                            .map(|r| {
                                Value::Object(self.header.iter().cloned().zip(r.iter().map(Cell::json)).collect())
                            })
                            .collect(),
                    )
                };
                let mut s = serde_json::to_string_pretty(&v).expect("json values always serialise");
                s.push('\n');
                s
            }
        }
    }
}
