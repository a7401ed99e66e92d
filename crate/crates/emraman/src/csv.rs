//! Plain CSV tables with a fixed number format, so that artifacts are
//! byte-identical across runs and thread counts.

use std::fmt::Write;

/// `x` with 12 significant digits in scientific notation.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        // avoid "-0"
        return "0.00000000000e0".to_string();
    }
    format!("{x:.11e}")
}

/// A CSV table: optional `# ` comment lines, a header row, then rows of
/// pre-formatted cells.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { comments: Vec::new(), header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn comment(mut self, line: impl Into<String>) -> Self {
        self.comments.push(line.into());
        self
    }

    /// Appends a numeric row.
    pub fn push(&mut self, row: Vec<f64>) {
        self.push_cells(row.into_iter().map(fmt_num).collect());
    }

    pub fn push_cells(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Column `name` parsed back to numbers (non-numeric cells become NaN).
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i].parse().unwrap_or(f64::NAN)).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }
}
