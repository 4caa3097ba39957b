//! Rectangular numeric tables and their CSV form.

use std::fs;
use std::path::Path;

use crate::error::CliError;

/// One table entry. Reals print with 17 significant digits so a file
/// round-trips every `f64` exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Real(f64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics if its width differs from the header.
    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            writer
                .write_record(row.iter().map(Cell::render))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ASCII output")
    }
}

/// Writes `table` to `path`, creating parent directories as needed.
pub fn emit_csv(table: &Table, path: &Path) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, table.to_csv()).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(Table::new(&["x", "u"]).to_csv(), "x,u\n");
    }

    #[test]
    fn two_by_two_table_has_three_lines() {
        let mut t = Table::new(&["n", "e"]);
        t.push(vec![Cell::from(64usize), Cell::from(0.1)]);
        t.push(vec![Cell::from(128usize), Cell::from(-2.5e-7)]);
        let text = t.to_csv();
        assert_eq!(text.lines().count(), 3);
        assert!(text.ends_with('\n'));
        assert_eq!(text.lines().nth(1), Some("64,1.0000000000000001e-1"));
        assert_eq!(text.lines().nth(2), Some("128,-2.4999999999999999e-7"));
    }

    #[test]
    fn reals_round_trip() {
        for v in [std::f64::consts::PI, 1e-300, -123456.789, 0.1 + 0.2] {
            let text = Cell::from(v).render();
            assert_eq!(text.parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn emits_into_nested_directories() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a/b/t.csv");
        let mut t = Table::new(&["x"]);
        t.push(vec![Cell::from(1.0)]);
        emit_csv(&t, &path).unwrap();
        assert_eq!(
            std::fs::read_to_string(path).unwrap(),
            "x\n1.0000000000000000e0\n"
        );
    }
}
