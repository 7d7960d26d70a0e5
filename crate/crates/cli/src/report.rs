use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

/// A CSV report: a fixed header and rows of already formatted cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    /// Appends a row; panics if its width differs from the header's.
    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(
            row.len(),
            self.header.len(),
            "row width does not match header"
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn write_csv<W: Write>(table: &Table, out: W) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    w.flush()
}

/// Writes to `path`, or to standard output when `None`.
pub fn emit_csv(table: &Table, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => write_csv(table, File::create(p)?),
        None => write_csv(table, io::stdout().lock()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(t: &Table) -> String {
        let mut buf = Vec::new();
        write_csv(t, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = Table::new(&["dx", "dt"]);
        assert_eq!(render(&t), "dx,dt\n");
    }

    #[test]
    fn floats_round_trip() {
        let mut t = Table::new(&["x"]);
        for x in [0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0] {
            t.push(vec![num(x)]);
        }
        let s = render(&t);
        let back: Vec<f64> = s.lines().skip(1).map(|l| l.parse().unwrap()).collect();
        assert_eq!(back, vec![0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0]);
        assert!(s.ends_with('\n'));
    }

    #[test]
    fn column_lookup() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), "2".into()]);
        assert_eq!(t.column("b"), Some(vec!["2"]));
        assert_eq!(t.column("c"), None);
    }
}
