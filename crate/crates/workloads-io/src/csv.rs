use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::WorkloadError;

/// One CSV cell. Floats are rendered in scientific notation with six
/// significant digits so repeated runs emit byte-identical files.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Str(String),
    Int(i64),
    UInt(u64),
    Float(f64),
    Empty,
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Str(s) => quote_if_needed(s),
            Field::Int(v) => v.to_string(),
            Field::UInt(v) => v.to_string(),
            Field::Float(v) => format_float(*v),
            Field::Empty => String::new(),
        }
    }
}

/// Fixed float rendering used everywhere a float reaches a CSV cell.
pub fn format_float(v: f64) -> String {
    format!("{v:.5e}")
}

fn quote_if_needed(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes rows under a header, RFC-4180 quoting, LF line endings.
pub fn write_csv(
    path: &Path,
    header: &[&str],
    rows: &[Vec<Field>],
) -> Result<(), WorkloadError> {
    for (idx, row) in rows.iter().enumerate() {
        if row.len() != header.len() {
            return Err(WorkloadError::RowShape {
                row: idx,
                got: row.len(),
                expected: header.len(),
            });
        }
    }
    let mut out = BufWriter::new(File::create(path)?);
    let header_line: Vec<String> = header.iter().map(|h| quote_if_needed(h)).collect();
    writeln!(out, "{}", header_line.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(Field::render).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn floats_render_with_six_significant_digits() {
        assert_eq!(format_float(123.456), "1.23456e2");
        assert_eq!(format_float(0.0012345), "1.23450e-3");
        assert_eq!(format_float(0.0), "0.00000e0");
        assert_eq!(format_float(-45699.0), "-4.56990e4");
    }

    #[test]
    fn quotes_only_when_needed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(
            &path,
            &["name", "note"],
            &[vec![
                Field::Str("plain".into()),
                Field::Str("has,comma \"and\" quote".into()),
            ]],
        )
        .unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text, "name,note\nplain,\"has,comma \"\"and\"\" quote\"\n");
    }

    #[test]
    fn empty_rows_give_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_csv(&path, &["a", "b"], &[]).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "a,b\n");
    }

    #[test]
    fn row_shape_is_enforced() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let err = write_csv(&path, &["a", "b"], &[vec![Field::Int(1)]]).unwrap_err();
        assert!(matches!(
            err,
            WorkloadError::RowShape {
                row: 0,
                got: 1,
                expected: 2
            }
        ));
    }

    #[test]
    fn mixed_field_kinds_render_deterministically() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![vec![
            Field::Int(-3),
            Field::UInt(7),
            Field::Float(2.5),
            Field::Empty,
        ]];
        write_csv(&path, &["i", "u", "f", "e"], &rows).unwrap();
        let first = fs::read(&path).unwrap();
        write_csv(&path, &["i", "u", "f", "e"], &rows).unwrap();
        assert_eq!(first, fs::read(&path).unwrap());
        assert_eq!(
            String::from_utf8(first).unwrap(),
            "i,u,f,e\n-3,7,2.50000e0,\n"
        );
    }
}
