//! CSV ingestion.
//!
//! Rows may have any number of fields. A single header row is skipped when
//! one of the requested fields in the first row is not a number. Every
//! requested field after that must be a finite float.

use std::fs::File;
use std::path::Path;

use probgeo_core::{Sample, VectorSample};

use crate::error::CliError;

fn parse_error(path: &Path, line: u64, message: impl Into<String>) -> CliError {
    CliError::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

/// Rows of the requested columns, in file order.
fn read_rows(path: &Path, columns: &[usize]) -> Result<Vec<Vec<f64>>, CliError> {
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(file);

    let mut rows = Vec::new();
    let mut record = csv::StringRecord::new();
    let mut first = true;
    loop {
        match reader.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {}
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                return Err(match e.into_kind() {
                    csv::ErrorKind::Io(source) => CliError::Io {
                        path: path.to_path_buf(),
                        source,
                    },
                    kind => parse_error(path, line, format!("{kind:?}")),
                });
            }
        }
        let line = record.position().map_or(0, |p| p.line());
        let is_header = first
            && columns
                .iter()
                .any(|&c| record.get(c).is_some_and(|f| f.parse::<f64>().is_err()));
        first = false;
        if is_header {
            continue;
        }
        let row = columns
            .iter()
            .map(|&c| {
                let field = record
                    .get(c)
                    .ok_or_else(|| parse_error(path, line, format!("missing column {c}")))?;
                let x: f64 = field
                    .parse()
                    .map_err(|_| parse_error(path, line, format!("column {c}: '{field}' is not a number")))?;
                if !x.is_finite() {
                    return Err(parse_error(
                        path,
                        line,
                        format!("column {c}: non-finite value '{field}'"),
                    ));
                }
                Ok(x)
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::EmptyInput(path.to_path_buf()));
    }
    Ok(rows)
}

/// One column as a sample.
pub fn ingest_column(path: &Path, column: usize) -> Result<Sample, CliError> {
    let values = read_rows(path, &[column])?.into_iter().map(|r| r[0]).collect();
    Ok(Sample::new(values)?)
}

/// Several columns as a vector sample, in the order requested.
pub fn ingest_columns(path: &Path, columns: &[usize]) -> Result<VectorSample, CliError> {
    Ok(VectorSample::new(read_rows(path, columns)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn plain_column() {
        let f = file("1\n2\n3\n");
        assert_eq!(ingest_column(f.path(), 0).unwrap().values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn header_is_skipped() {
        let f = file("x\n1\n2\n");
        assert_eq!(ingest_column(f.path(), 0).unwrap().values(), &[1.0, 2.0]);
        let f = file("a,b\n1,10\n2,20\n");
        assert_eq!(ingest_column(f.path(), 1).unwrap().values(), &[10.0, 20.0]);
    }

    #[test]
    fn bad_field_reports_its_line() {
        let f = file("1\nfoo\n");
        match ingest_column(f.path(), 0) {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_finite_values_are_rejected() {
        for bad in ["1\nNaN\n", "1\ninf\n", "x\n-inf\n"] {
            let f = file(bad);
            assert!(
                matches!(ingest_column(f.path(), 0), Err(CliError::Parse { line: 2, .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn empty_and_missing() {
        assert!(matches!(
            ingest_column(file("").path(), 0),
            Err(CliError::EmptyInput(_))
        ));
        assert!(matches!(
            ingest_column(file("x\n").path(), 0),
            Err(CliError::EmptyInput(_))
        ));
        assert!(matches!(
            ingest_column(Path::new("/nonexistent/probgeo.csv"), 0),
            Err(CliError::Io { .. })
        ));
        assert!(matches!(
            ingest_column(file("1,2\n3\n").path(), 1),
            Err(CliError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn columns_are_reordered_as_requested() {
        let f = file("a,b,c\n1,2,3\n4,5,6\n");
        let vs = ingest_columns(f.path(), &[2, 0]).unwrap();
        assert_eq!(vs.dim(), 2);
        assert_eq!(vs.row(1), &[6.0, 4.0]);
    }
}
