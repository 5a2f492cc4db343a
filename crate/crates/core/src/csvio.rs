//! Numeric CSV tables with a fixed header.

use std::io::{Read, Write};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("expected header `{expected}`, found `{found}`")]
    BadHeader { expected: String, found: String },
    #[error("malformed row at line {line}: {reason}")]
    MalformedRow { line: u64, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Reads every data row as `N` floats. Line numbers in errors are 1-based and
/// count the header as line 1.
pub(crate) fn read_table<R: Read, const N: usize>(
    reader: R,
    header: [&str; N],
) -> Result<Vec<(u64, [f64; N])>, CsvError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let found = rdr.headers().map_err(into_io)?.clone();
    if found.len() != N || found.iter().zip(header).any(|(a, b)| a != b) {
        return Err(CsvError::BadHeader {
            expected: header.join(","),
            found: found.iter().collect::<Vec<_>>().join(","),
        });
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(into_io)?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != N {
            return Err(CsvError::MalformedRow {
                line,
                reason: format!("expected {N} fields, found {}", record.len()),
            });
        }
        let mut values = [0.0; N];
        for (slot, field) in values.iter_mut().zip(record.iter()) {
            *slot = field.parse::<f64>().map_err(|_| CsvError::MalformedRow {
                line,
                reason: format!("`{field}` is not a number"),
            })?;
            if !slot.is_finite() {
                return Err(CsvError::MalformedRow {
                    line,
                    reason: format!("`{field}` is not finite"),
                });
            }
        }
        rows.push((line, values));
    }
    Ok(rows)
}

/// Writes `header` and rows with LF endings. Values use Rust's shortest
/// round-trip float formatting.
pub(crate) fn write_table<W: Write, const N: usize>(
    mut writer: W,
    header: [&str; N],
    rows: impl IntoIterator<Item = [f64; N]>,
) -> std::io::Result<()> {
    writeln!(writer, "{}", header.join(","))?;
    for row in rows {
        let fields: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        writeln!(writer, "{}", fields.join(","))?;
    }
    Ok(())
}

fn into_io(err: csv::Error) -> CsvError {
    match err.into_kind() {
        csv::ErrorKind::Io(e) => CsvError::Io(e),
        other => CsvError::Io(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("{other:?}"),
        )),
    }
}
