use std::io::{Read, Write};

use thiserror::Error;

use crate::csvio::{self, CsvError};
use crate::elasticity::{ElasticityError, ForceDisplacementTrace, TraceSample};

pub const TRACE_HEADER: [&str; 3] = ["t_s", "x_mm", "f_n"];

#[derive(Debug, Error)]
pub enum TraceIoError {
    #[error(transparent)]
    Csv(#[from] CsvError),
    #[error("line {line}: {source}")]
    InvalidSample { line: u64, source: ElasticityError },
}

/// Reads a `t_s,x_mm,f_n` CSV trace.
pub fn load_trace<R: Read>(reader: R) -> Result<ForceDisplacementTrace, TraceIoError> {
    let rows = csvio::read_table(reader, TRACE_HEADER)?;
    let lines: Vec<u64> = rows.iter().map(|(line, _)| *line).collect();
    let samples = rows
        .into_iter()
        .map(|(_, [t, x, f])| TraceSample { t, x, f })
        .collect();
    ForceDisplacementTrace::new(samples).map_err(|source| {
        let line = match &source {
            ElasticityError::InvalidTrace { index, .. } => lines.get(*index).copied().unwrap_or(0),
            _ => 0,
        };
        TraceIoError::InvalidSample { line, source }
    })
}

pub fn save_trace<W: Write>(writer: W, trace: &ForceDisplacementTrace) -> std::io::Result<()> {
    csvio::write_table(
        writer,
        TRACE_HEADER,
        trace.samples().iter().map(|s| [s.t, s.x, s.f]),
    )
}

pub fn trace_to_csv(trace: &ForceDisplacementTrace) -> String {
    let mut buf = Vec::new();
    save_trace(&mut buf, trace).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}
