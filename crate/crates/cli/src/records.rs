//! CSV record reading and output writing shared by the batch commands.

use crate::{CliError, Format};
use lgfib_core::verify::format_f64;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

/// One parsed input record with its 1-based line number.
pub struct Record {
    pub line: usize,
    pub values: Vec<f64>,
}

/// Reads comma-separated numeric records. A first row that fails numeric
/// parsing is treated as a header and skipped; any later parse failure is
/// an input error naming the line.
pub fn read_records(input: Option<&Path>) -> Result<Vec<Record>, CliError> {
    let reader: Box<dyn Read> = match input {
        Some(path) => Box::new(File::open(path).map_err(|err| {
            CliError::Input(format!("cannot open {}: {err}", path.display()))
        })?),
        None => Box::new(io::stdin()),
    };
    let mut records = Vec::new();
    for (index, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = index + 1;
        let text = line?;
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let parsed: Result<Vec<f64>, _> = trimmed
            .split(',')
            .map(|field| field.trim().parse::<f64>())
            .collect();
        match parsed {
            Ok(values) => records.push(Record {
                line: line_no,
                values,
            }),
            Err(err) => {
                if line_no == 1 {
                    continue; // header row
                }
                return Err(CliError::Input(format!(
                    "line {line_no}: cannot parse record: {err}"
                )));
            }
        }
    }
    Ok(records)
}

/// Opens the output sink: a file when a path is given, stdout otherwise.
pub fn open_output(output: Option<&PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match output {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|err| {
            CliError::Input(format!("cannot create {}: {err}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// One output row: named numeric columns (possibly absent) plus a status.
pub struct OutputRow {
    pub values: Vec<Option<f64>>,
    pub status: &'static str,
}

/// Writes rows under the given column names, as CSV or as a JSON array of
/// objects with the same field names. Absent values become empty CSV fields
/// and JSON nulls.
pub fn write_rows(
    out: &mut dyn Write,
    format: Format,
    columns: &[String],
    rows: &[OutputRow],
) -> Result<(), CliError> {
    match format {
        Format::Csv => {
            writeln!(out, "{},status", columns.join(","))?;
            for row in rows {
                let fields: Vec<String> = row
                    .values
                    .iter()
                    .map(|v| v.map(format_f64).unwrap_or_default())
                    .collect();
                writeln!(out, "{},{}", fields.join(","), row.status)?;
            }
        }
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mut map = serde_json::Map::new();
                    for (name, value) in columns.iter().zip(&row.values) {
                        map.insert(
                            name.clone(),
                            value
                                .map(|v| serde_json::json!(v))
                                .unwrap_or(serde_json::Value::Null),
                        );
                    }
                    map.insert("status".into(), serde_json::json!(row.status));
                    serde_json::Value::Object(map)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &objects)
                .map_err(|err| CliError::Input(format!("cannot serialize output: {err}")))?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}
