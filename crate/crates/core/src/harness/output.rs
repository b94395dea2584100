// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{PolarError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Jsonl,
}

impl std::str::FromStr for OutputFormat {
    type Err = PolarError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "jsonl" => Ok(OutputFormat::Jsonl),
            _ => Err(PolarError::invalid(format!("unknown output format '{s}'"))),
        }
    }
}

impl std::fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Jsonl => "jsonl",
        })
    }
}

/// Writes rows as CSV (with header) or JSON lines.
pub fn write_rows_to<T: Serialize>(rows: &[T], out: impl Write, format: OutputFormat, header: bool) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(header).from_writer(out);
            for row in rows {
                w.serialize(row).map_err(|e| PolarError::Serialize(e.to_string()))?;
            }
            w.flush().map_err(|e| PolarError::Serialize(e.to_string()))?;
        }
        OutputFormat::Jsonl => {
            let mut out = out;
            for row in rows {
                serde_json::to_writer(&mut out, row).map_err(|e| PolarError::Serialize(e.to_string()))?;
                out.write_all(b"\n").map_err(|e| PolarError::Serialize(e.to_string()))?;
            }
        }
    }
    Ok(())
}

/// Appends rows to `path`, or writes them to stdout when `path` is `None`.
///
/// The CSV header is written only when the file is new or empty, so repeated
/// calls with the same row type build one table.
pub fn write_rows<T: Serialize>(rows: &[T], path: Option<&Path>, format: OutputFormat) -> Result<()> {
    match path {
        None => write_rows_to(rows, std::io::stdout().lock(), format, true),
        Some(p) => {
            let fresh = std::fs::metadata(p).map(|m| m.len() == 0).unwrap_or(true);
            let file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(p)
                .map_err(|e| PolarError::io(p, e))?;
            write_rows_to(rows, std::io::BufWriter::new(file), format, fresh)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        a: u32,
        b: Option<f64>,
    }

    #[test]
    fn csv_appends_without_repeating_the_header() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.csv");
        write_rows(&[Row { a: 1, b: None }], Some(&p), OutputFormat::Csv).unwrap();
        write_rows(&[Row { a: 2, b: Some(0.5) }], Some(&p), OutputFormat::Csv).unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "a,b\n1,\n2,0.5\n");
    }

    #[test]
    fn jsonl_one_object_per_line() {
        let mut buf = Vec::new();
        write_rows_to(&[Row { a: 1, b: None }, Row { a: 2, b: Some(1.0) }], &mut buf, OutputFormat::Jsonl, true).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\"a\":1,\"b\":null}\n{\"a\":2,\"b\":1.0}\n");
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
