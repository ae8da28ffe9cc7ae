//! Matrix files (JSON or real-valued CSV) and builtin example ids.

use std::path::Path;

use halfdisk::generators;
use halfdisk::linalg::ComplexMatrix;
use halfdisk::{Complex, C64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub re: f64,
    pub im: f64,
}

/// On-disk JSON layout of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Entry>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix<f64>) -> Self {
        Self {
            rows: m.n_rows(),
            cols: m.n_cols(),
            entries: (0..m.n_rows())
                .map(|i| m.row(i).iter().map(|z| Entry { re: z.re, im: z.im }).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> CliResult<ComplexMatrix<f64>> {
        if self.entries.len() != self.rows {
            return Err(CliError::input(format!(
                "`rows` is {} but `entries` holds {} rows",
                self.rows,
                self.entries.len()
            )));
        }
        if let Some(r) = self.entries.iter().position(|row| row.len() != self.cols) {
            return Err(CliError::input(format!(
                "entries[{r}] has {} values but `cols` is {}",
                self.entries[r].len(),
                self.cols
            )));
        }
        let data: Vec<C64> = self.entries.iter().flatten().map(|e| Complex::new(e.re, e.im)).collect();
        Ok(ComplexMatrix::new(self.rows, self.cols, data)?)
    }
}

/// A loaded matrix with its display id and any exactly known eigenvalues.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub id: String,
    pub matrix: ComplexMatrix<f64>,
    pub exact_values: Vec<C64>,
}

pub fn parse_json(text: &str, origin: &str) -> CliResult<ComplexMatrix<f64>> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| {
        CliError::input(format!(
            "{origin}: line {}, column {}: {}",
            e.line(),
            e.column(),
            strip_position(&e.to_string())
        ))
    })?;
    file.to_matrix().map_err(|e| CliError::input(format!("{origin}: {e}")))
}

// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> &str {
    msg.rfind(" at line ").map_or(msg, |k| &msg[..k])
}

/// Real CSV, one matrix row per line. Blank lines are skipped.
pub fn parse_csv(text: &str, origin: &str) -> CliResult<ComplexMatrix<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            let detail = match e.kind() {
                csv::ErrorKind::UnequalLengths { expected_len, len, .. } => {
                    format!("expected {expected_len} values, found {len}")
                }
                _ => e.to_string(),
            };
            CliError::input(format!("{origin}: line {line}: {detail}"))
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .enumerate()
            .map(|(k, field)| {
                field.parse::<f64>().map_err(|_| {
                    CliError::input(format!(
                        "{origin}: line {line}, column {}: `{field}` is not a real number (complex input needs JSON)",
                        k + 1
                    ))
                })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::input(format!("{origin}: no rows")));
    }
    ComplexMatrix::from_real_rows(&rows).map_err(|e| CliError::input(format!("{origin}: {e}")))
}

/// Resolves `spec` as a file path if one exists, otherwise as a builtin id.
pub fn load(spec: &str) -> CliResult<Loaded> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{spec}: {e}")))?;
        let is_csv = path
            .extension()
            .is_some_and(|x| x.eq_ignore_ascii_case("csv"));
        let matrix = if is_csv {
            parse_csv(&text, spec)?
        } else {
            parse_json(&text, spec)?
        };
        return Ok(Loaded {
            id: spec.to_string(),
            matrix,
            exact_values: Vec::new(),
        });
    }
    match generators::named::<f64>(spec) {
        Ok(named) => Ok(Loaded {
            id: named.id,
            matrix: named.matrix,
            exact_values: named.exact_values,
        }),
        Err(e) => Err(CliError::input(format!(
            "`{spec}` is neither a readable file nor a builtin example ({e}); see --list-examples"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let m = generators::hesse_gram::<f64>();
        let text = serde_json::to_string(&MatrixFile::from_matrix(&m)).unwrap();
        assert_eq!(parse_json(&text, "x").unwrap(), m);
    }

    #[test]
    fn json_errors_carry_positions() {
        let err = parse_json("{\"rows\": 1,\n \"cols\": 1,\n \"entries\": [[{\"re\": 1.0, \"im\": }]]}", "m.json")
            .unwrap_err();
        assert!(err.message.contains("line 3, column"), "{}", err.message);
        let err = parse_json(r#"{"rows": 1, "cols": 2, "entries": [[{"re": 1.0, "im": 0.0}]]}"#, "m.json").unwrap_err();
        assert!(err.message.contains("entries[0]"));
    }

    #[test]
    fn csv_errors_carry_positions() {
        let m = parse_csv("1, 2\n3, 4\n", "m.csv").unwrap();
        assert_eq!(m[(1, 0)].re, 3.0);
        let err = parse_csv("1,2\n3,x\n", "m.csv").unwrap_err();
        assert!(err.message.contains("line 2, column 2"), "{}", err.message);
        let err = parse_csv("1,2\n3\n", "m.csv").unwrap_err();
        assert!(err.message.contains("line 2"), "{}", err.message);
    }

    #[test]
    fn unknown_ids_are_input_errors() {
        assert_eq!(load("no-such-thing").unwrap_err().code, crate::error::exit::INPUT);
        assert_eq!(load("a3").unwrap().matrix.n_rows(), 3);
    }
}
