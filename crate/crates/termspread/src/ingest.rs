//! Reading quarterly series from delimited text files.
//!
//! The format is deliberately narrow: UTF-8, comma-delimited, one header row,
//! columns addressed by name, one observation per line. Parsing is strict —
//! every malformed row is an error with its line number, nothing is skipped
//! or guessed — because silently dropped or reinterpreted observations are
//! worse than a refusal.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::series::{align, Dataset, QuarterId, Series, Unit};

/// Where and how to read one series: file path, series name, unit tag, and
/// the header names of the date and value columns.
#[derive(Debug, Clone)]
pub struct SeriesFileSpec {
    pub path: PathBuf,
    pub name: String,
    pub unit: Unit,
    pub date_column: String,
    pub value_column: String,
}

impl SeriesFileSpec {
    /// Spec with the default column names `date` and `value`.
    pub fn new(path: impl Into<PathBuf>, name: impl Into<String>, unit: Unit) -> Self {
        SeriesFileSpec {
            path: path.into(),
            name: name.into(),
            unit,
            date_column: "date".into(),
            value_column: "value".into(),
        }
    }

    pub fn with_columns(
        mut self,
        date_column: impl Into<String>,
        value_column: impl Into<String>,
    ) -> Self {
        self.date_column = date_column.into();
        self.value_column = value_column.into();
        self
    }
}

/// Parse a quarter token in either accepted form:
///
/// * `YYYYQn` (case-insensitive `Q`), e.g. `2010Q3`;
/// * `YYYY-MM`, e.g. `2010-07`, mapped to the quarter containing that month.
pub fn parse_quarter(token: &str) -> Result<QuarterId> {
    let t = token.trim();
    if let Some(pos) = t.find(['Q', 'q']) {
        let (year_part, q_part) = (&t[..pos], &t[pos + 1..]);
        let year: i32 = year_part.parse().map_err(|_| bad_quarter(t))?;
        let quarter: u8 = q_part.parse().map_err(|_| bad_quarter(t))?;
        return QuarterId::new(year, quarter).map_err(|_| bad_quarter(t));
    }
    if let Some((year_part, month_part)) = t.rsplit_once('-') {
        let year: i32 = year_part.parse().map_err(|_| bad_quarter(t))?;
        let month: u8 = month_part.parse().map_err(|_| bad_quarter(t))?;
        if !(1..=12).contains(&month) {
            return Err(bad_quarter(t));
        }
        return QuarterId::new(year, (month + 2) / 3);
    }
    Err(bad_quarter(t))
}

fn bad_quarter(token: &str) -> Error {
    Error::Validation {
        msg: format!("'{token}' is not a quarter (expected YYYYQn or YYYY-MM)"),
    }
}

/// Read one series file according to its spec.
///
/// Rows may appear in any order; the result is sorted by quarter. Duplicate
/// quarters, unparseable dates or values, non-finite values, and (for
/// indicator series) values other than 0/1 are all hard errors carrying the
/// offending line number.
pub fn read_series(spec: &SeriesFileSpec) -> Result<Series> {
    let path_str = spec.path.display().to_string();
    let content = std::fs::read_to_string(&spec.path).map_err(|source| Error::Io {
        path: path_str.clone(),
        source,
    })?;

    let mut lines = content.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::Parse {
        path: path_str.clone(),
        line: 1,
        msg: "file is empty; expected a header row".into(),
    })?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let date_idx = find_column(&columns, &spec.date_column, &path_str)?;
    let value_idx = find_column(&columns, &spec.value_column, &path_str)?;

    let mut observations: Vec<(QuarterId, f64)> = Vec::new();
    let mut first_line_of: HashMap<QuarterId, usize> = HashMap::new();
    for (i, raw_line) in lines {
        let line_no = i + 1;
        if raw_line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw_line.split(',').map(str::trim).collect();
        let needed = date_idx.max(value_idx) + 1;
        if fields.len() < needed {
            return Err(Error::Parse {
                path: path_str.clone(),
                line: line_no,
                msg: format!("expected at least {needed} fields, found {}", fields.len()),
            });
        }
        let quarter = parse_quarter(fields[date_idx]).map_err(|e| Error::Parse {
            path: path_str.clone(),
            line: line_no,
            msg: e.to_string(),
        })?;
        let value_token = fields[value_idx];
        let value: f64 = value_token.parse().map_err(|_| Error::Parse {
            path: path_str.clone(),
            line: line_no,
            msg: format!("'{value_token}' is not a number"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                path: path_str.clone(),
                line: line_no,
                msg: format!("non-finite value '{value_token}'"),
            });
        }
        if spec.unit == Unit::Indicator && value != 0.0 && value != 1.0 {
            return Err(Error::Validation {
                msg: format!(
                    "{path_str}:{line_no}: indicator value {value} is not 0 or 1"
                ),
            });
        }
        if let Some(&first) = first_line_of.get(&quarter) {
            return Err(Error::DuplicateQuarter {
                path: path_str.clone(),
                quarter: quarter.to_string(),
                first_line: first,
                second_line: line_no,
            });
        }
        first_line_of.insert(quarter, line_no);
        observations.push((quarter, value));
    }

    observations.sort_by_key(|&(q, _)| q);
    Series::new(spec.name.clone(), spec.unit, observations)
}

fn find_column(columns: &[&str], wanted: &str, path: &str) -> Result<usize> {
    columns
        .iter()
        .position(|&c| c == wanted)
        .ok_or_else(|| Error::Parse {
            path: path.to_string(),
            line: 1,
            msg: format!(
                "header has no column '{wanted}' (found: {})",
                columns.join(", ")
            ),
        })
}

/// Read several series files and align them onto a common contiguous range.
///
/// Alignment failures are re-tagged with the file paths involved so the user
/// can see which inputs do not overlap.
pub fn load_dataset(specs: &[SeriesFileSpec]) -> Result<Dataset> {
    if specs.is_empty() {
        return Err(Error::Validation {
            msg: "no input files given".into(),
        });
    }
    let mut series_list = Vec::with_capacity(specs.len());
    for spec in specs {
        series_list.push(read_series(spec)?);
    }
    align(series_list).map_err(|e| match e {
        Error::Alignment { msg } => {
            let files: Vec<String> = specs
                .iter()
                .map(|s| s.path.display().to_string())
                .collect();
            Error::Alignment {
                msg: format!("{msg} [files: {}]", files.join(", ")),
            }
        }
        other => other,
    })
}

/// Convenience used by tests and the CLI-level round-trip checks.
pub fn read_series_from(path: &Path, name: &str, unit: Unit) -> Result<Series> {
    read_series(&SeriesFileSpec::new(path, name, unit))
}
