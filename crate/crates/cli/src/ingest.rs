//! Ingestion of paired binary observations from delimited text.
//!
//! Rows hold strictly binary tokens: every selected field must be exactly
//! `"0"` or `"1"`. Anything else is an error, not a coercion. Quoted fields
//! are unsupported; the delimiter is a single byte.

use std::fmt;
use std::fs;
use std::path::PathBuf;

use assoc2x2::table::CountTable;

/// Column picked by 0-based index or by header name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl ColumnSelector {
    /// All-digit selectors are indices, everything else is a header name.
    pub fn parse(raw: &str) -> ColumnSelector {
        if !raw.is_empty() && raw.bytes().all(|b| b.is_ascii_digit()) {
            ColumnSelector::Index(raw.parse().expect("digit-only selector"))
        } else {
            ColumnSelector::Name(raw.to_string())
        }
    }
}

impl fmt::Display for ColumnSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnSelector::Index(i) => write!(f, "{i}"),
            ColumnSelector::Name(name) => f.write_str(name),
        }
    }
}

/// Where and how to read the observation file.
#[derive(Clone, Debug)]
pub struct IngestSpec {
    pub path: PathBuf,
    pub column_a: ColumnSelector,
    pub column_b: ColumnSelector,
    pub has_header: bool,
    pub delimiter: u8,
}

#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("no data rows in input")]
    EmptyFile,
    #[error("column selectors must name two distinct columns")]
    IdenticalColumns,
    #[error("selector '{selector}' needs --header to resolve by name")]
    NameRequiresHeader { selector: String },
    #[error("line {line}: no column matching selector '{selector}'")]
    MissingColumn { line: usize, selector: String },
    #[error("line {line}: token '{token}' is not a binary 0/1 value")]
    MalformedRow { line: usize, token: String },
}

/// Counts the four joint outcomes over all data rows:
/// `(1,1) -> n_p`, `(1,0) -> n_q`, `(0,1) -> n_r`, `(0,0) -> n_s`.
pub fn ingest(spec: &IngestSpec) -> Result<CountTable, IngestError> {
    let text = fs::read_to_string(&spec.path).map_err(|source| IngestError::Io {
        path: spec.path.clone(),
        source,
    })?;
    let delimiter = char::from(spec.delimiter);
    let mut lines = text.lines().enumerate();

    let (col_a, col_b) = if spec.has_header {
        let (index, header) = lines.next().ok_or(IngestError::EmptyFile)?;
        let fields: Vec<&str> = split_row(header, delimiter);
        (
            resolve(&spec.column_a, &fields, index + 1)?,
            resolve(&spec.column_b, &fields, index + 1)?,
        )
    } else {
        (index_only(&spec.column_a)?, index_only(&spec.column_b)?)
    };
    if col_a == col_b {
        return Err(IngestError::IdenticalColumns);
    }

    let mut counts = CountTable::new(0, 0, 0, 0);
    let mut rows = 0u64;
    for (index, raw_line) in lines {
        let line = index + 1;
        let fields = split_row(raw_line, delimiter);
        let a = binary_token(&fields, col_a, &spec.column_a, line)?;
        let b = binary_token(&fields, col_b, &spec.column_b, line)?;
        match (a, b) {
            (true, true) => counts.n_p += 1,
            (true, false) => counts.n_q += 1,
            (false, true) => counts.n_r += 1,
            (false, false) => counts.n_s += 1,
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(IngestError::EmptyFile);
    }
    debug_assert_eq!(counts.total(), rows);
    Ok(counts)
}

fn split_row(line: &str, delimiter: char) -> Vec<&str> {
    line.strip_suffix('\r')
        .unwrap_or(line)
        .split(delimiter)
        .collect()
}

fn resolve(selector: &ColumnSelector, header: &[&str], line: usize) -> Result<usize, IngestError> {
    match selector {
        ColumnSelector::Index(i) if *i < header.len() => Ok(*i),
        ColumnSelector::Name(name) => {
            header
                .iter()
                .position(|field| field == name)
                .ok_or_else(|| IngestError::MissingColumn {
                    line,
                    selector: selector.to_string(),
                })
        }
        ColumnSelector::Index(_) => Err(IngestError::MissingColumn {
            line,
            selector: selector.to_string(),
        }),
    }
}

fn index_only(selector: &ColumnSelector) -> Result<usize, IngestError> {
    match selector {
        ColumnSelector::Index(i) => Ok(*i),
        ColumnSelector::Name(name) => Err(IngestError::NameRequiresHeader {
            selector: name.clone(),
        }),
    }
}

fn binary_token(
    fields: &[&str],
    column: usize,
    selector: &ColumnSelector,
    line: usize,
) -> Result<bool, IngestError> {
    let token = fields
        .get(column)
        .ok_or_else(|| IngestError::MissingColumn {
            line,
            selector: selector.to_string(),
        })?;
    match *token {
        "1" => Ok(true),
        "0" => Ok(false),
        other => Err(IngestError::MalformedRow {
            line,
            token: other.to_string(),
        }),
    }
}
