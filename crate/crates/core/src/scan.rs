//! Tabulated bigraded homotopy data and the scan for elements `alpha` with
//! `(1 - eps) alpha != 0` in odd weight.
//!
//! Whether `(1 - eps) alpha` vanishes is read from the table, never computed.

use std::collections::HashSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The bundled sample table, in CSV form.
pub const SAMPLE_TABLE_CSV: &str = include_str!("../data/sample_table.csv");

pub const CSV_HEADER: [&str; 5] = ["name", "stem", "weight", "eps_nonzero", "source"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTableRow {
    pub name: String,
    pub stem: i64,
    pub weight: i64,
    /// Whether `(1 - eps)` times this element is nonzero.
    pub eps_nonzero: bool,
    pub source: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::Unknown {
                what: "table format",
                name: s.to_string(),
            }),
        }
    }
}

impl TableFormat {
    /// Guess from a file name, defaulting to CSV.
    pub fn from_path(path: &str) -> Self {
        if path.to_ascii_lowercase().ends_with(".json") {
            TableFormat::Json
        } else {
            TableFormat::Csv
        }
    }
}

fn parse_flag(s: &str) -> Option<bool> {
    match s.trim() {
        "0" | "false" => Some(false),
        "1" | "true" => Some(true),
        _ => None,
    }
}

/// Rows of a CSV table with columns `name,stem,weight,eps_nonzero,source`.
/// A header line is optional.
pub fn parse_csv(input: &str) -> Result<Vec<GroupTableRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input.as_bytes());
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Table {
            line: e.position().map_or(0, |p| p.line() as usize),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let fields: Vec<&str> = record.iter().collect();
        if i == 0 && fields.first() == Some(&"name") && fields.get(1) == Some(&"stem") {
            continue;
        }
        let err = |reason: String| Error::Table { line, reason };
        if fields.len() != CSV_HEADER.len() {
            return Err(err(format!("expected 5 fields, found {}", fields.len())));
        }
        let int = |idx: usize| {
            fields[idx]
                .parse::<i64>()
                .map_err(|_| err(format!("{} {:?} is not an integer", CSV_HEADER[idx], fields[idx])))
        };
        let row = GroupTableRow {
            name: fields[0].to_string(),
            stem: int(1)?,
            weight: int(2)?,
            eps_nonzero: parse_flag(fields[3])
                .ok_or_else(|| err(format!("eps_nonzero {:?} is not 0 or 1", fields[3])))?,
            source: fields[4].to_string(),
        };
        if row.name.is_empty() {
            return Err(err("empty name".into()));
        }
        check_unique(&mut seen, &row, line)?;
        rows.push(row);
    }
    Ok(rows)
}

/// A JSON array of row objects. Duplicate errors report the 1-based
/// position in the array as the line.
pub fn parse_json(input: &str) -> Result<Vec<GroupTableRow>> {
    let rows: Vec<GroupTableRow> = serde_json::from_str(input).map_err(|e| Error::Table {
        line: e.line(),
        reason: e.to_string(),
    })?;
    let mut seen = HashSet::new();
    for (i, row) in rows.iter().enumerate() {
        check_unique(&mut seen, row, i + 1)?;
    }
    Ok(rows)
}

fn check_unique(seen: &mut HashSet<(i64, i64, String)>, row: &GroupTableRow, line: usize) -> Result<()> {
    if !seen.insert((row.stem, row.weight, row.name.clone())) {
        return Err(Error::DuplicateRow {
            line,
            name: row.name.clone(),
            stem: row.stem,
            weight: row.weight,
        });
    }
    Ok(())
}

pub fn parse_table(input: &str, format: TableFormat) -> Result<Vec<GroupTableRow>> {
    match format {
        TableFormat::Csv => parse_csv(input),
        TableFormat::Json => parse_json(input),
    }
}

pub fn render_csv(rows: &[GroupTableRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        writer
            .write_record([
                r.name.as_str(),
                &r.stem.to_string(),
                &r.weight.to_string(),
                if r.eps_nonzero { "1" } else { "0" },
                &r.source,
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

pub fn render_json(rows: &[GroupTableRow]) -> String {
    let mut out = serde_json::to_string_pretty(rows).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn render_table(rows: &[GroupTableRow], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => render_csv(rows),
        TableFormat::Json => render_json(rows),
    }
}

pub fn sample_table() -> Vec<GroupTableRow> {
    parse_csv(SAMPLE_TABLE_CSV).expect("bundled table parses")
}

/// Rows with `(1 - eps) alpha != 0` in odd weight, sorted by stem, weight,
/// then name. An empty result means the pattern holds on this table.
pub fn check_conjecture(rows: &[GroupTableRow]) -> Vec<GroupTableRow> {
    let mut violations: Vec<GroupTableRow> = rows
        .iter()
        .filter(|r| r.eps_nonzero && r.weight.rem_euclid(2) == 1)
        .cloned()
        .collect();
    violations.sort_by(|x, y| (x.stem, x.weight, &x.name).cmp(&(y.stem, y.weight, &y.name)));
    violations
}
