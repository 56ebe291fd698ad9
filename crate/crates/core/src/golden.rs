//! Reference census tables shipped with the crate, and census comparison.

use std::collections::BTreeMap;

use crate::complex::CensusRow;
use crate::error::{AtlasError, Result};

const TABLES: &[(&str, &str)] = &[
    ("S3", include_str!("../golden/S3.csv")),
    ("A4", include_str!("../golden/A4.csv")),
    ("S4", include_str!("../golden/S4.csv")),
    ("SL2(3)", include_str!("../golden/SL2_3.csv")),
    ("A5", include_str!("../golden/A5.csv")),
    ("S5", include_str!("../golden/S5.csv")),
    ("SL2(5)", include_str!("../golden/SL2_5.csv")),
    ("PSL2(7)", include_str!("../golden/PSL2_7.csv")),
    ("SL2(7)", include_str!("../golden/SL2_7.csv")),
    ("A6", include_str!("../golden/A6.csv")),
    ("S6", include_str!("../golden/S6.csv")),
    ("A7", include_str!("../golden/A7.csv")),
];

/// Labels of the groups with a bundled reference table.
pub fn golden_labels() -> impl Iterator<Item = &'static str> {
    TABLES.iter().map(|(label, _)| *label)
}

/// Bundled reference table for a group label such as `SL2(3)`.
pub fn golden_table(label: &str) -> Option<Vec<CensusRow>> {
    TABLES
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(_, text)| parse_golden(text).expect("bundled golden table parses"))
}

/// Parses a census CSV (`genus,faces,n,lambda1,lambda2,vertices,edges,count`).
///
/// Valency pairs are normalized to ascending order and rows sorted, so a
/// transcription may list `6,3` where the census prints `3,6`. Duplicate
/// keys and rows violating `2E = nF` are rejected.
pub fn parse_golden(text: &str) -> Result<Vec<CensusRow>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let expected = ["genus", "faces", "n", "lambda1", "lambda2", "vertices", "edges", "count"];
    if headers.iter().ne(expected) {
        return Err(AtlasError::MalformedGolden(format!(
            "header must be `{}`, found `{}`",
            expected.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows: BTreeMap<_, CensusRow> = BTreeMap::new();
    for (line, record) in reader.deserialize::<CensusRow>().enumerate() {
        let mut row = record.map_err(|e| AtlasError::MalformedGolden(format!("row {}: {e}", line + 1)))?;
        if row.lambda1 > row.lambda2 {
            std::mem::swap(&mut row.lambda1, &mut row.lambda2);
        }
        if row.count == 0 || 2 * row.edges != row.n * row.faces {
            return Err(AtlasError::MalformedGolden(format!("row {}: inconsistent values {row:?}", line + 1)));
        }
        if rows.insert(row.key(), row).is_some() {
            return Err(AtlasError::MalformedGolden(format!("row {}: duplicate type {}", line + 1, row.symbol())));
        }
    }
    Ok(rows.into_values().collect())
}

/// Writes rows as CSV with the fixed column order.
pub fn write_census_csv(rows: &[CensusRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row)?;
    }
    if rows.is_empty() {
        writer.write_record(["genus", "faces", "n", "lambda1", "lambda2", "vertices", "edges", "count"])?;
    }
    let bytes = writer.into_inner().map_err(|e| AtlasError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// One component type whose count differs between two censuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowMismatch {
    /// The row with `count` taken from whichever side has it.
    pub row: CensusRow,
    pub computed: u64,
    pub expected: u64,
}

/// Every type whose counts differ, in canonical order.
pub fn diff_census(computed: &[CensusRow], expected: &[CensusRow]) -> Vec<RowMismatch> {
    let mut merged: BTreeMap<_, (CensusRow, u64, u64)> = BTreeMap::new();
    for row in computed {
        merged.entry(row.key()).or_insert((*row, 0, 0)).1 += row.count;
    }
    for row in expected {
        merged.entry(row.key()).or_insert((*row, 0, 0)).2 += row.count;
    }
    merged
        .into_values()
        .filter(|(_, c, e)| c != e)
        .map(|(row, computed, expected)| RowMismatch { row, computed, expected })
        .collect()
}
