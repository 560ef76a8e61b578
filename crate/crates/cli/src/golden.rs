//! Golden node counts for the standard box, `N = 2^m`, `m = 1..=30`,
//! `d in {2, 4, 8, 16, 32}`.
//!
//! Stored as CSV with header `d,log2N,count`.

use std::io::Read;
use std::path::Path;

use frolov_core::verify::CountRecord;
use serde::Deserialize;

/// The bundled table, version 1.
pub const GOLDEN_CSV: &str = include_str!("../assets/golden_counts_v1.csv");

#[derive(Debug, thiserror::Error)]
pub enum GoldenError {
    #[error("golden table: {0}")]
    Csv(#[from] csv::Error),
    #[error("golden table row {row}: dimension {d} is not a power of two")]
    BadDimension { row: usize, d: usize },
}

#[derive(Deserialize)]
struct Row {
    d: usize,
    #[serde(rename = "log2N")]
    log2_n: u32,
    count: u64,
}

pub fn parse<R: Read>(reader: R) -> Result<Vec<CountRecord>, GoldenError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (i, row) in rdr.deserialize::<Row>().enumerate() {
        let row = row?;
        if !row.d.is_power_of_two() {
            return Err(GoldenError::BadDimension {
                row: i + 1,
                d: row.d,
            });
        }
        out.push(CountRecord {
            d: row.d,
            log2_scale: row.log2_n,
            expected: row.count,
        });
    }
    Ok(out)
}

pub fn bundled() -> Vec<CountRecord> {
    parse(GOLDEN_CSV.as_bytes()).expect("bundled golden table is well formed")
}

pub fn load(path: &Path) -> Result<Vec<CountRecord>, GoldenError> {
    let file = std::fs::File::open(path).map_err(csv::Error::from)?;
    parse(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_shape() {
        let rows = bundled();
        assert_eq!(rows.len(), 150);
        let find = |d, m| {
            rows.iter()
                .find(|r| r.d == d && r.log2_scale == m)
                .unwrap()
                .expected
        };
        assert_eq!(find(2, 1), 3);
        assert_eq!(find(4, 20), 1048609);
        assert_eq!(find(16, 1), 77);
        assert_eq!(find(32, 30), 1208920345);
        let d2: Vec<u64> = (1..=10).map(|m| find(2, m)).collect();
        assert_eq!(d2, [3, 5, 7, 15, 31, 65, 131, 257, 513, 1027]);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(
            parse("d,log2N,count\n3,1,5\n".as_bytes()),
            Err(GoldenError::BadDimension { d: 3, .. })
        ));
        assert!(parse("d,log2N,count\n2,x,5\n".as_bytes()).is_err());
    }
}
