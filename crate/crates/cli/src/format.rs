//! Text encodings for points: CSV rows of `x` and JSONL objects `{"k", "x"}`.

use std::fmt::Write;

use frolov_core::PointView;

/// Significant digits that make every `f64` round-trip.
pub const FULL_PRECISION: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PointFormat {
    Csv,
    Jsonl,
    /// Only the closing count summary; no per-point lines.
    JsonSummary,
}

/// Writes `x` rounded to `precision` significant digits, in the shortest
/// decimal form that parses back to the rounded value. At 17 or more digits
/// this is the exact double.
pub fn write_real(out: &mut String, x: f64, precision: usize) {
    if precision >= FULL_PRECISION || x == 0.0 || !x.is_finite() {
        let _ = write!(out, "{x}");
        return;
    }
    let rounded: f64 = format!("{:.*e}", precision.max(1) - 1, x)
        .parse()
        .unwrap_or(x);
    let _ = write!(out, "{rounded}");
}

/// One line (without newline) for `point`.
pub fn format_point(point: PointView<'_>, format: PointFormat, precision: usize) -> String {
    let mut s = String::new();
    match format {
        PointFormat::Csv | PointFormat::JsonSummary => {
            for (i, &x) in point.x.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                write_real(&mut s, x, precision);
            }
        }
        PointFormat::Jsonl => {
            s.push_str("{\"k\":[");
            for (i, k) in point.k.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{k}");
            }
            s.push_str("],\"x\":[");
            for (i, &x) in point.x.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                write_real(&mut s, x, precision);
            }
            s.push_str("]}");
        }
    }
    s
}

/// `x1,x2,...,xd`.
pub fn csv_header(d: usize) -> String {
    (1..=d)
        .map(|i| format!("x{i}"))
        .collect::<Vec<_>>()
        .join(",")
}
