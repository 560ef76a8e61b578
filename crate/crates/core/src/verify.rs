//! Independent checks: a brute-force oracle, the doubled-scale consistency
//! check, the unimodularity check relating `A_n` to the Vandermonde matrix,
//! and golden node counts.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix::{build_matrix_a, build_vandermonde, determinant, inverse, solve};
use crate::stream::{count_points, for_each_point, StreamOptions};
use crate::{fmath, AxisBox, CubatureSpec, DiagLadder, Error, LatticePoint, Level};

/// Largest level the oracle and the unimodularity check accept.
pub const ORACLE_MAX_LEVEL: u32 = 3;

/// Upper limit on integer candidates the oracle will test.
pub const ORACLE_MAX_CANDIDATES: u128 = 200_000_000;

/// Relative membership slack shared by the oracle and the membership checks.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-9;

/// Brute force: bound `k = A_n^{-1} x` over the box by interval arithmetic
/// and test every integer vector in that bounding box against
/// `b <= A_n k <= c` with slack `1e-9 (1 + max |b_i|, |c_i|)`.
///
/// Returns points in lexicographic order of `k`; `x` is the dense product.
pub fn oracle_enumerate(level: Level, region: &AxisBox) -> Result<Vec<LatticePoint>, Error> {
    if level.n() > ORACLE_MAX_LEVEL {
        return Err(Error::OracleTooCostly("level above 3"));
    }
    let d = level.dim();
    region.check_dim(d)?;
    if region.is_empty() {
        return Ok(Vec::new());
    }
    let a = build_matrix_a(&DiagLadder::new(level));
    let m = inverse(&a)?;
    let (b, c) = (region.lower(), region.upper());

    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    let mut candidates: u128 = 1;
    for j in 0..d {
        let (mut kmin, mut kmax) = (0.0, 0.0);
        for i in 0..d {
            let (p, q) = (m[(j, i)] * b[i], m[(j, i)] * c[i]);
            kmin += p.min(q);
            kmax += p.max(q);
        }
        let pad = 1e-6 * (1.0 + kmin.abs().max(kmax.abs()));
        lo[j] = fmath::ceil(kmin - pad) as i64;
        hi[j] = fmath::floor(kmax + pad) as i64;
        if lo[j] > hi[j] {
            return Ok(Vec::new());
        }
        candidates = candidates.saturating_mul((hi[j] - lo[j] + 1) as u128);
    }
    if candidates > ORACLE_MAX_CANDIDATES {
        return Err(Error::OracleTooCostly(
            "bounding box holds too many candidates",
        ));
    }

    let eps = MEMBERSHIP_TOLERANCE * region.magnitude();
    let mut out = Vec::new();
    let mut k = lo.clone();
    let mut x = vec![0.0; d];
    'odometer: loop {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = (0..d).map(|j| a[(i, j)] * k[j] as f64).sum();
        }
        if region.contains(&x, eps) {
            out.push(LatticePoint {
                k: k.clone(),
                x: x.clone(),
            });
        }
        let mut j = d;
        loop {
            if j == 0 {
                break 'odometer;
            }
            j -= 1;
            if k[j] < hi[j] {
                k[j] += 1;
                break;
            }
            k[j] = lo[j];
        }
    }
    Ok(out)
}

/// Outcome of [`double_box_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DoubleBoxReport {
    /// Points counted directly in the scale-`N` box.
    pub count_direct: u64,
    /// Points of the scale-`2N` box that fall inside the scale-`N` box.
    pub count_filtered: u64,
    pub agree: bool,
}

/// Enumerates the standard box at scale `2N`, keeps the points inside the
/// scale-`N` box, and compares with a direct count at scale `N`.
pub fn double_box_check(ladder: &DiagLadder, scale: f64) -> Result<DoubleBoxReport, Error> {
    let level = ladder.level();
    let small = CubatureSpec::new(level, scale)?.standard_box();
    let large = CubatureSpec::new(level, 2.0 * scale)?.standard_box();
    let count_direct = count_points(ladder, &small)?;
    let mut count_filtered = 0;
    for_each_point(ladder, &large, &StreamOptions::default(), |p| {
        if small.contains(p.x, 0.0) {
            count_filtered += 1;
        }
    })?;
    Ok(DoubleBoxReport {
        count_direct,
        count_filtered,
        agree: count_direct == count_filtered,
    })
}

/// Outcome of [`unimodular_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnimodularReport {
    pub max_integer_deviation: f64,
    pub det_deviation: f64,
    pub pass: bool,
}

/// Threshold used by [`unimodular_check`].
pub const UNIMODULAR_TOLERANCE: f64 = 1e-6;

/// Solves `V_n S = A_n` and measures how far `S` is from an integer matrix
/// with determinant `+-1`.
pub fn unimodular_check(level: Level) -> Result<UnimodularReport, Error> {
    if level.n() > ORACLE_MAX_LEVEL {
        return Err(Error::LevelTooLarge {
            level: level.n(),
            max: ORACLE_MAX_LEVEL,
        });
    }
    let v = build_vandermonde(level);
    let a = build_matrix_a(&DiagLadder::new(level));
    let s = solve(&v, &a)?;
    let max_integer_deviation = s
        .iter()
        .map(|&e| fmath::abs(e - fmath::round(e)))
        .fold(0.0, f64::max);
    let det_deviation = fmath::abs(fmath::abs(determinant(&s)) - 1.0);
    Ok(UnimodularReport {
        max_integer_deviation,
        det_deviation,
        pass: max_integer_deviation < UNIMODULAR_TOLERANCE && det_deviation < UNIMODULAR_TOLERANCE,
    })
}

/// One row of a golden node-count table: the standard box for dimension `d`
/// and scale `N = 2^log2_scale` holds `expected` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountRecord {
    pub d: usize,
    pub log2_scale: u32,
    pub expected: u64,
}

/// A golden row together with the observed count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub record: CountRecord,
    pub observed: u64,
    pub matched: bool,
}

/// Counts the standard box for every record with `d <= 2^max_level` and
/// `log2_scale <= max_log2_scale`, comparing exactly.
pub fn reproduce_table(
    records: &[CountRecord],
    max_level: Level,
    max_log2_scale: u32,
) -> Result<Vec<TableRow>, Error> {
    let mut rows = Vec::new();
    let mut ladders: Vec<Option<DiagLadder>> = vec![None; max_level.n() as usize + 1];
    for &record in records {
        if record.d > max_level.dim() || record.log2_scale > max_log2_scale {
            continue;
        }
        let level = Level::from_dim(record.d, max_level.n())?;
        let ladder = ladders[level.n() as usize].get_or_insert_with(|| DiagLadder::new(level));
        let spec = CubatureSpec::from_log2(level, record.log2_scale as i32)?;
        let observed = count_points(ladder, &spec.standard_box())?;
        rows.push(TableRow {
            record,
            observed,
            matched: observed == record.expected,
        });
    }
    Ok(rows)
}
