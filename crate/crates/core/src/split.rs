//! The three kernels behind the box-splitting reduction.
//!
//! For `x = (x1; x2)` with halves of length `2^L`, the constraint
//! `b <= A_{L+1} x <= c` holds iff
//!
//! ```text
//! mean(b) <= A_L x1 <= mean(c)
//! clamp_lo(A_L x1, b, c) <= A_L x2 <= clamp_hi(A_L x1, b, c)
//! ```
//!
//! and `A_{L+1} x = merge(A_L x1, A_L x2)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{DiagLadder, Error};

/// `(b1 + b2) / 2` for `b = (b1; b2)` of length `2^{l+1}`.
pub fn interval_mean(l: u32, b: &[f64]) -> Result<Vec<f64>, Error> {
    let h = 1usize << l;
    expect_len(b, 2 * h)?;
    let mut out = vec![0.0; h];
    mean_into(b, &mut out);
    Ok(out)
}

/// Bounds for `A_l x2` once `a1 = A_l x1` is fixed:
///
/// ```text
/// lo = D_l^{-1} max(b1 - a1, a1 - c2)
/// hi = D_l^{-1} min(c1 - a1, a1 - b2)
/// ```
pub fn clamp_bounds(
    l: u32,
    a1: &[f64],
    b: &[f64],
    c: &[f64],
    ladder: &DiagLadder,
) -> Result<(Vec<f64>, Vec<f64>), Error> {
    let diag = ladder.diag(l)?;
    let h = diag.len();
    expect_len(a1, h)?;
    expect_len(b, 2 * h)?;
    expect_len(c, 2 * h)?;
    let mut lo = vec![0.0; h];
    let mut hi = vec![0.0; h];
    clamp_into(a1, b, c, diag, &mut lo, &mut hi);
    Ok((lo, hi))
}

/// `(a1 + D_l a2; a1 - D_l a2)`: builds `A_{l+1} (x1; x2)` from `A_l x1`
/// and `A_l x2`.
pub fn alpha_merge(l: u32, a1: &[f64], a2: &[f64], ladder: &DiagLadder) -> Result<Vec<f64>, Error> {
    let diag = ladder.diag(l)?;
    let h = diag.len();
    expect_len(a1, h)?;
    expect_len(a2, h)?;
    let mut out = vec![0.0; 2 * h];
    merge_into(a1, a2, diag, &mut out);
    Ok(out)
}

fn expect_len(v: &[f64], expected: usize) -> Result<(), Error> {
    if v.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: v.len(),
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn mean_into(src: &[f64], out: &mut [f64]) {
    let (s1, s2) = src.split_at(out.len());
    for ((o, &x), &y) in out.iter_mut().zip(s1).zip(s2) {
        *o = (x + y) / 2.0;
    }
}

#[inline]
pub(crate) fn clamp_into(
    a1: &[f64],
    b: &[f64],
    c: &[f64],
    diag: &[f64],
    lo: &mut [f64],
    hi: &mut [f64],
) {
    let h = diag.len();
    let (b1, b2) = b.split_at(h);
    let (c1, c2) = c.split_at(h);
    for j in 0..h {
        let a = a1[j];
        lo[j] = (b1[j] - a).max(a - c2[j]) / diag[j];
        hi[j] = (c1[j] - a).min(a - b2[j]) / diag[j];
    }
}

#[inline]
pub(crate) fn merge_into(a1: &[f64], a2: &[f64], diag: &[f64], out: &mut [f64]) {
    let (o1, o2) = out.split_at_mut(diag.len());
    for j in 0..diag.len() {
        let t = diag[j] * a2[j];
        o1[j] = a1[j] + t;
        o2[j] = a1[j] - t;
    }
}
