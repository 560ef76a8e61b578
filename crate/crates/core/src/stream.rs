//! Sequential enumeration of `{k in Z^d : b <= A_n k <= c}`.
//!
//! The box constraint unfolds into `d` one-dimensional constraints
//! `beta0_i <= k_i <= gamma0_i`, where the bounds for coordinate `i` only
//! depend on `k_1, ..., k_{i-1}`. Three tables of partial results are kept,
//! each indexed by `(L, a)` with `0 <= L <= n` and `1 <= a <= 2^{n-L}`:
//!
//! * `alpha(L, a) = A_L x(L, a)` for the `a`-th block of `2^L` coordinates,
//! * `beta(L, a)` and `gamma(L, a)`, the lower and upper bounds imposed on
//!   that block.
//!
//! When `k_i` is fixed, with `i = 2^r p` and `p` odd, the alpha entries along
//! `(j, 2^{r-j} p)` for `j = 0..=r` are refreshed by butterfly merges, and the
//! bounds along `(j, 2^{r-j} p + 1)` are refreshed from `(r + 1, (p + 1) / 2)`
//! downwards. Points are emitted in lexicographic order of `k`.

use alloc::vec;
use alloc::vec::Vec;
use core::convert::Infallible;

use crate::split::{clamp_into, mean_into, merge_into};
use crate::{fmath, AxisBox, DiagLadder, Error, PointView};

// Keeps `k + 1` from overflowing for absurdly wide boxes.
const COORD_LIMIT: f64 = (1u64 << 62) as f64;

/// Knobs for a traversal. The default reproduces the plain algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StreamOptions {
    /// Each integer range `[ceil(beta), floor(gamma)]` is widened to
    /// `[ceil(beta - eps), floor(gamma + eps)]`. Must be finite and `>= 0`.
    pub boundary_eps: f64,
    /// Restricts `k_1` to this inclusive range; used to split a traversal
    /// into independent chunks.
    pub first_range: Option<(i64, i64)>,
}

impl StreamOptions {
    fn validate(&self) -> Result<(), Error> {
        if !self.boundary_eps.is_finite() || self.boundary_eps < 0.0 {
            return Err(Error::InvalidEpsilon);
        }
        Ok(())
    }
}

/// Failure of a streaming traversal: either the input was rejected or the
/// consumer aborted.
#[derive(Debug, Clone, PartialEq)]
pub enum StreamError<E> {
    Domain(Error),
    Consumer(E),
}

impl<E> From<Error> for StreamError<E> {
    fn from(e: Error) -> Self {
        StreamError::Domain(e)
    }
}

impl<E: core::fmt::Display> core::fmt::Display for StreamError<E> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            StreamError::Domain(e) => e.fmt(f),
            StreamError::Consumer(e) => write!(f, "consumer failed: {e}"),
        }
    }
}

impl StreamError<Infallible> {
    /// Unwraps the domain error of a traversal whose consumer cannot fail.
    pub fn into_domain(self) -> Error {
        match self {
            StreamError::Domain(e) => e,
            StreamError::Consumer(never) => match never {},
        }
    }
}

/// Calls `consumer` once per lattice point of `region`, in lexicographic
/// order of `k`, and returns the number of points. An `Err` from the consumer
/// stops the traversal and is passed through.
pub fn enumerate_stream<E, F>(
    ladder: &DiagLadder,
    region: &AxisBox,
    consumer: F,
) -> Result<u64, StreamError<E>>
where
    F: FnMut(PointView<'_>) -> Result<(), E>,
{
    enumerate_stream_with(ladder, region, &StreamOptions::default(), consumer)
}

/// [`enumerate_stream`] with explicit [`StreamOptions`].
pub fn enumerate_stream_with<E, F>(
    ladder: &DiagLadder,
    region: &AxisBox,
    options: &StreamOptions,
    consumer: F,
) -> Result<u64, StreamError<E>>
where
    F: FnMut(PointView<'_>) -> Result<(), E>,
{
    options.validate()?;
    region.check_dim(ladder.dim())?;
    let mut state = EnumState::new(ladder);
    state.run(ladder, region, options, consumer)
}

/// Infallible-consumer convenience over [`enumerate_stream_with`].
pub fn for_each_point<F>(
    ladder: &DiagLadder,
    region: &AxisBox,
    options: &StreamOptions,
    mut f: F,
) -> Result<u64, Error>
where
    F: FnMut(PointView<'_>),
{
    enumerate_stream_with(ladder, region, options, |p| {
        f(p);
        Ok::<(), Infallible>(())
    })
    .map_err(StreamError::into_domain)
}

/// Number of lattice points in `region`; nothing is stored.
pub fn count_points(ladder: &DiagLadder, region: &AxisBox) -> Result<u64, Error> {
    count_points_with(ladder, region, &StreamOptions::default())
}

pub fn count_points_with(
    ladder: &DiagLadder,
    region: &AxisBox,
    options: &StreamOptions,
) -> Result<u64, Error> {
    for_each_point(ladder, region, options, |_| {})
}

/// The integer range `k_1` may take, or `None` if it is empty. Splitting this
/// range into contiguous chunks and passing each as
/// [`StreamOptions::first_range`] partitions the traversal.
pub fn first_coordinate_range(
    ladder: &DiagLadder,
    region: &AxisBox,
    boundary_eps: f64,
) -> Result<Option<(i64, i64)>, Error> {
    StreamOptions {
        boundary_eps,
        first_range: None,
    }
    .validate()?;
    region.check_dim(ladder.dim())?;
    let mut lo = region.lower().to_vec();
    let mut hi = region.upper().to_vec();
    while lo.len() > 1 {
        let h = lo.len() / 2;
        let mut next_lo = vec![0.0; h];
        let mut next_hi = vec![0.0; h];
        mean_into(&lo, &mut next_lo);
        mean_into(&hi, &mut next_hi);
        lo = next_lo;
        hi = next_hi;
    }
    let (a, b) = integer_range(lo[0], hi[0], boundary_eps);
    Ok((a <= b).then_some((a, b)))
}

#[inline]
fn integer_range(beta: f64, gamma: f64, eps: f64) -> (i64, i64) {
    let lo = fmath::ceil(beta - eps).clamp(-COORD_LIMIT, COORD_LIMIT);
    let hi = fmath::floor(gamma + eps).clamp(-COORD_LIMIT, COORD_LIMIT);
    (lo as i64, hi as i64)
}

/// Mutable tables for one traversal. Every `(L, a)` slot is stored: level `L`
/// occupies `d` consecutive reals, slot `a` starting at `(a - 1) * 2^L`.
struct EnumState {
    n: u32,
    d: usize,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    gamma: Vec<f64>,
    /// `(r(i), p(i))` with `i = 2^r p`, `p` odd, indexed by `i - 1`.
    valuation: Vec<(u32, usize)>,
}

impl EnumState {
    fn new(ladder: &DiagLadder) -> Self {
        let n = ladder.level().n();
        let d = ladder.dim();
        let size = (n as usize + 1) * d;
        let valuation = (1..=d)
            .map(|i| {
                let r = i.trailing_zeros();
                (r, i >> r)
            })
            .collect();
        EnumState {
            n,
            d,
            alpha: vec![0.0; size],
            beta: vec![0.0; size],
            gamma: vec![0.0; size],
            valuation,
        }
    }

    #[inline]
    fn offset(&self, level: u32, slot: usize) -> usize {
        level as usize * self.d + ((slot - 1) << level)
    }

    fn run<E, F>(
        &mut self,
        ladder: &DiagLadder,
        region: &AxisBox,
        options: &StreamOptions,
        mut consumer: F,
    ) -> Result<u64, StreamError<E>>
    where
        F: FnMut(PointView<'_>) -> Result<(), E>,
    {
        let d = self.d;
        let n = self.n;
        let eps = options.boundary_eps;

        let top = self.offset(n, 1);
        self.beta[top..top + d].copy_from_slice(region.lower());
        self.gamma[top..top + d].copy_from_slice(region.upper());
        for j in (0..n).rev() {
            let (src, dst) = (self.offset(j + 1, 1), self.offset(j, 1));
            let w = 1usize << j;
            let (lower, upper) = self.beta.split_at_mut(src);
            mean_into(&upper[..2 * w], &mut lower[dst..dst + w]);
            let (lower, upper) = self.gamma.split_at_mut(src);
            mean_into(&upper[..2 * w], &mut lower[dst..dst + w]);
        }

        let mut k = vec![0i64; d];
        let mut last = vec![0i64; d];
        let mut count = 0u64;

        let (mut lo, mut hi) = integer_range(self.beta[0], self.gamma[0], eps);
        if let Some((a, b)) = options.first_range {
            lo = lo.max(a);
            hi = hi.min(b);
        }
        k[0] = lo;
        last[0] = hi;
        let mut idx = 0usize;

        loop {
            if k[idx] > last[idx] {
                if idx == 0 {
                    break;
                }
                idx -= 1;
                k[idx] += 1;
                continue;
            }
            self.update_alpha(ladder, idx + 1, k[idx] as f64);
            if idx + 1 == d {
                count += 1;
                let x = &self.alpha[top..top + d];
                consumer(PointView { k: &k, x }).map_err(StreamError::Consumer)?;
                k[idx] += 1;
                continue;
            }
            self.update_beta_gamma(ladder, idx + 1);
            idx += 1;
            let (lo, hi) = integer_range(self.beta[idx], self.gamma[idx], eps);
            k[idx] = lo;
            last[idx] = hi;
        }
        Ok(count)
    }

    /// Refreshes `alpha` along `(j, 2^{r-j} p)`, `j = 0..=r`, after `k_i`
    /// was set.
    #[inline]
    fn update_alpha(&mut self, ladder: &DiagLadder, i: usize, k_i: f64) {
        let (r, p) = self.valuation[i - 1];
        self.alpha[i - 1] = k_i;
        for j in 1..=r {
            let slot = p << (r - j);
            let w = 1usize << (j - 1);
            let src = self.offset(j - 1, 2 * slot - 1);
            let dst = self.offset(j, slot);
            let (lower, upper) = self.alpha.split_at_mut(j as usize * self.d);
            let a1 = &lower[src..src + w];
            let a2 = &lower[src + w..src + 2 * w];
            let dst = dst - j as usize * self.d;
            merge_into(
                a1,
                a2,
                ladder.diag_unchecked(j - 1),
                &mut upper[dst..dst + 2 * w],
            );
        }
    }

    /// Refreshes `beta`/`gamma` along `(j, 2^{r-j} p + 1)`, `j = r..=0`.
    /// Only called for `i < d`, so `r < n`.
    #[inline]
    fn update_beta_gamma(&mut self, ladder: &DiagLadder, i: usize) {
        let (r, p) = self.valuation[i - 1];
        let w = 1usize << r;
        let a1_at = self.offset(r, p);
        let parent = self.offset(r + 1, p.div_ceil(2));
        let dst = self.offset(r, p + 1);
        let split = (r as usize + 1) * self.d;
        {
            let (blo, bhi) = self.beta.split_at_mut(split);
            let (glo, ghi) = self.gamma.split_at_mut(split);
            let b = &bhi[parent - split..parent - split + 2 * w];
            let c = &ghi[parent - split..parent - split + 2 * w];
            clamp_into(
                &self.alpha[a1_at..a1_at + w],
                b,
                c,
                ladder.diag_unchecked(r),
                &mut blo[dst..dst + w],
                &mut glo[dst..dst + w],
            );
        }
        for j in (0..r).rev() {
            let w = 1usize << j;
            let src = self.offset(j + 1, (p << (r - j - 1)) + 1);
            let dst = self.offset(j, (p << (r - j)) + 1);
            let split = (j as usize + 1) * self.d;
            let (lower, upper) = self.beta.split_at_mut(split);
            mean_into(
                &upper[src - split..src - split + 2 * w],
                &mut lower[dst..dst + w],
            );
            let (lower, upper) = self.gamma.split_at_mut(split);
            mean_into(
                &upper[src - split..src - split + 2 * w],
                &mut lower[dst..dst + w],
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Level;
    use alloc::vec::Vec;

    fn ladder(n: u32) -> DiagLadder {
        DiagLadder::new(Level::new(n).unwrap())
    }

    fn collect(l: &DiagLadder, region: &AxisBox) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for_each_point(l, region, &StreamOptions::default(), |p| {
            out.push(p.k.to_vec())
        })
        .unwrap();
        out
    }

    #[test]
    fn origin_only() {
        let l = ladder(0);
        let region = AxisBox::new(vec![0.0], vec![0.0]).unwrap();
        let mut seen = Vec::new();
        let n = for_each_point(&l, &region, &StreamOptions::default(), |p| {
            seen.push(p.to_owned())
        })
        .unwrap();
        assert_eq!(n, 1);
        assert_eq!(seen[0].k, [0]);
        assert_eq!(seen[0].x, [0.0]);
    }

    #[test]
    fn square_of_side_four() {
        let l = ladder(1);
        let got = collect(&l, &AxisBox::symmetric(2, 2.0).unwrap());
        let want: Vec<Vec<i64>> = vec![
            vec![-2, 0],
            vec![-1, 0],
            vec![0, -1],
            vec![0, 0],
            vec![0, 1],
            vec![1, 0],
            vec![2, 0],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn empty_box_counts_zero() {
        let l = ladder(2);
        let region = AxisBox::new(vec![1.0, -1.0, -1.0, -1.0], vec![-1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(count_points(&l, &region).unwrap(), 0);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let l = ladder(2);
        let region = AxisBox::symmetric(2, 1.0).unwrap();
        assert_eq!(
            count_points(&l, &region),
            Err(Error::LengthMismatch {
                expected: 4,
                found: 2
            })
        );
    }

    #[test]
    fn consumer_error_aborts() {
        let l = ladder(1);
        let region = AxisBox::symmetric(2, 2.0).unwrap();
        let mut calls = 0;
        let res = enumerate_stream(&l, &region, |_| {
            calls += 1;
            if calls == 3 {
                Err("stop")
            } else {
                Ok(())
            }
        });
        assert_eq!(res, Err(StreamError::Consumer("stop")));
        assert_eq!(calls, 3);
    }

    #[test]
    fn boundary_eps_widens() {
        let l = ladder(0);
        let region = AxisBox::new(vec![0.2], vec![0.9]).unwrap();
        assert_eq!(count_points(&l, &region).unwrap(), 0);
        let opts = StreamOptions {
            boundary_eps: 0.15,
            first_range: None,
        };
        assert_eq!(count_points_with(&l, &region, &opts).unwrap(), 1);
        let bad = StreamOptions {
            boundary_eps: -1.0,
            first_range: None,
        };
        assert_eq!(
            count_points_with(&l, &region, &bad),
            Err(Error::InvalidEpsilon)
        );
    }

    #[test]
    fn chunks_partition_the_traversal() {
        let l = ladder(2);
        let region = AxisBox::symmetric(4, 6.0).unwrap();
        let total = count_points(&l, &region).unwrap();
        let (lo, hi) = first_coordinate_range(&l, &region, 0.0).unwrap().unwrap();
        let mut sum = 0;
        let mut start = lo;
        while start <= hi {
            let end = (start + 2).min(hi);
            let opts = StreamOptions {
                boundary_eps: 0.0,
                first_range: Some((start, end)),
            };
            sum += count_points_with(&l, &region, &opts).unwrap();
            start = end + 1;
        }
        assert_eq!(sum, total);
        assert!(total > 0);
    }

    #[test]
    fn state_size_is_level_times_dim() {
        let l = ladder(5);
        let s = EnumState::new(&l);
        assert_eq!(s.alpha.len(), 6 * 32);
        assert_eq!(s.beta.len(), 6 * 32);
        assert_eq!(s.gamma.len(), 6 * 32);
    }
}
