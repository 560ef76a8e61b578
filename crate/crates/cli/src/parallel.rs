//! Chunked traversal: the range of `k_1` is cut into contiguous pieces and
//! each piece is walked by an independent enumerator on its own thread.

use std::convert::Infallible;
use std::thread;

use frolov_core::cubature::try_integrate;
use frolov_core::stream::{count_points_with, first_coordinate_range, StreamError, StreamOptions};
use frolov_core::{AxisBox, CubatureSpec, DiagLadder, Error, Estimate, RandomShift, Summation};

/// Splits `[lo, hi]` into at most `parts` contiguous inclusive ranges.
pub fn split_range(lo: i64, hi: i64, parts: usize) -> Vec<(i64, i64)> {
    if lo > hi {
        return Vec::new();
    }
    let len = (hi - lo) as u64 + 1;
    let parts = (parts.max(1) as u64).min(len);
    let base = len / parts;
    let extra = len % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = lo;
    for i in 0..parts {
        let size = base + u64::from(i < extra);
        let end = start + size as i64 - 1;
        out.push((start, end));
        start = end + 1;
    }
    out
}

fn chunks(
    ladder: &DiagLadder,
    region: &AxisBox,
    eps: f64,
    threads: usize,
) -> Result<Vec<StreamOptions>, Error> {
    let Some((lo, hi)) = first_coordinate_range(ladder, region, eps)? else {
        return Ok(Vec::new());
    };
    // A few chunks per thread evens out the uneven work per k_1 slice.
    Ok(split_range(lo, hi, threads * 4)
        .into_iter()
        .map(|r| StreamOptions {
            boundary_eps: eps,
            first_range: Some(r),
        })
        .collect())
}

/// Count of lattice points in `region` using `threads` workers.
pub fn count_points(
    ladder: &DiagLadder,
    region: &AxisBox,
    eps: f64,
    threads: usize,
) -> Result<u64, Error> {
    if threads <= 1 {
        return count_points_with(
            ladder,
            region,
            &StreamOptions {
                boundary_eps: eps,
                first_range: None,
            },
        );
    }
    let jobs = chunks(ladder, region, eps, threads)?;
    let results = run_jobs(&jobs, threads, |opts| {
        count_points_with(ladder, region, opts)
    });
    results.into_iter().try_fold(0, |acc, r| r.map(|c| acc + c))
}

/// Parallel form of [`frolov_core::cubature::integrate`]. Partial sums are
/// combined in chunk order, so the result is deterministic for a fixed
/// thread count.
pub fn integrate<F>(
    spec: &CubatureSpec,
    ladder: &DiagLadder,
    shift: Option<&RandomShift>,
    summation: Summation,
    threads: usize,
    f: F,
) -> Result<Estimate, Error>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let run = |opts: &StreamOptions| {
        try_integrate(spec, ladder, shift, summation, opts, |x| {
            Ok::<f64, Infallible>(f(x))
        })
        .map_err(StreamError::into_domain)
    };
    if threads <= 1 {
        return run(&StreamOptions::default());
    }
    let region = match shift {
        None => spec.standard_box(),
        Some(s) => spec.randomized_box(s, ladder)?.0,
    };
    let jobs = chunks(ladder, &region, 0.0, threads)?;
    let mut sum = 0.0;
    let mut node_count = 0;
    for r in run_jobs(&jobs, threads, run) {
        let e = r?;
        sum += e.sum;
        node_count += e.node_count;
    }
    Ok(Estimate {
        value: spec.weight() * sum,
        node_count,
        sum,
    })
}

/// Runs `job` over `jobs` on `threads` workers (round-robin assignment) and
/// returns results in job order.
fn run_jobs<T, J>(jobs: &[StreamOptions], threads: usize, job: J) -> Vec<T>
where
    T: Send,
    J: Fn(&StreamOptions) -> T + Sync,
{
    let mut slots: Vec<Option<T>> = (0..jobs.len()).map(|_| None).collect();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..threads.min(jobs.len()))
            .map(|w| {
                let job = &job;
                scope.spawn(move || {
                    jobs.iter()
                        .enumerate()
                        .skip(w)
                        .step_by(threads)
                        .map(|(i, o)| (i, job(o)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("every job ran"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use frolov_core::{sample_shift, Level};

    #[test]
    fn ranges_cover_exactly() {
        assert_eq!(split_range(0, 9, 3), [(0, 3), (4, 6), (7, 9)]);
        assert_eq!(split_range(-2, -2, 8), [(-2, -2)]);
        assert!(split_range(1, 0, 4).is_empty());
    }

    #[test]
    fn parallel_count_matches_serial() {
        let level = Level::new(3).unwrap();
        let ladder = DiagLadder::new(level);
        let spec = CubatureSpec::from_log2(level, 12).unwrap();
        let region = spec.standard_box();
        let serial = frolov_core::count_points(&ladder, &region).unwrap();
        assert_eq!(serial, 4113);
        for t in [2, 3, 8] {
            assert_eq!(count_points(&ladder, &region, 0.0, t).unwrap(), serial);
        }
    }

    #[test]
    fn parallel_integrate_matches_serial() {
        let level = Level::new(2).unwrap();
        let ladder = DiagLadder::new(level);
        let spec = CubatureSpec::from_log2(level, 12).unwrap();
        let shift = sample_shift(5, 4);
        let f = |x: &[f64]| {
            x.iter()
                .map(|t| (std::f64::consts::PI * t).cos())
                .product::<f64>()
        };
        for s in [None, Some(&shift)] {
            let serial = frolov_core::cubature::integrate(&spec, &ladder, s, f).unwrap();
            let par = integrate(&spec, &ladder, s, Summation::Naive, 4, f).unwrap();
            assert_eq!(serial.node_count, par.node_count);
            assert!(((serial.value - par.value) / serial.value).abs() < 1e-12);
        }
    }
}
