//! The coordinate permutation `sigma` and the permuted roots `xi` of the
//! rescaled Chebyshev polynomial `P_d(x) = 2 cos(d arccos(x / 2))`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{fmath, Error};

/// `sigma(n, k)` for `1 <= k <= 2^n`.
///
/// `sigma(0, 1) = 1`; for `d = 2^n`, `sigma(n + 1, k) = sigma(n, k)` on the
/// first half and `2d + 1 - sigma(n, k - d)` on the second.
pub fn sigma(n: u32, k: usize) -> Result<usize, Error> {
    let len = 1usize << n;
    if k == 0 || k > len {
        return Err(Error::IndexOutOfRange { index: k, len });
    }
    Ok(sigma_unchecked(n, k))
}

fn sigma_unchecked(n: u32, mut k: usize) -> usize {
    // Unroll the recursion from the top: each time k falls in the upper half
    // the result is reflected as v -> 2h + 1 - v on the way back up.
    let mut reflections = Vec::with_capacity(n as usize);
    for level in (1..=n).rev() {
        let half = 1usize << (level - 1);
        if k > half {
            k -= half;
            reflections.push(half);
        } else {
            reflections.push(0);
        }
    }
    let mut value = 1;
    for half in reflections.into_iter().rev() {
        if half != 0 {
            value = 2 * half + 1 - value;
        }
    }
    value
}

/// The full permutation `(sigma(n, 1), ..., sigma(n, 2^n))`.
pub fn permutation(n: u32) -> Vec<usize> {
    let mut perm = Vec::with_capacity(1 << n);
    perm.push(1);
    for level in 0..n {
        let d = 1usize << level;
        for k in 0..d {
            perm.push(2 * d + 1 - perm[k]);
        }
    }
    perm
}

/// `xi(n, k) = 2 cos(pi (2 sigma(n, k) - 1) / 2^{n+1})`.
pub fn root_xi(n: u32, k: usize) -> Result<f64, Error> {
    let s = sigma(n, k)?;
    Ok(xi_from_sigma(n, s))
}

/// All `2^n` roots `xi(n, .)` in index order.
pub fn roots_xi(n: u32) -> Vec<f64> {
    permutation(n)
        .into_iter()
        .map(|s| xi_from_sigma(n, s))
        .collect()
}

#[inline]
fn xi_from_sigma(n: u32, s: usize) -> f64 {
    let denom = (1u64 << (n + 1)) as f64;
    2.0 * fmath::cos(PI * (2 * s - 1) as f64 / denom)
}

/// The rescaled Chebyshev polynomial `P_d(x) = 2 cos(d arccos(x/2))`, `|x| <= 2`.
pub fn chebyshev_p(d: usize, x: f64) -> f64 {
    2.0 * fmath::cos(d as f64 * fmath::acos(x / 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sigma_small_levels() {
        assert_eq!(sigma(0, 1), Ok(1));
        let two: Vec<_> = (1..=4).map(|k| sigma(2, k).unwrap()).collect();
        assert_eq!(two, [1, 2, 4, 3]);
        let three: Vec<_> = (1..=8).map(|k| sigma(3, k).unwrap()).collect();
        assert_eq!(three, [1, 2, 4, 3, 8, 7, 5, 6]);
    }

    #[test]
    fn sigma_out_of_range() {
        assert_eq!(
            sigma(2, 0),
            Err(Error::IndexOutOfRange { index: 0, len: 4 })
        );
        assert_eq!(
            sigma(2, 5),
            Err(Error::IndexOutOfRange { index: 5, len: 4 })
        );
        assert!(root_xi(1, 3).is_err());
    }

    #[test]
    fn permutation_matches_pointwise_recursion() {
        for n in 0..=8 {
            let perm = permutation(n);
            for (k, &s) in perm.iter().enumerate() {
                assert_eq!(sigma(n, k + 1).unwrap(), s);
            }
        }
    }

    #[test]
    fn root_examples() {
        let s2 = core::f64::consts::SQRT_2;
        assert_relative_eq!(root_xi(1, 1).unwrap(), s2, epsilon = 1e-15);
        assert_relative_eq!(root_xi(1, 2).unwrap(), -s2, epsilon = 1e-15);
        let expected = [
            1.8477590650225735,
            0.7653668647301796,
            -1.8477590650225735,
            -0.7653668647301796,
        ];
        for (k, e) in expected.iter().enumerate() {
            assert_relative_eq!(root_xi(2, k + 1).unwrap(), *e, epsilon = 1e-14);
        }
    }

    #[test]
    fn roots_are_chebyshev_zeros() {
        for n in 0..=5 {
            let d = 1 << n;
            for x in roots_xi(n) {
                assert!(x > -2.0 && x < 2.0);
                assert!(chebyshev_p(d, x).abs() < 1e-9);
            }
        }
    }
}
