//! Random dilation and shift for the randomized rule.
//!
//! Generator: ChaCha8 (`rand_chacha`), seeded with `seed_from_u64(seed)`.
//! `u` is drawn from stream 0 and `v` from stream 1 of that key, so the two
//! vectors are independent. Each coordinate is `rng.random::<f64>()`
//! (53 random mantissa bits in `[0, 1)`), plus `1/2` for `u`. This mapping is
//! part of the crate's reproducibility contract and must not change.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Error;

/// `u` in `[1/2, 3/2]^d` (the dilation `U = diag(u)`) and `v` in `[0, 1]^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomShift {
    u: Vec<f64>,
    v: Vec<f64>,
    seed: Option<u64>,
}

impl RandomShift {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self, Error> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        let u_ok = u.iter().all(|&x| (0.5..=1.5).contains(&x));
        let v_ok = v.iter().all(|&x| (0.0..=1.0).contains(&x));
        if !(u_ok && v_ok) {
            return Err(Error::InvalidShift);
        }
        Ok(RandomShift { u, v, seed: None })
    }

    /// `u = 1`, `v = 0`: reduces the randomized rule to the deterministic one.
    pub fn identity(d: usize) -> Self {
        RandomShift {
            u: alloc::vec![1.0; d],
            v: alloc::vec![0.0; d],
            seed: None,
        }
    }

    #[inline]
    pub fn u(&self) -> &[f64] {
        &self.u
    }

    #[inline]
    pub fn v(&self) -> &[f64] {
        &self.v
    }

    #[inline]
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.u.len()
    }
}

/// Deterministic draw of `(u, v)` from `seed`.
pub fn sample_shift(seed: u64, d: usize) -> RandomShift {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(0);
    let u = (0..d).map(|_| 0.5 + rng.random::<f64>()).collect();
    rng.set_stream(1);
    rng.set_word_pos(0);
    let v = (0..d).map(|_| rng.random::<f64>()).collect();
    RandomShift {
        u,
        v,
        seed: Some(seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(sample_shift(7, 4), sample_shift(7, 4));
        assert_ne!(sample_shift(7, 4), sample_shift(8, 4));
        assert_eq!(sample_shift(7, 4).seed(), Some(7));
    }

    #[test]
    fn ranges_hold() {
        for seed in 0..200 {
            let s = sample_shift(seed, 8);
            assert!(s.u().iter().all(|&x| (0.5..1.5).contains(&x)));
            assert!(s.v().iter().all(|&x| (0.0..1.0).contains(&x)));
        }
    }

    #[test]
    fn sample_means_are_centered() {
        // 10^4 draws at d = 2; a uniform variable on an interval of length 1
        // has standard deviation 1/sqrt(12).
        let draws = 10_000;
        let (mut su, mut sv) = (0.0, 0.0);
        for seed in 0..draws {
            let s = sample_shift(seed, 2);
            su += s.u().iter().sum::<f64>();
            sv += s.v().iter().sum::<f64>();
        }
        let m = (2 * draws) as f64;
        let se = (1.0 / 12.0f64).sqrt() / m.sqrt();
        assert!((su / m - 1.0).abs() < 3.0 * se, "u mean {}", su / m);
        assert!((sv / m - 0.5).abs() < 3.0 * se, "v mean {}", sv / m);
    }

    #[test]
    fn validation() {
        assert!(RandomShift::new(alloc::vec![1.0], alloc::vec![0.5]).is_ok());
        assert_eq!(
            RandomShift::new(alloc::vec![0.4], alloc::vec![0.5]),
            Err(Error::InvalidShift)
        );
        assert_eq!(
            RandomShift::new(alloc::vec![1.0], alloc::vec![1.5]),
            Err(Error::InvalidShift)
        );
        assert_eq!(
            RandomShift::new(alloc::vec![f64::NAN], alloc::vec![0.0]),
            Err(Error::InvalidShift)
        );
        assert!(RandomShift::new(alloc::vec![1.0, 1.0], alloc::vec![0.0]).is_err());
    }
}
