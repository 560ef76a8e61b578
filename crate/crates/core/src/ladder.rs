//! Diagonals of `D_0, ..., D_{n-1}`.

use alloc::vec::Vec;

use crate::{roots, Error, Level};

/// Diagonal entries of `D_L = diag(xi(L+1, 1), ..., xi(L+1, 2^L))` for every
/// `L < n`.
///
/// The entries are the first half of the level-`L+1` roots, which are exactly
/// the positive ones. They are the only data the streaming enumerator needs.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagLadder {
    level: Level,
    diags: Vec<Vec<f64>>,
}

impl DiagLadder {
    pub fn new(level: Level) -> Self {
        let diags = (0..level.n())
            .map(|l| {
                let mut roots = roots::roots_xi(l + 1);
                roots.truncate(1 << l);
                roots
            })
            .collect();
        DiagLadder { level, diags }
    }

    #[inline]
    pub fn level(&self) -> Level {
        self.level
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.level.dim()
    }

    /// Diagonal of `D_l`, of length `2^l`.
    pub fn diag(&self, l: u32) -> Result<&[f64], Error> {
        self.diags
            .get(l as usize)
            .map(Vec::as_slice)
            .ok_or(Error::MissingLadderLevel {
                level: l,
                available: self.level.n(),
            })
    }

    #[inline]
    pub(crate) fn diag_unchecked(&self, l: u32) -> &[f64] {
        &self.diags[l as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.diags.iter().map(Vec::as_slice)
    }

    /// Computes `A_n y` in place with `n` butterfly passes, never forming
    /// `A_n`. Pass `l` merges neighbouring blocks of length `2^{l-1}` as
    /// `(a1 + D a2; a1 - D a2)`.
    ///
    /// Panics if `y.len() != 2^n`.
    pub fn apply_generator(&self, y: &mut [f64]) {
        assert_eq!(y.len(), self.dim());
        for (l, diag) in self.diags.iter().enumerate() {
            let half = 1usize << l;
            for block in y.chunks_exact_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for ((a1, a2), &dj) in lo.iter_mut().zip(hi.iter_mut()).zip(diag) {
                    let t = dj * *a2;
                    let first = *a1;
                    *a1 = first + t;
                    *a2 = first - t;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn small_ladders() {
        assert_eq!(DiagLadder::new(Level::new(0).unwrap()).iter().count(), 0);

        let one = DiagLadder::new(Level::new(1).unwrap());
        assert_eq!(one.diag(0).unwrap().len(), 1);
        assert_relative_eq!(
            one.diag(0).unwrap()[0],
            core::f64::consts::SQRT_2,
            epsilon = 1e-15
        );

        let two = DiagLadder::new(Level::new(2).unwrap());
        let d1 = two.diag(1).unwrap();
        assert_relative_eq!(d1[0], 1.8477590650225735, epsilon = 1e-14);
        assert_relative_eq!(d1[1], 0.7653668647301796, epsilon = 1e-14);
        assert_eq!(
            two.diag(2),
            Err(Error::MissingLadderLevel {
                level: 2,
                available: 2
            })
        );
    }

    #[test]
    fn entries_positive_and_square_minus_two() {
        let ladder = DiagLadder::new(Level::new(5).unwrap());
        for l in 0..5 {
            let diag = ladder.diag(l).unwrap();
            assert!(diag.iter().all(|&x| x > 0.0));
            if l >= 1 {
                let below = ladder.diag(l - 1).unwrap();
                for (i, &b) in below.iter().enumerate() {
                    assert!((diag[i] * diag[i] - 2.0 - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn apply_generator_level_one() {
        let ladder = DiagLadder::new(Level::new(1).unwrap());
        let mut y = [3.0, 2.0];
        ladder.apply_generator(&mut y);
        let s2 = core::f64::consts::SQRT_2;
        assert_relative_eq!(y[0], 3.0 + 2.0 * s2, epsilon = 1e-14);
        assert_relative_eq!(y[1], 3.0 - 2.0 * s2, epsilon = 1e-14);
    }
}
