use crate::Error;

/// Largest level accepted by [`Level::new`]; `d = 32`.
pub const DEFAULT_MAX_LEVEL: u32 = 5;

/// Hard ceiling for [`Level::with_cap`]. State tables hold `(n + 1) * 2^n`
/// reals, so anything beyond this is not a meaningful request.
pub const ABSOLUTE_MAX_LEVEL: u32 = 20;

/// The exponent `n` of the dimension `d = 2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(u32);

impl Level {
    /// Level `n` under the default cap of [`DEFAULT_MAX_LEVEL`].
    pub fn new(n: u32) -> Result<Self, Error> {
        Self::with_cap(n, DEFAULT_MAX_LEVEL)
    }

    /// Level `n` under a caller-chosen cap (itself bounded by [`ABSOLUTE_MAX_LEVEL`]).
    pub fn with_cap(n: u32, cap: u32) -> Result<Self, Error> {
        let max = cap.min(ABSOLUTE_MAX_LEVEL);
        if n > max {
            return Err(Error::LevelTooLarge { level: n, max });
        }
        Ok(Level(n))
    }

    /// The level whose dimension is `d`, which must be a power of two.
    pub fn from_dim(d: usize, cap: u32) -> Result<Self, Error> {
        if d == 0 || !d.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(d));
        }
        Self::with_cap(d.trailing_zeros(), cap)
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn dim(self) -> usize {
        1usize << self.0
    }
}
