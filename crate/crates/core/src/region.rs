use alloc::vec::Vec;

use crate::Error;

/// The closed box `[lower, upper]` in `R^d`.
///
/// A box with some `lower[i] > upper[i]` is allowed and simply contains no
/// lattice points.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl AxisBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, Error> {
        if lower.len() != upper.len() {
            return Err(Error::LengthMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.iter().chain(&upper).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(AxisBox { lower, upper })
    }

    /// `[-half_width, half_width]^d`.
    pub fn symmetric(d: usize, half_width: f64) -> Result<Self, Error> {
        Self::new(alloc::vec![-half_width; d], alloc::vec![half_width; d])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    #[inline]
    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    #[inline]
    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn is_empty(&self) -> bool {
        self.lower.iter().zip(&self.upper).any(|(b, c)| b > c)
    }

    /// Membership with an absolute slack `eps` on every face.
    pub fn contains(&self, x: &[f64], eps: f64) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&b, &c))| b - eps <= v && v <= c + eps)
    }

    /// `1 + max_i max(|b_i|, |c_i|)`, the scale used for membership slack.
    pub fn magnitude(&self) -> f64 {
        self.lower
            .iter()
            .chain(&self.upper)
            .fold(1.0, |m: f64, v| m.max(1.0 + v.abs()))
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<(), Error> {
        if self.dim() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// A lattice point: integer coordinates `k` and its image `x = A_n k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub k: Vec<i64>,
    pub x: Vec<f64>,
}

/// Borrowed view of a point handed to streaming consumers. It is only valid
/// for the duration of the callback.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointView<'a> {
    pub k: &'a [i64],
    pub x: &'a [f64],
}

impl PointView<'_> {
    pub fn to_owned(&self) -> LatticePoint {
        LatticePoint {
            k: self.k.to_vec(),
            x: self.x.to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_bad_corners() {
        assert_eq!(
            AxisBox::new(vec![0.0], vec![1.0, 2.0]),
            Err(Error::LengthMismatch {
                expected: 1,
                found: 2
            })
        );
        assert_eq!(
            AxisBox::new(vec![f64::NAN], vec![1.0]),
            Err(Error::NonFinite)
        );
        assert_eq!(
            AxisBox::new(vec![0.0], vec![f64::INFINITY]),
            Err(Error::NonFinite)
        );
    }

    #[test]
    fn empty_boxes_are_allowed() {
        let b = AxisBox::new(vec![1.0, 0.0], vec![0.0, 1.0]).unwrap();
        assert!(b.is_empty());
        assert!(!AxisBox::symmetric(2, 1.0).unwrap().is_empty());
    }

    #[test]
    fn contains_with_slack() {
        let b = AxisBox::symmetric(2, 1.0).unwrap();
        assert!(b.contains(&[1.0, -1.0], 0.0));
        assert!(!b.contains(&[1.0 + 1e-6, 0.0], 1e-9));
        assert!(b.contains(&[1.0 + 1e-10, 0.0], 1e-9));
        assert_eq!(b.magnitude(), 2.0);
    }
}
