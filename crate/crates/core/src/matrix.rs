//! Dense matrices, used by the oracle and the structural checks only.
//! The enumerators never materialize `A_n`.

use nalgebra::DMatrix;

use crate::{fmath, roots, DiagLadder, Error, Level};

/// Dense row/column matrix of `f64`.
pub type Matrix = DMatrix<f64>;

/// The generating matrix `A_n` from its block recursion.
pub fn build_matrix_a(ladder: &DiagLadder) -> Matrix {
    let mut a = Matrix::from_element(1, 1, 1.0);
    for diag in ladder.iter() {
        let d = a.nrows();
        let mut next = Matrix::zeros(2 * d, 2 * d);
        for i in 0..d {
            for j in 0..d {
                let v = a[(i, j)];
                let dv = diag[i] * v;
                next[(i, j)] = v;
                next[(i, d + j)] = dv;
                next[(d + i, j)] = v;
                next[(d + i, d + j)] = -dv;
            }
        }
        a = next;
    }
    a
}

/// The Vandermonde matrix `(xi(n, i)^{j-1})`.
pub fn build_vandermonde(level: Level) -> Matrix {
    let xs = roots::roots_xi(level.n());
    let d = xs.len();
    Matrix::from_fn(d, d, |i, j| {
        let mut p = 1.0;
        for _ in 0..j {
            p *= xs[i];
        }
        p
    })
}

/// `|det A_n| = (2d)^{d/2} / sqrt(2)` in closed form.
pub fn det_magnitude(level: Level) -> f64 {
    let d = level.dim() as f64;
    fmath::pow(2.0 * d, d / 2.0) / fmath::sqrt(2.0)
}

/// Numeric determinant by LU decomposition.
pub fn determinant(m: &Matrix) -> f64 {
    m.clone().lu().determinant()
}

/// Solves `lhs * X = rhs` by LU decomposition with partial pivoting.
pub fn solve(lhs: &Matrix, rhs: &Matrix) -> Result<Matrix, Error> {
    lhs.clone().lu().solve(rhs).ok_or(Error::SingularMatrix)
}

/// Dense inverse.
pub fn inverse(m: &Matrix) -> Result<Matrix, Error> {
    m.clone().try_inverse().ok_or(Error::SingularMatrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::SQRT_2;

    fn ladder(n: u32) -> DiagLadder {
        DiagLadder::new(Level::new(n).unwrap())
    }

    #[test]
    fn a_small() {
        assert_eq!(build_matrix_a(&ladder(0)), Matrix::from_element(1, 1, 1.0));
        let a1 = build_matrix_a(&ladder(1));
        assert_relative_eq!(
            a1,
            Matrix::from_row_slice(2, 2, &[1.0, SQRT_2, 1.0, -SQRT_2]),
            epsilon = 1e-15
        );
        let a2 = build_matrix_a(&ladder(2));
        assert_eq!(a2.view((0, 0), (2, 2)), a1.view((0, 0), (2, 2)));
        assert_eq!(a2.view((2, 0), (2, 2)), a1.view((0, 0), (2, 2)));
    }

    #[test]
    fn a_matches_butterfly() {
        let l = ladder(3);
        let a = build_matrix_a(&l);
        let k = [1.0, -2.0, 0.0, 3.0, 1.0, 1.0, -1.0, 2.0];
        let mut y = k;
        l.apply_generator(&mut y);
        let dense = &a * nalgebra::DVector::from_row_slice(&k);
        for i in 0..8 {
            assert_relative_eq!(y[i], dense[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn vandermonde_small() {
        assert_eq!(
            build_vandermonde(Level::new(0).unwrap()),
            Matrix::from_element(1, 1, 1.0)
        );
        let v1 = build_vandermonde(Level::new(1).unwrap());
        assert_relative_eq!(
            v1,
            Matrix::from_row_slice(2, 2, &[1.0, SQRT_2, 1.0, -SQRT_2]),
            epsilon = 1e-15
        );
        let v2 = build_vandermonde(Level::new(2).unwrap());
        let row = [
            1.0,
            1.8477590650225735,
            3.414213562373095,
            6.308644059797899,
        ];
        for j in 0..4 {
            assert_relative_eq!(v2[(0, j)], row[j], epsilon = 1e-13);
            assert_eq!(v2[(j, 0)], 1.0);
        }
    }

    #[test]
    fn det_closed_form() {
        assert_relative_eq!(det_magnitude(Level::new(0).unwrap()), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            det_magnitude(Level::new(1).unwrap()),
            4.0 / SQRT_2,
            epsilon = 1e-14
        );
        assert_relative_eq!(
            det_magnitude(Level::new(2).unwrap()),
            64.0 / SQRT_2,
            epsilon = 1e-12
        );
        for n in 0..=5 {
            let level = Level::new(n).unwrap();
            let numeric = determinant(&build_matrix_a(&DiagLadder::new(level))).abs();
            let closed = det_magnitude(level);
            assert!(
                ((numeric - closed) / closed).abs() < 1e-9,
                "n={n}: {numeric} vs {closed}"
            );
        }
    }
}
