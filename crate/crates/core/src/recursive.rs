//! Set-building enumeration: the level-`n` point set is assembled from
//! level-`(n-1)` point sets. Simple, but holds every intermediate set in
//! memory; [`crate::stream`] is the production path.

use alloc::vec::Vec;

use crate::split::{clamp_into, mean_into};
use crate::{fmath, AxisBox, DiagLadder, Error, LatticePoint};

/// All `k` with `b <= A_n k <= c`, in lexicographic order of `k`.
pub fn enumerate_recursive(
    ladder: &DiagLadder,
    region: &AxisBox,
) -> Result<Vec<LatticePoint>, Error> {
    region.check_dim(ladder.dim())?;
    let ks = lattice_set(ladder, ladder.level().n(), region.lower(), region.upper());
    Ok(ks
        .into_iter()
        .map(|k| {
            let mut x: Vec<f64> = k.iter().map(|&v| v as f64).collect();
            ladder.apply_generator(&mut x);
            LatticePoint { k, x }
        })
        .collect())
}

fn lattice_set(ladder: &DiagLadder, n: u32, b: &[f64], c: &[f64]) -> Vec<Vec<i64>> {
    if n == 0 {
        let lo = fmath::ceil(b[0]);
        let hi = fmath::floor(c[0]);
        if lo > hi {
            return Vec::new();
        }
        return (lo as i64..=hi as i64).map(|k| alloc::vec![k]).collect();
    }
    let h = 1usize << (n - 1);
    let mut mb = alloc::vec![0.0; h];
    let mut mc = alloc::vec![0.0; h];
    mean_into(b, &mut mb);
    mean_into(c, &mut mc);

    let diag = ladder.diag_unchecked(n - 1);
    let mut lo = alloc::vec![0.0; h];
    let mut hi = alloc::vec![0.0; h];
    let mut out = Vec::new();
    for k1 in lattice_set(ladder, n - 1, &mb, &mc) {
        let a1 = apply_sub_generator(ladder, n - 1, &k1);
        clamp_into(&a1, b, c, diag, &mut lo, &mut hi);
        for k2 in lattice_set(ladder, n - 1, &lo, &hi) {
            let mut k = k1.clone();
            k.extend_from_slice(&k2);
            out.push(k);
        }
    }
    out
}

/// `A_l k` for a sub-level `l <= n`, using the first `l` ladder rungs.
fn apply_sub_generator(ladder: &DiagLadder, l: u32, k: &[i64]) -> Vec<f64> {
    let mut y: Vec<f64> = k.iter().map(|&v| v as f64).collect();
    for j in 0..l {
        let diag = ladder.diag_unchecked(j);
        let half = 1usize << j;
        for block in y.chunks_exact_mut(2 * half) {
            let (a1, a2) = block.split_at_mut(half);
            for t in 0..half {
                let prod = diag[t] * a2[t];
                let first = a1[t];
                a1[t] = first + prod;
                a2[t] = first - prod;
            }
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Level;
    use alloc::vec;

    fn ladder(n: u32) -> DiagLadder {
        DiagLadder::new(Level::new(n).unwrap())
    }

    #[test]
    fn one_dimensional() {
        let l = ladder(0);
        let pts = enumerate_recursive(&l, &AxisBox::new(vec![-1.5], vec![1.5]).unwrap()).unwrap();
        let ks: Vec<i64> = pts.iter().map(|p| p.k[0]).collect();
        assert_eq!(ks, [-1, 0, 1]);
        let none = enumerate_recursive(&l, &AxisBox::new(vec![0.2], vec![0.9]).unwrap()).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn square_of_side_four() {
        let l = ladder(1);
        let pts = enumerate_recursive(&l, &AxisBox::symmetric(2, 2.0).unwrap()).unwrap();
        let ks: Vec<Vec<i64>> = pts.into_iter().map(|p| p.k).collect();
        assert_eq!(
            ks,
            vec![
                vec![-2, 0],
                vec![-1, 0],
                vec![0, -1],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![2, 0]
            ]
        );
    }

    #[test]
    fn sub_generator_matches_full() {
        let l = ladder(3);
        let k = [1, -1, 2, 0, 0, 3, -2, 1];
        let mut full: Vec<f64> = k.iter().map(|&v| v as f64).collect();
        l.apply_generator(&mut full);
        assert_eq!(apply_sub_generator(&l, 3, &k), full);
    }
}
