use frolov_core::matrix::{build_matrix_a, det_magnitude, determinant};
use frolov_core::roots::{chebyshev_p, permutation, root_xi, sigma};
use frolov_core::verify::unimodular_check;
use frolov_core::{DiagLadder, Level};

#[test]
fn sigma_is_a_bijection_up_to_level_six() {
    for n in 0..=6 {
        let d = 1usize << n;
        let mut seen: Vec<usize> = (1..=d).map(|k| sigma(n, k).unwrap()).collect();
        assert_eq!(seen, permutation(n));
        seen.sort_unstable();
        assert_eq!(seen, (1..=d).collect::<Vec<_>>());
    }
}

#[test]
fn roots_are_a_permutation_of_the_usual_roots() {
    // zeta_k = 2 cos(pi (2k - 1) / 2d); xi must be the same multiset.
    for n in 0..=5 {
        let d = 1usize << n;
        let mut zeta: Vec<f64> = (1..=d)
            .map(|k| 2.0 * (std::f64::consts::PI * (2 * k - 1) as f64 / (2 * d) as f64).cos())
            .collect();
        let mut xi: Vec<f64> = (1..=d).map(|k| root_xi(n, k).unwrap()).collect();
        zeta.sort_by(f64::total_cmp);
        xi.sort_by(f64::total_cmp);
        for (a, b) in zeta.iter().zip(&xi) {
            assert!((a - b).abs() < 1e-14);
        }
        for x in xi {
            assert!(chebyshev_p(d, x).abs() < 1e-9);
        }
    }
}

#[test]
fn upper_half_roots_are_negated_lower_half() {
    for n in 1..=5 {
        let d = 1usize << n;
        for i in 1..=d / 2 {
            let a = root_xi(n, i).unwrap();
            let b = root_xi(n, i + d / 2).unwrap();
            assert!((a + b).abs() < 1e-14);
        }
    }
}

#[test]
fn ladder_square_minus_two() {
    let ladder = DiagLadder::new(Level::new(5).unwrap());
    for l in 1..5 {
        let upper = ladder.diag(l).unwrap();
        let lower = ladder.diag(l - 1).unwrap();
        for i in 0..lower.len() {
            assert!((upper[i] * upper[i] - 2.0 - lower[i]).abs() < 1e-12);
        }
    }
}

#[test]
fn unimodular_up_to_level_three() {
    for n in 0..=3 {
        let r = unimodular_check(Level::new(n).unwrap()).unwrap();
        assert!(
            r.max_integer_deviation < 1e-6 && r.det_deviation < 1e-6,
            "n = {n}: {r:?}"
        );
    }
}

#[test]
fn numeric_determinant_matches_closed_form() {
    for n in 0..=5 {
        let level = Level::new(n).unwrap();
        let numeric = determinant(&build_matrix_a(&DiagLadder::new(level))).abs();
        let closed = det_magnitude(level);
        assert!(((numeric - closed) / closed).abs() < 1e-9);
    }
}
