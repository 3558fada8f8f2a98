use bosonbudget_core::distinguishability::{mismatch_sum, prob_mismatch, DistinguishabilityParams};
use bosonbudget_core::fock::enumerate_outputs;
use bosonbudget_core::ideal::prob_ideal;
use bosonbudget_core::permanent::{permanent_naive, repeated_submatrix};
use bosonbudget_core::random::{gaussian_matrix, haar_unitary};
use bosonbudget_core::{OccupationVector, RngStream};

#[test]
fn limits_of_full_and_zero_overlap() {
    let mut rng = RngStream::new(404);
    for trial in 0..40 {
        let n = 1 + trial % 4;
        let m = n + 2;
        let u = haar_unitary(m, &mut rng).unwrap();
        let n0 = OccupationVector::leading_ones(n, m);
        let one = DistinguishabilityParams::indistinguishable(n.max(2));
        let zero = DistinguishabilityParams::uniform(0.0, n.max(2)).unwrap();
        for s in enumerate_outputs(m, n, false).unwrap() {
            let ideal = prob_ideal(&u, &n0, &s).unwrap();
            assert!((prob_mismatch(&u, &n0, &s, &one).unwrap() - ideal).abs() < 1e-10);
            let classical = permanent_naive(&repeated_submatrix(&u, &n0, &s).unwrap().abs_squared()).unwrap().re / s.mu().unwrap() as f64;
            assert!((prob_mismatch(&u, &n0, &s, &zero).unwrap() - classical).abs() < 1e-10);
        }
    }
}

#[test]
fn partial_overlap_is_complete() {
    let mut rng = RngStream::new(17);
    for (n, m) in [(2, 4), (3, 5), (4, 6)] {
        let u = haar_unitary(m, &mut rng).unwrap();
        let n0 = OccupationVector::leading_ones(n, m);
        let g = DistinguishabilityParams::new((2..=n.max(2)).map(|k| 0.95f64.powi(k as i32 - 1)).collect(), None).unwrap();
        let total: f64 = enumerate_outputs(m, n, false).unwrap().map(|s| prob_mismatch(&u, &n0, &s, &g).unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-9, "N={n}: {total}");
    }
}

#[test]
fn uniform_overlap_at_three_photons() {
    // With g_2 = g_3 = g every non-identity permutation has weight g, so
    // P̃ − P = (g − 1)(|per A|² − per(|A|²)).
    let mut rng = RngStream::new(3);
    for _ in 0..20 {
        let a = gaussian_matrix(3, 3, 1.0, &mut rng).unwrap();
        let g = 0.7;
        let params = DistinguishabilityParams::uniform(g, 3).unwrap();
        let per = permanent_naive(&a).unwrap().norm_sqr();
        let per_abs = permanent_naive(&a.abs_squared()).unwrap().re;
        let expected = per + (g - 1.0) * (per - per_abs);
        let got = mismatch_sum(&a, &params).unwrap();
        assert!((got - expected).abs() < 1e-10 * expected.abs().max(1.0), "{got} vs {expected}");
    }
}
