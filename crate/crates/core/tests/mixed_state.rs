mod common;

use mixphase::family::HamiltonianFamily;
use mixphase::linalg::{c, max_abs, CMatrix, HermitianMatrix, UnitaryMatrix};
use mixphase::loops::{meridian_loop, SpherePoint};
use mixphase::models::{g_uhlmann_three_level, ThreeLevel, TwoLevel};
use mixphase::state::{gibbs_state, purified_overlap, purify, reconstruct, Amplitude, DensityMatrix};
use mixphase::uhlmann::GibbsPath;
use mixphase::Error;
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn infinite_temperature_is_maximally_mixed() {
    let rho = gibbs_state(&common::sample_hermitian3(), 0.0).unwrap();
    let mm = DensityMatrix::maximally_mixed(3);
    assert!(max_abs(&(rho.as_matrix() - mm.as_matrix())) < 1e-15);
}

#[test]
fn two_level_gibbs_state_closed_form() {
    let p = SpherePoint::new(0.8, 2.1);
    let r = 1.3;
    let h = TwoLevel::new(r).hamiltonian(p);
    for beta in [0.2, 1.0, 3.0] {
        let rho = gibbs_state(&h, beta).unwrap();
        let expected = (CMatrix::identity(2, 2) - h.as_matrix().scale((beta * r).tanh() / r)).scale(0.5);
        assert!(max_abs(&(rho.as_matrix() - expected)) < 1e-14);
    }
}

#[test]
fn three_level_north_pole_gibbs_state() {
    let beta = 0.7;
    let rho = gibbs_state(&ThreeLevel::new(1.0).hamiltonian(SpherePoint::new(0.0, 0.0)), beta).unwrap();
    let (a, b) = ((-beta as f64).exp(), beta.exp());
    let z = 2.0 * a + b;
    let expected = HermitianMatrix::from_real_diagonal(&[a / z, b / z, a / z]);
    assert!(max_abs(&(rho.as_matrix() - expected.as_matrix())) < 1e-15);
}

#[test]
fn infinite_beta_is_rejected() {
    let h = common::sample_hermitian3();
    assert!(gibbs_state(&h, f64::INFINITY).is_err());
    assert!(gibbs_state(&h, -1.0).is_err());
}

#[test]
fn extreme_beta_overflows_instead_of_losing_rank() {
    let h = HermitianMatrix::from_real_diagonal(&[-1.0, 1.0]);
    assert!(matches!(gibbs_state(&h, 1e4), Err(Error::Overflow { .. })));
    assert!(gibbs_state(&h, 100.0).is_ok());
}

#[test]
fn rank_deficient_and_unnormalized_matrices_are_rejected() {
    assert!(matches!(
        DensityMatrix::new(HermitianMatrix::from_real_diagonal(&[1.0, 0.0])),
        Err(Error::RankDeficient { .. })
    ));
    assert!(matches!(
        DensityMatrix::new(HermitianMatrix::from_real_diagonal(&[0.6, 0.6])),
        Err(Error::NotNormalized { .. })
    ));
}

#[test]
fn purify_maximally_mixed_with_identity() {
    let w = purify(&DensityMatrix::maximally_mixed(4), &UnitaryMatrix::identity(4)).unwrap();
    assert!(max_abs(&(w.w() - CMatrix::identity(4, 4).scale(0.5))) < 1e-15);
    let rho = reconstruct(&w).unwrap();
    assert!(max_abs(&(rho.as_matrix() - CMatrix::identity(4, 4).scale(0.25))) < 1e-15);
}

#[test]
fn purify_diagonal_state() {
    let lambda = [0.1, 0.3, 0.6];
    let rho = DensityMatrix::new(HermitianMatrix::from_real_diagonal(&lambda)).unwrap();
    let w = purify(&rho, &UnitaryMatrix::identity(3)).unwrap();
    let expected = HermitianMatrix::from_real_diagonal(&lambda.map(f64::sqrt));
    assert!(max_abs(&(w.w() - expected.as_matrix())) < 1e-15);
}

#[test]
fn amplitude_satisfies_polar_decomposition() {
    let rho = gibbs_state(&common::sample_hermitian3(), 1.0).unwrap();
    let v = common::sample_unitary3();
    let w = purify(&rho, &v).unwrap();
    let again = Amplitude::from_parts(w.w().clone(), v).unwrap();
    assert!(max_abs(&(again.w() - w.w())) < 1e-15);
    assert!(Amplitude::from_parts(w.w().clone(), UnitaryMatrix::identity(3)).is_err());
}

#[test]
fn reconstruction_matches_explicit_partial_trace() {
    let rho = gibbs_state(&common::sample_hermitian3(), 0.8).unwrap();
    let w = purify(&rho, &common::sample_unitary3()).unwrap();
    let psi = w.purified_vector();
    let n = 3;
    let mut traced = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                traced[(i, j)] += psi[i * n + a] * psi[j * n + a].conj();
            }
        }
    }
    let back = reconstruct(&w).unwrap();
    assert!(max_abs(&(back.as_matrix() - traced)) < 1e-14);
    assert!(max_abs(&(back.as_matrix() - rho.as_matrix())) < 1e-14);
}

#[test]
fn overlaps_of_amplitudes() {
    let rho = gibbs_state(&common::sample_hermitian3(), 1.5).unwrap();
    let v = common::sample_unitary3();
    let w = purify(&rho, &v).unwrap();
    assert!((purified_overlap(&w, &w).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
    let alpha = 0.83;
    let shifted = purify(&rho, &v.compose(&UnitaryMatrix::global_phase(3, alpha))).unwrap();
    let z = purified_overlap(&w, &shifted).unwrap();
    assert!((z - Complex64::from_polar(1.0, alpha)).norm() < 1e-14);
}

#[test]
fn uhlmann_endpoint_overlap_matches_closed_form() {
    let beta = 2.0;
    let lp = meridian_loop(0.0, 1, 4000).unwrap();
    let family = ThreeLevel::new(1.0);
    let path = GibbsPath::new(&family, &lp, beta).unwrap();
    let v = path.phase_factors();
    let ws = path.amplitudes(&v);
    let z = purified_overlap(&ws[0], &ws[ws.len() - 1]).unwrap();
    let expected = g_uhlmann_three_level(beta, 1.0, 1).unwrap();
    assert!((z - expected).norm() < 1e-6, "{z} vs {expected}");
}

proptest! {
    #[test]
    fn gibbs_state_ignores_energy_shift(h in common::hermitian(3, 2.0), beta in 0.0..5.0f64, shift in -50.0..50.0f64) {
        let a = gibbs_state(&h, beta).unwrap();
        let b = gibbs_state(&h.shifted(shift), beta).unwrap();
        prop_assert!(max_abs(&(a.as_matrix() - b.as_matrix())) < 1e-12);
    }

    #[test]
    fn gibbs_state_is_unitarily_covariant(h in common::hermitian(3, 2.0), u in common::unitary(3), beta in 0.0..5.0f64) {
        let rotated = gibbs_state(&h.conjugate_by(&u), beta).unwrap();
        let expected = gibbs_state(&h, beta).unwrap().conjugate_by(&u);
        prop_assert!(max_abs(&(rotated.as_matrix() - expected.as_matrix())) < 1e-10);
    }

    #[test]
    fn overlap_is_invariant_under_common_right_unitary(
        h in common::hermitian(3, 1.0),
        v1 in common::unitary(3),
        v2 in common::unitary(3),
        q in common::unitary(3),
    ) {
        let rho = gibbs_state(&h, 1.0).unwrap();
        let w1 = purify(&rho, &v1).unwrap();
        let w2 = purify(&rho, &v2).unwrap();
        let w1q = purify(&rho, &v1.compose(&q)).unwrap();
        let w2q = purify(&rho, &v2.compose(&q)).unwrap();
        let a = purified_overlap(&w1, &w2).unwrap();
        let b = purified_overlap(&w1q, &w2q).unwrap();
        prop_assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn reconstruction_is_independent_of_phase_factor(h in common::hermitian(3, 1.0), v in common::unitary(3)) {
        let rho = gibbs_state(&h, 0.7).unwrap();
        let back = reconstruct(&purify(&rho, &v).unwrap()).unwrap();
        prop_assert!(max_abs(&(back.as_matrix() - rho.as_matrix())) < 1e-12);
    }
}

