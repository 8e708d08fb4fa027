use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use nhqc_ion::open_system::{lindblad_rhs, NoiseRates};
use nhqc_ion::quantum::{
    expm_hermitian, max_abs_diff, min_eigenvalue, partial_trace, state_fidelity, svd2x2, CMatrix,
    CMatrix2, CVector, HilbertLayout, Operator, QuantumState, C64, ION, PHONON,
};
use nhqc_ion::single::{build_h1_effective, segment_unitary_at};
use nhqc_ion::two::{closed_form_u2, two_segment_unitary, TwoIonDrive, SEGMENT_AREA};

fn layout(dim: usize) -> HilbertLayout {
    HilbertLayout::single("q", dim).unwrap()
}

fn hermitian(dim: usize, raw: &[f64]) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |i, j| {
        let k = 2 * (i * dim + j);
        C64::new(raw[k], raw[k + 1])
    });
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

fn hermitian_strategy(max_dim: usize) -> impl Strategy<Value = (usize, Vec<f64>)> {
    (2..=max_dim).prop_flat_map(|d| (Just(d), prop::collection::vec(-5.0..5.0f64, 2 * d * d)))
}

fn ket(raw: &[f64]) -> CVector {
    CVector::from_fn(raw.len() / 2, |i, _| C64::new(raw[2 * i], raw[2 * i + 1]))
}

/// Random density matrix `A A† / tr(A A†)`.
fn density(dim: usize, raw: &[f64]) -> CMatrix {
    let a = CMatrix::from_fn(dim, dim, |i, j| {
        let k = 2 * (i * dim + j);
        C64::new(raw[k], raw[k + 1])
    });
    let rho = &a * a.adjoint();
    let tr = rho.trace();
    rho / tr
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn expm_is_unitary((dim, raw) in hermitian_strategy(16), t in 0.0..3.0f64) {
        let h = Operator::new(layout(dim), hermitian(dim, &raw)).unwrap();
        let u = expm_hermitian(&h, t).unwrap();
        prop_assert!(u.unitarity_error() < 1e-10, "{}", u.unitarity_error());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn expm_group_law((dim, raw) in hermitian_strategy(8), t1 in 0.0..2.0f64, t2 in 0.0..2.0f64) {
        let h = Operator::new(layout(dim), hermitian(dim, &raw)).unwrap();
        let a = expm_hermitian(&h, t1).unwrap();
        let b = expm_hermitian(&h, t2).unwrap();
        let ab = expm_hermitian(&h, t1 + t2).unwrap();
        prop_assert!(a.compose(&b).unwrap().max_abs_diff(&ab) < 1e-10);
    }

    #[test]
    fn fidelity_is_unitarily_invariant(
        (dim, raw) in hermitian_strategy(6),
        seed in prop::collection::vec(-1.0..1.0f64, 72),
        t in 0.1..2.0f64,
    ) {
        let l = layout(dim);
        let psi = ket(&seed[..2 * dim]);
        prop_assume!(psi.norm() > 1e-3);
        let ideal = QuantumState::pure_normalized(l.clone(), psi).unwrap();
        let rho = QuantumState::density(l.clone(), density(dim, &seed)).unwrap();
        let u = expm_hermitian(&Operator::new(l, hermitian(dim, &raw)).unwrap(), t).unwrap();
        let before = state_fidelity(&rho, &ideal).unwrap();
        let after = state_fidelity(&rho.evolve(&u).unwrap(), &ideal.evolve(&u).unwrap()).unwrap();
        prop_assert!((before - after).abs() < 1e-9, "{before} vs {after}");
    }

    #[test]
    fn partial_trace_keeps_trace_and_positivity(
        n in 1usize..4,
        raw in prop::collection::vec(-1.0..1.0f64, 2 * 8 * 8),
    ) {
        let l = HilbertLayout::phonon_ion(n).unwrap();
        let dim = l.total_dim();
        let rho = QuantumState::density(l, density(dim, &raw)).unwrap();
        for keep in [PHONON, ION] {
            let r = partial_trace(&rho, &[keep]).unwrap();
            prop_assert!((r.trace() - 1.0).abs() < 1e-12);
            prop_assert!(min_eigenvalue(&r.density_matrix()) > -1e-12);
        }
    }

    #[test]
    fn svd_reconstructs(raw in prop::collection::vec(-3.0..3.0f64, 8)) {
        let t = CMatrix2::from_fn(|i, j| C64::new(raw[4 * i + 2 * j], raw[4 * i + 2 * j + 1]));
        prop_assume!(t.determinant().norm() > 1e-6);
        let s = svd2x2(&t).unwrap();
        prop_assert!(s.d[0] >= s.d[1] && s.d[1] >= 0.0);
        prop_assert!((s.reconstruct() - t).iter().all(|z| z.norm() < 1e-10));
        prop_assert!((s.w.adjoint() * s.w - CMatrix2::identity()).iter().all(|z| z.norm() < 1e-10));
        prop_assert!((s.v.adjoint() * s.v - CMatrix2::identity()).iter().all(|z| z.norm() < 1e-10));
    }

    #[test]
    fn segment_propagator_matches_expm(
        theta in 0.05..(TAU - 0.05),
        phi in -PI..PI,
        area in 0.0..20.0f64,
    ) {
        let closed = segment_unitary_at(theta, phi, area).unwrap();
        let h = build_h1_effective(1.0, theta, phi);
        let numeric = expm_hermitian(&h, area).unwrap();
        prop_assert!(max_abs_diff(closed.matrix(), numeric.matrix()) < 1e-9);
    }

    #[test]
    fn lindblad_generator_is_traceless_and_hermitian(
        n in 1usize..3,
        raw in prop::collection::vec(-1.0..1.0f64, 2 * 6 * 6),
        hraw in prop::collection::vec(-5.0..5.0f64, 2 * 6 * 6),
        rates in (0.0..50.0f64, 0.0..50.0f64, 0.0..50.0f64),
    ) {
        let l = HilbertLayout::phonon_ion(n).unwrap();
        let dim = l.total_dim();
        let rho = QuantumState::density(l.clone(), density(dim, &raw)).unwrap();
        let h = Operator::new(l, hermitian(dim, &hraw)).unwrap();
        let r = NoiseRates::new(rates.0, rates.1, rates.2).unwrap();
        let d = lindblad_rhs(&rho, &h, &r).unwrap();
        let scale = d.iter().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!(d.trace().norm() < 1e-12 * scale);
        prop_assert!(max_abs_diff(&d, &d.adjoint()) < 1e-12 * scale);
    }

    #[test]
    fn two_segment_loop_matches_closed_form(
        vartheta in 0.0..PI,
        phi in -PI..PI,
        chi in -PI..PI,
        omega in 1.0e3..1.0e5f64,
    ) {
        let drive = TwoIonDrive::with_relative_phase(omega, vartheta, phi, chi).unwrap();
        let u = two_segment_unitary(&drive, [SEGMENT_AREA, SEGMENT_AREA]).unwrap();
        prop_assert!(u.max_abs_diff(&closed_form_u2(&drive)) < 1e-9);
    }

    #[test]
    fn layout_index_digits_agree(dims in prop::collection::vec(2usize..5, 1..5), pick in 0usize..10_000) {
        let l = HilbertLayout::new(dims.iter().enumerate().map(|(k, &d)| (format!("f{k}"), d))).unwrap();
        let index = pick % l.total_dim();
        let digits = l.digits(index);
        prop_assert!(digits.iter().zip(&dims).all(|(x, d)| x < d));
        prop_assert_eq!(l.flat_index(&digits), index);
        // Most significant factor first.
        let mut expect = 0;
        for (x, d) in digits.iter().zip(&dims) {
            expect = expect * d + x;
        }
        prop_assert_eq!(expect, index);
    }
}
