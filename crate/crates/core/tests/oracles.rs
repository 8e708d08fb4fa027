//! Reference values derived independently of the library code, plus frozen
//! regression baselines for the noisy fidelities.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};

use nhqc_ion::experiments::{
    export_surface, read_surface_csv, synthesize, sweep_fidelity, GateKind, GateMetadata,
    GateParams, SurfaceMetadata, SurfaceRow, SurfaceTable, SweepGrid, SweepSettings,
};
use nhqc_ion::open_system::{
    apply_systematic_error, gate_fidelity_under_noise, Drive, ErrorModel, NoiseRates, RateUnits,
};
use nhqc_ion::quantum::C64;
use nhqc_ion::single::{
    nearest_lattice, operating_amplitude, operating_theta, solve_segment_params, y_rotation_gate,
    PType,
};
use nhqc_ion::two::{full_two_ion_unitary, TwoIonDrive};

/// θ from the area conditions `a cos²(θ/4) = π/2 + 2πm`, `a sin²(θ/4) = k + 2πn`.
fn lattice_theta(m: u32, n: u32, second: f64) -> (f64, f64) {
    let first = FRAC_PI_2 + TAU * m as f64;
    let second = second + TAU * n as f64;
    let area = first + second;
    (4.0 * (first / area).sqrt().acos(), area)
}

#[test]
fn lattice_points_from_area_conditions() {
    let (theta, area) = lattice_theta(1, 0, FRAC_PI_2);
    let sol = solve_segment_params(PType::Identity, 1, 0).unwrap();
    assert!((sol.theta - theta).abs() < 1e-12 && (theta - 1.68213734113586).abs() < 1e-12);
    assert!((sol.area - 3.0 * PI).abs() < 1e-12 && (area - 3.0 * PI).abs() < 1e-12);

    let (theta, area) = lattice_theta(1, 0, 3.0 * FRAC_PI_2);
    let sol = solve_segment_params(PType::Z, 1, 0).unwrap();
    assert!((sol.theta - theta).abs() < 1e-12 && (area - 4.0 * PI).abs() < 1e-12);
    assert!((sol.theta - 2.6362321433056355).abs() < 1e-12);
}

#[test]
fn y_rotation_entries() {
    let g = y_rotation_gate(1.68213734113586, 1, 0, 1.0).unwrap();
    // cos(θ/2) = 2cos²(θ/4) − 1 = 2/3, so cos θ = −1/9
    let cos: f64 = -1.0 / 9.0;
    let sin = (1.0 - cos * cos).sqrt();
    let expect = [[cos, -sin], [sin, cos]];
    for r in 0..2 {
        for k in 0..2 {
            assert!((g.u0[(r, k)] - C64::new(expect[r][k], 0.0)).norm() < 1e-10);
        }
    }
    // Five-decimal reference entries; the exact diagonal is −1/9 = −0.111111.
    assert!((g.u0[(0, 0)].re + 0.11109).abs() < 3e-5);
    assert!((g.u0[(1, 0)].re - 0.99381).abs() < 1e-5);
}

#[test]
fn nearest_lattice_matches_enumeration() {
    let target = FRAC_PI_3;
    let mut best = (f64::INFINITY, 0, 0);
    for m in 0..=10u32 {
        for n in 0..=10u32 {
            if m == n {
                continue;
            }
            let (theta, _) = lattice_theta(m, n, FRAC_PI_2);
            if (theta - target).abs() < best.0 {
                best = ((theta - target).abs(), m, n);
            }
        }
    }
    let (sol, dist) = nearest_lattice(PType::Identity, target, 10).unwrap();
    assert!((dist - best.0).abs() < 1e-12);
    assert_eq!((sol.m, sol.n), (best.1, best.2));
    let err = y_rotation_gate(target, 1, 0, 1.0).unwrap_err().to_string();
    assert!(err.contains("nearest"), "{err}");
}

#[test]
fn operating_point() {
    let (eps, om): (f64, f64) = (2.42e3, 4.20e3);
    let j = TAU * (eps * eps + om * om).sqrt();
    assert!((operating_amplitude() - j).abs() < 1e-9);
    assert!((operating_amplitude() / TAU - 4847.30853).abs() < 1e-5);
    assert!((operating_theta() - 2.0 * (eps / om).atan()).abs() < 1e-12);
    assert!((operating_theta() - 1.0454569880).abs() < 1e-9);
}

#[test]
fn amplitude_error_scaling() {
    let g = synthesize(&GateParams::default()).unwrap();
    let s = apply_systematic_error(&g.schedule, ErrorModel::new(0.1).unwrap());
    for (a, b) in s.pieces().iter().zip(g.schedule.pieces()) {
        assert_eq!(a.duration, b.duration);
        match (a.drive, b.drive) {
            (Drive::SingleIon { amplitude: x, phi: p, .. }, Drive::SingleIon { amplitude: y, phi: q, .. }) => {
                assert!((x - 1.1 * y).abs() < 1e-9);
                assert!((x / TAU / 1e3 - 5.332).abs() < 1e-3);
                assert_eq!(p, q);
            }
            _ => panic!("unexpected drive"),
        }
    }
}

#[test]
fn full_space_gate_at_vartheta_pi() {
    // With Ω₁ = 0 ion 1 is a spectator; ion 2 sees the single-ion protocol
    // in both the |0⟩ and |1⟩ sectors of ion 1.
    for chi in [0.0, 0.6, FRAC_PI_2, 2.4] {
        let drive = TwoIonDrive::with_relative_phase(1.0, PI, 0.0, chi).unwrap();
        let r = full_two_ion_unitary(&drive, 3, 1e-6).unwrap();
        let ph = -C64::from_polar(1.0, chi);
        let expect = [C64::new(1.0, 0.0), ph, C64::new(1.0, 0.0), ph];
        for i in 0..4 {
            for j in 0..4 {
                let e = if i == j { expect[i] } else { C64::new(0.0, 0.0) };
                assert!((r.gate.matrix()[(i, j)] - e).norm() < 1e-10);
            }
        }
        assert!(!r.leakage_flagged);
    }
}

fn fidelity(gate: GateKind, alpha: f64, gamma: f64) -> f64 {
    let g = synthesize(&GateParams::for_gate(gate)).unwrap();
    let rates = NoiseRates::tied_hz(gamma, RateUnits::AngularEqualsHz).unwrap();
    gate_fidelity_under_noise(&g.schedule, &rates, ErrorModel::new(alpha).unwrap(), &g.inputs, None)
        .unwrap()
        .mean
}

#[test]
fn regression_baselines() {
    // Frozen from the fine-step integrator; the step-halving check bounds
    // the integration error well below the tolerance used here.
    assert!((fidelity(GateKind::Phase, 0.0, 100.0) - 0.936945106223).abs() < 1e-8);
    assert!((fidelity(GateKind::CphaseComposite, -0.2, 0.0) - 0.997319356348).abs() < 1e-8);
    assert!((fidelity(GateKind::Cphase, -0.2, 0.0) - 0.976725238141).abs() < 1e-8);
}

#[test]
fn phase_gate_three_by_three_grid() {
    let g = synthesize(&GateParams::default()).unwrap();
    let grid = SweepGrid::linear((-0.2, 0.2, 3), (0.0, 100.0, 3)).unwrap();
    let t = sweep_fidelity(&g, &grid, &SweepSettings::default()).unwrap();
    assert_eq!(t.rows.len(), 9);
    let min = t.rows.iter().min_by(|a, b| a.fidelity.total_cmp(&b.fidelity)).unwrap();
    // The minimum sits on the strongest-noise row at the largest |α|.
    assert_eq!(min.gamma_hz, 100.0);
    assert_eq!(min.alpha.abs(), 0.2);
    let corner = t.at(0, 2).fidelity;
    assert!((corner - min.fidelity).abs() < 2e-3, "corner {corner} vs min {}", min.fidelity);
}

fn synthetic_table(na: usize, ng: usize) -> SurfaceTable {
    let rows = (0..na * ng)
        .map(|k| SurfaceRow {
            alpha: -0.2 + 0.4 * (k / ng) as f64 / (na.max(2) - 1) as f64,
            gamma_hz: 100.0 * (k % ng) as f64 / (ng.max(2) - 1) as f64,
            fidelity: 1.0 - (k as f64).sqrt() * 1e-3 / 3.0,
            per_state: vec![0.1 + k as f64 / 7.0, 1.0 / (k as f64 + 3.0)],
        })
        .collect();
    SurfaceTable {
        rows,
        metadata: SurfaceMetadata {
            gate: GateMetadata {
                gate: GateKind::Phase,
                theta: Some(1.0),
                delta_phi: Some(FRAC_PI_2),
                chi: None,
                vartheta: None,
                m: Some(1),
                n: Some(0),
                amplitude: 1.0,
                layout: "phonon(2) ⊗ ion(2)".into(),
                duration: 1.0,
            },
            alpha_count: na,
            gamma_count: ng,
            dt: 1e-7,
            integrator: "rk4-fixed-step".into(),
            rate_units: RateUnits::AngularEqualsHz,
            inputs: 2,
            code_version: "test".into(),
        },
    }
}

#[test]
fn csv_line_counts_and_exact_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.csv");
    export_surface(&synthetic_table(1, 1), &path).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);

    let table = synthetic_table(41, 41);
    let path = dir.path().join("full.csv");
    let meta = export_surface(&table, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1682);
    assert!(text.starts_with("alpha,gamma_hz,fidelity,f_state_1,f_state_2\n"));
    assert!(!text.contains('\r'));
    assert_eq!(read_surface_csv(&path).unwrap(), table.rows);
    let back: SurfaceMetadata = serde_json::from_str(&std::fs::read_to_string(meta).unwrap()).unwrap();
    assert_eq!(back, table.metadata);
}
