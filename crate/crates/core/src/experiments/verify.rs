use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use super::{synthesize, GateKind, GateParams};
use crate::error::Result;
use crate::open_system::{
    default_step, gate_fidelity_under_noise, integrate_master, lindblad_rhs, Drive, ErrorModel,
    NoiseRates, Piece, Schedule,
};
use crate::quantum::operator::c;
use crate::quantum::svd::max_abs2;
use crate::quantum::{
    expm_hermitian, hermiticity_error, max_abs_diff, strip_global_phase, svd2x2, HilbertLayout,
    QuantumState, CVector,
};
use crate::single::{
    analytic_wdv, build_h1_effective, build_t, compose_loop, phase_matrix, ry_matrix,
    solve_segment_params, PType, SegmentSpec,
};
use crate::two::{
    build_h2, closed_form_u2, controlled_phase_matrix, dressed_states, full_two_ion_unitary,
    two_segment_unitary, TwoIonDrive, HALF_PI_AREAS,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Reported for reference, never fails the run.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub measured: Option<f64>,
    /// Absent for informational entries.
    pub tolerance: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Multiplies every tolerance.
    pub tolerance_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { tolerance_scale: 1.0 }
    }
}

struct Collector {
    scale: f64,
    checks: Vec<Check>,
}

impl Collector {
    fn bound(&mut self, name: &str, measured: f64, tolerance: f64, detail: impl Into<String>) {
        let tolerance = tolerance * self.scale;
        let status = if measured.is_finite() && measured <= tolerance { CheckStatus::Pass } else { CheckStatus::Fail };
        self.checks.push(Check {
            name: name.into(),
            status,
            measured: Some(measured),
            tolerance: Some(tolerance),
            detail: detail.into(),
        });
    }

    fn info(&mut self, name: &str, measured: f64, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Info,
            measured: Some(measured),
            tolerance: None,
            detail,
        });
    }

    fn result(&mut self, name: &str, r: Result<()>) {
        if let Err(e) = r {
            self.checks.push(Check {
                name: name.into(),
                status: CheckStatus::Fail,
                measured: None,
                tolerance: None,
                detail: e.to_string(),
            });
        }
    }
}

fn single_qubit(col: &mut Collector) -> Result<()> {
    let amp = 1.0;
    let ry = solve_segment_params(PType::Identity, 1, 0)?;
    let seg = SegmentSpec::from_solution(&ry, 0.0, amp)?;
    let lp = compose_loop(&seg, &seg.with_phi(PI))?;
    col.bound(
        "y_rotation_loop",
        max_abs2(&(lp.u0 - ry_matrix(ry.theta))),
        1e-8,
        format!("θ = {:.12}, area = 3π", ry.theta),
    );
    col.bound("y_rotation_block_diagonal", lp.off_block_max, 1e-10, "");

    let pz = solve_segment_params(PType::Z, 1, 0)?;
    let seg = SegmentSpec::from_solution(&pz, 0.0, amp)?;
    let mut worst = 0.0f64;
    let mut off = 0.0f64;
    for dphi in [0.3, FRAC_PI_2, 2.0] {
        let lp = compose_loop(&seg, &seg.with_phi(dphi))?;
        worst = worst.max(max_abs2(&(lp.u0 - phase_matrix(dphi))));
        off = off.max(lp.off_block_max);
        // independent propagator
        let u = expm_hermitian(&build_h1_effective(amp, pz.theta, dphi), seg.duration)?
            .compose(&expm_hermitian(&build_h1_effective(amp, pz.theta, 0.0), seg.duration)?)?;
        worst = worst.max(max_abs_diff(u.matrix(), lp.full.matrix()));
    }
    col.bound("phase_loop", worst, 1e-8, format!("θ = {:.12}, area = 4π", pz.theta));
    col.bound("phase_block_diagonal", off, 1e-10, "");

    let mut block = 0.0f64;
    for (theta, phi) in [(0.4, 0.0), (1.7, 1.1), (2.9, -2.0)] {
        let h = build_h1_effective(1.3, theta, phi);
        for i in 0..2 {
            for j in 0..2 {
                block = block.max(h.matrix()[(i, j)].norm()).max(h.matrix()[(i + 2, j + 2)].norm());
            }
        }
    }
    col.bound("h1_block_vanishing", block, 0.0, "diagonal blocks of H₁ are exactly zero");

    let mut svd_dev = 0.0f64;
    let mut svd_ok = true;
    for (theta, phi) in [(0.5, 0.2), (1.68, 0.0), (2.64, 1.0), (4.0, -0.7)] {
        let a = analytic_wdv(theta, phi)?;
        let n = svd2x2(&build_t(theta, phi))?;
        svd_ok &= a.equivalent(&n, 1e-12);
        svd_dev = svd_dev.max(max_abs2(&(a.reconstruct() - build_t(theta, phi))));
    }
    col.bound(
        "svd_closed_form",
        if svd_ok { svd_dev } else { f64::INFINITY },
        1e-12,
        "closed-form W, D, V against the numerical 2×2 SVD",
    );
    Ok(())
}

fn two_qubit(col: &mut Collector) -> Result<()> {
    let mut transport = 0.0f64;
    let mut dark = 0.0f64;
    let mut bright = 0.0f64;
    let mut closed = 0.0f64;
    let mut count = 0;
    for i in 0..5 {
        for j in 0..5 {
            for k in 0..4 {
                let vartheta = PI * (i as f64 + 0.5) / 5.0;
                let phi = TAU * j as f64 / 5.0 - 0.3;
                let chi = TAU * (k as f64 + 0.25) / 4.0;
                let drive = TwoIonDrive::with_relative_phase(1.0, vartheta, phi, chi)?;
                let h = build_h2(&drive);
                transport = transport.max(h.matrix()[(2, 1)].norm()).max(h.matrix()[(1, 2)].norm());
                let u = two_segment_unitary(&drive, HALF_PI_AREAS)?;
                closed = closed.max(max_abs_diff(u.matrix(), closed_form_u2(&drive).matrix()));
                let pair = dressed_states(vartheta, phi);
                let d = pair.dark.as_vector().expect("pure");
                let b = pair.bright.as_vector().expect("pure");
                dark = dark.max((u.matrix() * d - d).norm());
                bright = bright.max((u.matrix() * b + b * crate::quantum::operator::cis(chi)).norm());
                count += 1;
            }
        }
    }
    col.bound("parallel_transport", transport, 0.0, "⟨001|H₂|010⟩ on a 5×5×4 grid");
    col.bound("dark_state_invariant", dark, 1e-10, "");
    col.bound("bright_state_phase", bright, 1e-10, "");
    col.bound(
        "two_qubit_closed_form",
        closed,
        1e-10,
        format!("{count} settings of (ϑ, φ, χ)"),
    );

    let drive = TwoIonDrive::with_relative_phase(1.0, 1.2, 0.7, PI)?;
    let u = two_segment_unitary(&drive, HALF_PI_AREAS)?;
    col.bound(
        "chi_pi_identity",
        max_abs_diff(u.matrix(), &crate::quantum::CMatrix::identity(3, 3)),
        1e-10,
        "",
    );

    let chi = FRAC_PI_2;
    let drive = TwoIonDrive::with_relative_phase(1.0, PI, 0.0, chi)?;
    let report = full_two_ion_unitary(&drive, 2, 1e-6)?;
    col.bound(
        "full_space_single_excitation",
        report.single_excitation_deviation,
        1e-10,
        "phonon ⊗ ion ⊗ ion block on {|100⟩,|010⟩,|001⟩} against the three-level model",
    );
    let fmt_diag = |m: &crate::quantum::CMatrix| {
        (0..4)
            .map(|i| format!("{:+.6}{:+.6}i", m[(i, i)].re, m[(i, i)].im))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let (measured, _) = strip_global_phase(report.gate.matrix());
    let (claimed, _) = strip_global_phase(controlled_phase_matrix(chi).matrix());
    col.info(
        "controlled_phase_claim",
        report.deviation_from_claim,
        format!(
            "ϑ = π, χ = π/2: measured diag [{}] vs diag(1,1,1,−e^{{iχ}}) [{}]; max leakage {:.3e}",
            fmt_diag(&measured),
            fmt_diag(&claimed),
            report.leakage.iter().cloned().fold(0.0, f64::max)
        ),
    );
    Ok(())
}

fn open_system(col: &mut Collector) -> Result<()> {
    let layout = HilbertLayout::phonon_ion(1)?;
    let idle = |t: f64| Schedule::new(layout.clone(), vec![Piece { drive: Drive::Idle, duration: t }]);

    let kappa = 1.0;
    let rates = NoiseRates::new(kappa, 0.0, 0.0)?;
    let s = idle(1.0 / kappa)?;
    let rho0 = QuantumState::basis(layout.clone(), 2)?.to_density();
    let out = integrate_master(&rho0, &s, &rates, ErrorModel::none(), default_step(&s, &rates, ErrorModel::none())?)?;
    let excited = out.population_where(|d| d[0] == 1);
    col.bound(
        "phonon_decay",
        (excited - (-1.0f64).exp()).abs(),
        1e-6,
        format!("population after t = 1/κ: {excited:.10}"),
    );

    let gz = 2.0;
    let rates = NoiseRates::new(0.0, 0.0, gz)?;
    let t = 0.4;
    let s = idle(t)?;
    let plus = QuantumState::pure_normalized(
        layout.clone(),
        CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
    )?;
    let out = integrate_master(&plus.to_density(), &s, &rates, ErrorModel::none(), default_step(&s, &rates, ErrorModel::none())?)?;
    let coh = out.density_matrix()[(0, 1)].re;
    col.bound(
        "dephasing_decay",
        (coh - 0.5 * (-2.0 * gz * t).exp()).abs(),
        1e-6,
        format!("coherence after γ_z t = {}: {coh:.10}", gz * t),
    );

    let h = build_h1_effective(1.0, 1.1, 0.4);
    let rates = NoiseRates::tied(0.3)?;
    let rhs = lindblad_rhs(&plus.to_density(), &h, &rates)?;
    col.bound(
        "lindblad_trace_hermitian",
        rhs.trace().norm().max(hermiticity_error(&rhs)),
        1e-12,
        "",
    );

    for gate in [GateKind::Phase, GateKind::CphaseComposite] {
        let g = synthesize(&GateParams::for_gate(gate))?;
        let f = gate_fidelity_under_noise(&g.schedule, &NoiseRates::zero(), ErrorModel::none(), &g.inputs, None)?;
        col.bound(
            &format!("noiseless_fidelity_{gate}"),
            1.0 - f.mean,
            1e-4,
            format!("F = {:.12}", f.mean),
        );
    }

    let g = synthesize(&GateParams::default())?;
    let u = g.schedule.ideal_gate().matrix();
    let target = phase_matrix(g.params.delta_phi);
    let dev = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (u[(i, j)] - target[(i, j)]).norm())
        .fold(0.0, f64::max);
    col.bound("schedule_ideal_gate", dev, 1e-8, "phase-gate schedule on the phonon-vacuum block");

    let rates = NoiseRates::tied(100.0)?;
    let err = ErrorModel::new(0.1)?;
    let dt = default_step(&g.schedule, &rates, err)?;
    let rho = g.inputs[2].to_density();
    let a = integrate_master(&rho, &g.schedule, &rates, err, dt)?;
    let b = integrate_master(&rho, &g.schedule, &rates, err, dt / 2.0)?;
    col.bound(
        "step_halving",
        max_abs_diff(&a.density_matrix(), &b.density_matrix()),
        1e-8,
        format!("dt = {dt:.3e} s"),
    );
    Ok(())
}

/// Runs the invariant and cross-check suite. Failures become report entries.
pub fn verify_all(options: &VerifyOptions) -> VerifyReport {
    let mut col = Collector {
        scale: options.tolerance_scale,
        checks: Vec::new(),
    };
    let r = single_qubit(&mut col);
    col.result("single_qubit_suite", r);
    let r = two_qubit(&mut col);
    col.result("two_qubit_suite", r);
    let r = open_system(&mut col);
    col.result("open_system_suite", r);
    let passed = col.checks.iter().all(|c| c.status != CheckStatus::Fail);
    VerifyReport {
        passed,
        checks: col.checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let r = verify_all(&VerifyOptions::default());
        let failed: Vec<_> = r.failures().map(|c| (&c.name, c.measured, &c.detail)).collect();
        assert!(r.passed, "{failed:?}");
        assert_eq!(r.get("controlled_phase_claim").unwrap().status, CheckStatus::Info);
    }
}
