//! Single-qubit holonomic gates on the phonon ⊗ ion Jaynes–Cummings system.
//!
//! The effective Hamiltonian lives on `{|00⟩, |01⟩, |10⟩, |11⟩}` (phonon
//! first, ion second) and has the block form `J [[0, T], [T†, 0]]`, so it
//! vanishes on both `M₀ = {|00⟩, |01⟩}` and `M₁ = {|10⟩, |11⟩}`. A path
//! segment whose pulse area satisfies `cos(a_τ D) = 0` swaps the two
//! subspaces; two such segments close a loop and leave a purely geometric
//! unitary `U₀` on `M₀` (and `U₁` on `M₁`).

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::operator::{c, cis};
use crate::quantum::svd::max_abs2;
use crate::quantum::{
    expm_hermitian, kron, ops, CMatrix, CMatrix2, HilbertLayout, Operator, QuantumState, SvdTriple,
    PHONON,
};

/// Lamb–Dicke parameter of the reference experiment.
pub const LAMB_DICKE: f64 = 0.044;
/// Phonon drive coupling |ε| = 2π × 2.42 kHz, in rad/s.
pub const OPERATING_EPSILON: f64 = TAU * 2.42e3;
/// Effective ion–laser coupling |Ω₀′| = 2π × 4.20 kHz, in rad/s.
pub const OPERATING_OMEGA0_PRIME: f64 = TAU * 4.20e3;

/// Tolerance on the segment conditions `cos(a_τ D) = 0`.
pub const CONDITION_TOL: f64 = 1e-9;

/// `J = √(ε² + Ω₀′²)` at the reference operating point (≈ 2π × 4.847 kHz).
pub fn operating_amplitude() -> f64 {
    OPERATING_EPSILON.hypot(OPERATING_OMEGA0_PRIME)
}

/// Mixing angle `θ = 2 atan(ε / Ω₀′)` at the reference operating point.
pub fn operating_theta() -> f64 {
    2.0 * OPERATING_EPSILON.atan2(OPERATING_OMEGA0_PRIME)
}

/// Lab-frame parameters of the driven ion before the rotating-wave reduction.
///
/// Only bookkeeping: the lab-frame Hamiltonian is never evolved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabFrameParams {
    pub eta: f64,
    pub omega_ion: f64,
    pub omega_vib: f64,
    pub omega_laser: f64,
    pub omega_drive: f64,
    pub omega0: f64,
    pub epsilon: f64,
    pub laser_phase: f64,
    pub resonant: bool,
}

impl LabFrameParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Lamb-Dicke parameter must be positive, got {}",
                self.eta
            )));
        }
        if self.resonant {
            let scale = self.omega_ion.abs().max(self.omega_vib.abs()).max(1.0);
            let detuning = self.omega_ion - self.omega_laser;
            if (detuning - self.omega_vib).abs() > 1e-9 * scale
                || (self.omega_vib - self.omega_drive).abs() > 1e-9 * scale
            {
                return Err(Error::InvalidParameter(format!(
                    "resonant record requires ω − ω_L = ω_ν = ω_d (got Δ = {detuning}, ω_ν = {}, ω_d = {})",
                    self.omega_vib, self.omega_drive
                )));
            }
        }
        Ok(())
    }

    /// `Ω₀′ = η Ω₀`.
    pub fn effective_coupling(&self) -> f64 {
        self.eta * self.omega0
    }

    /// Phase entering the effective Hamiltonian, `φ = φ′ + π/2`.
    pub fn effective_phase(&self) -> f64 {
        self.laser_phase + FRAC_PI_2
    }
}

/// Which sign pattern `sin(a_τ D)` takes at the end of a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PType {
    /// `diag(1, 1)`
    #[serde(rename = "P_I")]
    Identity,
    /// `diag(1, -1)`
    #[serde(rename = "P_z")]
    Z,
}

impl PType {
    pub fn signs(self) -> [f64; 2] {
        match self {
            PType::Identity => [1.0, 1.0],
            PType::Z => [1.0, -1.0],
        }
    }

    pub fn matrix(self) -> CMatrix2 {
        let [a, b] = self.signs();
        CMatrix2::new(c(a, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(b, 0.0))
    }

    fn second_offset(self) -> f64 {
        match self {
            PType::Identity => FRAC_PI_2,
            PType::Z => 3.0 * FRAC_PI_2,
        }
    }
}

impl std::fmt::Display for PType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PType::Identity => "P_I",
            PType::Z => "P_z",
        })
    }
}

fn is_multiple_of(x: f64, period: f64, tol: f64) -> bool {
    let r = x.rem_euclid(period);
    r <= tol || period - r <= tol
}

/// Coupling block `T(θ, φ)`.
pub fn build_t(theta: f64, phi: f64) -> CMatrix2 {
    let s = (theta / 2.0).sin() / 2.0;
    CMatrix2::new(
        c(s, 0.0),
        c(0.0, 0.0),
        cis(phi) * (theta / 2.0).cos(),
        c(s, 0.0),
    )
}

/// Effective 4×4 Hamiltonian `J [[0, T], [T†, 0]]` on phonon{0,1} ⊗ ion.
pub fn build_h1_effective(amplitude: f64, theta: f64, phi: f64) -> Operator {
    let t = build_t(theta, phi) * c(amplitude, 0.0);
    let mut h = CMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            h[(i, j + 2)] = t[(i, j)];
            h[(j + 2, i)] = t[(i, j)].conj();
        }
    }
    Operator::new(HilbertLayout::phonon_ion(1).expect("static layout"), h).expect("4x4")
}

/// `H₁ = Ω₀′ a†σ e^{−iφ} + (ε/2) a† + h.c.` on a Fock space truncated at `n_max`,
/// with `ε = J sin(θ/2)`, `Ω₀′ = J cos(θ/2)`.
///
/// At `n_max = 1` this coincides with [`build_h1_effective`].
pub fn build_h1_full(n_max: usize, amplitude: f64, theta: f64, phi: f64) -> Result<Operator> {
    if n_max < 1 {
        return Err(Error::InvalidParameter(format!(
            "phonon cutoff must be at least 1, got {n_max}"
        )));
    }
    let layout = HilbertLayout::phonon_ion(n_max)?;
    let omega = amplitude * (theta / 2.0).cos();
    let epsilon = amplitude * (theta / 2.0).sin();
    let dim = n_max + 1;
    let up = ops::creation(dim);
    let half = kron(&up, &ops::sigma_minus()) * (cis(-phi) * omega)
        + kron(&up, &CMatrix::identity(2, 2)) * c(epsilon / 2.0, 0.0);
    let h = &half + half.adjoint();
    Operator::new(layout, h)
}

/// Closed-form `W`, `D`, `V` with `T(θ, φ) = W D V†` and
/// `D = diag(cos²(θ/4), sin²(θ/4))`, in that order.
pub fn analytic_wdv(theta: f64, phi: f64) -> Result<SvdTriple> {
    if is_multiple_of(theta, TAU, 1e-12) {
        return Err(Error::SingularMatrix {
            det: ((theta / 2.0).sin() / 2.0).powi(2),
        });
    }
    let (s, co) = (theta / 4.0).sin_cos();
    let w = CMatrix2::new(c(s, 0.0), cis(-phi) * co, cis(phi) * co, c(-s, 0.0));
    let v = CMatrix2::new(c(co, 0.0), cis(-phi) * s, cis(phi) * s, c(-co, 0.0));
    Ok(SvdTriple {
        w,
        d: [co * co, s * s],
        v,
    })
}

fn diag_fn(d: [f64; 2], f: impl Fn(f64) -> f64) -> CMatrix2 {
    CMatrix2::new(c(f(d[0]), 0.0), c(0.0, 0.0), c(0.0, 0.0), c(f(d[1]), 0.0))
}

/// Block propagator after accumulating pulse area `a_t = ∫ J dt`:
/// `[[W cos(a_t D) W†, −i W sin(a_t D) V†], [−i V sin(a_t D) W†, V cos(a_t D) V†]]`.
pub fn segment_unitary_at(theta: f64, phi: f64, running_area: f64) -> Result<Operator> {
    let svd = analytic_wdv(theta, phi)?;
    let cos_d = diag_fn(svd.d, |x| (running_area * x).cos());
    let sin_d = diag_fn(svd.d, |x| (running_area * x).sin());
    let minus_i = c(0.0, -1.0);
    let blocks = [
        [svd.w * cos_d * svd.w.adjoint(), svd.w * sin_d * svd.v.adjoint() * minus_i],
        [svd.v * sin_d * svd.w.adjoint() * minus_i, svd.v * cos_d * svd.v.adjoint()],
    ];
    let u = CMatrix::from_fn(4, 4, |i, j| blocks[i / 2][j / 2][(i % 2, j % 2)]);
    Operator::new(HilbertLayout::phonon_ion(1)?, u)
}

/// One path segment with constant amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentSpec {
    pub theta: f64,
    pub phi: f64,
    /// `J` in rad/s.
    pub amplitude: f64,
    /// Pulse area `a_τ = J τ`.
    pub area: f64,
    /// `τ` in seconds.
    pub duration: f64,
    pub p_type: PType,
}

impl SegmentSpec {
    pub fn new(theta: f64, phi: f64, amplitude: f64, area: f64, p_type: PType) -> Result<Self> {
        if !(amplitude > 0.0) || !amplitude.is_finite() {
            return Err(Error::InvalidSegment(format!("amplitude must be positive, got {amplitude}")));
        }
        if !(area > 0.0) || !area.is_finite() {
            return Err(Error::InvalidSegment(format!("pulse area must be positive, got {area}")));
        }
        let seg = Self {
            theta,
            phi,
            amplitude,
            area,
            duration: area / amplitude,
            p_type,
        };
        seg.validate()?;
        Ok(seg)
    }

    pub fn from_solution(solution: &SegmentSolution, phi: f64, amplitude: f64) -> Result<Self> {
        Self::new(solution.theta, phi, amplitude, solution.area, solution.p_type)
    }

    pub fn validate(&self) -> Result<()> {
        if is_multiple_of(self.theta, PI, CONDITION_TOL) {
            return Err(Error::ThetaMultipleOfPi { theta: self.theta });
        }
        if (self.duration * self.amplitude - self.area).abs() > 1e-12 * self.area.max(1.0) {
            return Err(Error::InvalidSegment(format!(
                "duration·J = {} does not equal the area {}",
                self.duration * self.amplitude,
                self.area
            )));
        }
        let cos = self.condition_residuals();
        let sin = self.sine_values();
        let signs = self.p_type.signs();
        for k in 0..2 {
            if cos[k].abs() > CONDITION_TOL {
                return Err(Error::InvalidSegment(format!(
                    "cos(a_τ D_{k}) = {:.3e} is not zero",
                    cos[k]
                )));
            }
            if (sin[k] - signs[k]).abs() > CONDITION_TOL.sqrt() {
                return Err(Error::InvalidSegment(format!(
                    "sin(a_τ D_{k}) = {} does not match {}",
                    sin[k], self.p_type
                )));
            }
        }
        Ok(())
    }

    fn d(&self) -> [f64; 2] {
        let (s, co) = (self.theta / 4.0).sin_cos();
        [co * co, s * s]
    }

    /// `cos(a_τ cos²(θ/4))`, `cos(a_τ sin²(θ/4))`.
    pub fn condition_residuals(&self) -> [f64; 2] {
        self.d().map(|x| (self.area * x).cos())
    }

    pub fn sine_values(&self) -> [f64; 2] {
        self.d().map(|x| (self.area * x).sin())
    }

    pub fn with_phi(&self, phi: f64) -> Self {
        Self { phi, ..*self }
    }

    /// Ω₀′ = J cos(θ/2).
    pub fn omega0_prime(&self) -> f64 {
        self.amplitude * (self.theta / 2.0).cos()
    }

    /// ε = J sin(θ/2).
    pub fn epsilon(&self) -> f64 {
        self.amplitude * (self.theta / 2.0).sin()
    }

    pub fn hamiltonian(&self) -> Operator {
        build_h1_effective(self.amplitude, self.theta, self.phi)
    }
}

/// Segment propagator at running area `a_t` (any `0 ≤ a_t`, not only the full area).
pub fn segment_unitary(seg: &SegmentSpec, running_area: f64) -> Result<Operator> {
    segment_unitary_at(seg.theta, seg.phi, running_area)
}

/// A lattice point of the segment conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentSolution {
    pub p_type: PType,
    pub m: u32,
    pub n: u32,
    pub theta: f64,
    pub area: f64,
}

/// Solves `a_τ cos²(θ/4) = π/2 + 2πm` together with
/// `a_τ sin²(θ/4) = π/2 + 2πn` (`P_I`) or `3π/2 + 2πn` (`P_z`).
pub fn solve_segment_params(p_type: PType, m: u32, n: u32) -> Result<SegmentSolution> {
    let first = FRAC_PI_2 + TAU * m as f64;
    let second = p_type.second_offset() + TAU * n as f64;
    let area = first + second;
    let theta = 4.0 * (first / area).sqrt().acos();
    // θ = π exactly when both quantized areas agree.
    if first == second || is_multiple_of(theta, PI, CONDITION_TOL) {
        return Err(Error::ThetaMultipleOfPi { theta });
    }
    Ok(SegmentSolution {
        p_type,
        m,
        n,
        theta,
        area,
    })
}

/// Closest valid lattice θ over `0 ≤ m, n ≤ max_index`, with its absolute deviation.
pub fn nearest_lattice(p_type: PType, theta_target: f64, max_index: u32) -> Option<(SegmentSolution, f64)> {
    (0..=max_index)
        .flat_map(|m| (0..=max_index).map(move |n| (m, n)))
        .filter_map(|(m, n)| solve_segment_params(p_type, m, n).ok())
        .map(|s| (s, (s.theta - theta_target).abs()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Result of running two segments back to back.
#[derive(Debug, Clone)]
pub struct HolonomicLoop {
    /// `U(C₂) · U(C₁)` on phonon{0,1} ⊗ ion.
    pub full: Operator,
    /// Block acting on `M₀` (phonon vacuum).
    pub u0: CMatrix2,
    /// Block acting on `M₁`.
    pub u1: CMatrix2,
    /// Largest entry outside the two diagonal blocks.
    pub off_block_max: f64,
}

/// `U₀ = −W₂P²V₂†V₁P¹W₁†` and `U₁ = −V₂P²W₂†W₁P¹V₁†`.
pub fn loop_closed_form(seg1: &SegmentSpec, seg2: &SegmentSpec) -> Result<(CMatrix2, CMatrix2)> {
    let a = analytic_wdv(seg1.theta, seg1.phi)?;
    let b = analytic_wdv(seg2.theta, seg2.phi)?;
    let p1 = seg1.p_type.matrix();
    let p2 = seg2.p_type.matrix();
    let u0 = -(b.w * p2 * b.v.adjoint() * a.v * p1 * a.w.adjoint());
    let u1 = -(b.v * p2 * b.w.adjoint() * a.w * p1 * a.v.adjoint());
    Ok((u0, u1))
}

fn block(m: &CMatrix, row: usize, col: usize) -> CMatrix2 {
    CMatrix2::from_fn(|i, j| m[(row + i, col + j)])
}

/// Composes two segments sharing `(θ, a_τ)` into a closed loop.
///
/// Mixed `P_I`/`P_z` pairs are accepted.
pub fn compose_loop(seg1: &SegmentSpec, seg2: &SegmentSpec) -> Result<HolonomicLoop> {
    if (seg1.theta - seg2.theta).abs() > 1e-12 {
        return Err(Error::LoopMismatch(format!(
            "segments use different mixing angles ({} vs {})",
            seg1.theta, seg2.theta
        )));
    }
    if (seg1.area - seg2.area).abs() > 1e-12 * seg1.area.max(1.0) {
        return Err(Error::LoopMismatch(format!(
            "segments use different pulse areas ({} vs {})",
            seg1.area, seg2.area
        )));
    }
    seg1.validate()?;
    seg2.validate()?;

    let u_c1 = segment_unitary(seg1, seg1.area)?;
    let u_c2 = segment_unitary(seg2, seg2.area)?;
    let full = u_c2.compose(&u_c1)?;
    let m = full.matrix();
    let off_block_max = max_abs2(&block(m, 0, 2)).max(max_abs2(&block(m, 2, 0)));
    Ok(HolonomicLoop {
        u0: block(m, 0, 0),
        u1: block(m, 2, 2),
        off_block_max,
        full,
    })
}

/// `e^{−iθσ_y} = [[cos θ, −sin θ], [sin θ, cos θ]]`.
pub fn ry_matrix(theta: f64) -> CMatrix2 {
    let (s, co) = theta.sin_cos();
    CMatrix2::new(c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0))
}

/// `e^{iπ} diag(e^{−iΔφ}, e^{iΔφ})`.
///
/// This is a rotation about Z in the `{|0⟩, |1⟩}` basis, although it is
/// sometimes labelled an X rotation.
pub fn phase_matrix(delta_phi: f64) -> CMatrix2 {
    CMatrix2::new(-cis(-delta_phi), c(0.0, 0.0), c(0.0, 0.0), -cis(delta_phi))
}

/// A two-segment schedule and the gate it enacts on the ion when the phonon starts in vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitGate {
    pub seg1: SegmentSpec,
    pub seg2: SegmentSpec,
    pub u0: CMatrix2,
}

impl SingleQubitGate {
    fn from_segments(seg1: SegmentSpec, seg2: SegmentSpec) -> Result<Self> {
        let lp = compose_loop(&seg1, &seg2)?;
        Ok(Self { seg1, seg2, u0: lp.u0 })
    }

    pub fn total_duration(&self) -> f64 {
        self.seg1.duration + self.seg2.duration
    }
}

/// Y rotation by a lattice angle: `P_I` segments with `φ₁ = 0`, `φ₂ = π`.
pub fn y_rotation_gate(theta_target: f64, m: u32, n: u32, amplitude: f64) -> Result<SingleQubitGate> {
    let unreachable = || {
        let search = m.max(n).max(10);
        let (best, _) = nearest_lattice(PType::Identity, theta_target, search)
            .expect("lattice has valid points");
        Error::Unreachable {
            target: theta_target,
            m,
            n,
            nearest: best.theta,
            nearest_m: best.m,
            nearest_n: best.n,
        }
    };
    let solution = solve_segment_params(PType::Identity, m, n).map_err(|_| unreachable())?;
    if (solution.theta - theta_target).abs() > CONDITION_TOL {
        return Err(unreachable());
    }
    let seg1 = SegmentSpec::from_solution(&solution, 0.0, amplitude)?;
    SingleQubitGate::from_segments(seg1, seg1.with_phi(PI))
}

/// Phase gate `e^{iπ} diag(e^{−iΔφ}, e^{iΔφ})` from `P_z` segments with `φ₂ = φ₁ + Δφ`, `φ₁ = 0`.
pub fn phase_gate(delta_phi: f64, m: u32, n: u32, amplitude: f64) -> Result<SingleQubitGate> {
    phase_gate_with_offset(0.0, delta_phi, m, n, amplitude)
}

pub fn phase_gate_with_offset(
    phi1: f64,
    delta_phi: f64,
    m: u32,
    n: u32,
    amplitude: f64,
) -> Result<SingleQubitGate> {
    let solution = solve_segment_params(PType::Z, m, n)?;
    let seg1 = SegmentSpec::from_solution(&solution, phi1, amplitude)?;
    SingleQubitGate::from_segments(seg1, seg1.with_phi(phi1 + delta_phi))
}

/// Population that escapes the phonon qubit `{|0⟩, |1⟩}` when the full
/// Fock-space Hamiltonian replaces the four-level model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeakageReport {
    pub n_max: usize,
    pub leakage: f64,
    /// Same probe with the cutoff doubled.
    pub leakage_doubled: f64,
    pub relative_change: f64,
    /// True when doubling the cutoff moved the estimate by less than 1 %.
    pub converged: bool,
}

fn leakage_at(gate: &SingleQubitGate, n_max: usize) -> Result<f64> {
    let mut state = QuantumState::basis(HilbertLayout::phonon_ion(n_max)?, 0)?;
    for seg in [&gate.seg1, &gate.seg2] {
        let h = build_h1_full(n_max, seg.amplitude, seg.theta, seg.phi)?;
        state = state.evolve(&expm_hermitian(&h, seg.duration)?)?;
    }
    let pos = state.layout().position(PHONON).expect("phonon factor");
    Ok(state.population_where(|digits| digits[pos] >= 2))
}

/// Evolves `|0⟩_a|0⟩` through `gate` on a Fock space cut at `n_max` (and `2 n_max`).
pub fn leakage_probe(gate: &SingleQubitGate, n_max: usize) -> Result<LeakageReport> {
    let leakage = leakage_at(gate, n_max)?;
    let leakage_doubled = leakage_at(gate, 2 * n_max)?;
    let relative_change = if leakage_doubled > 0.0 {
        (leakage - leakage_doubled).abs() / leakage_doubled
    } else {
        leakage.abs()
    };
    Ok(LeakageReport {
        n_max,
        leakage,
        leakage_doubled,
        relative_change,
        converged: relative_change < 0.01,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{max_abs_diff, svd2x2};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn close2(a: &CMatrix2, b: &CMatrix2) -> f64 {
        max_abs2(&(a - b))
    }

    #[test]
    fn h1_at_theta_pi_keeps_only_drive() {
        let h = build_h1_effective(1.0, PI, 0.3);
        let mut expect = CMatrix::zeros(4, 4);
        for (i, j) in [(0, 2), (1, 3)] {
            expect[(i, j)] = c(0.5, 0.0);
            expect[(j, i)] = c(0.5, 0.0);
        }
        assert!(max_abs_diff(h.matrix(), &expect) < 1e-16);
    }

    #[test]
    fn h1_entry_pattern() {
        let h = build_h1_effective(1.0, FRAC_PI_2, 0.0);
        let m = h.matrix();
        assert!((m[(1, 2)] - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((m[(0, 2)] - c(FRAC_1_SQRT_2 / 2.0, 0.0)).norm() < 1e-15);
        // Ω₀′e^{iφ} above the diagonal, Ω₀′e^{−iφ} below
        let h = build_h1_effective(2.0, 1.0, 0.4);
        let om = 2.0 * 0.5f64.cos();
        assert!((h.matrix()[(1, 2)] - cis(0.4) * om).norm() < 1e-15);
        assert!((h.matrix()[(2, 1)] - cis(-0.4) * om).norm() < 1e-15);
    }

    #[test]
    fn h1_vanishes_on_both_subspaces() {
        for (j, th, ph) in [(1.0, 0.3, 0.1), (3.7, 2.2, -1.0), (0.5, PI, 2.0)] {
            let m = build_h1_effective(j, th, ph).into_matrix();
            for (r0, c0) in [(0, 0), (2, 2)] {
                assert_eq!(max_abs2(&block(&m, r0, c0)), 0.0);
            }
        }
    }

    #[test]
    fn t_examples() {
        let t = build_t(PI, 0.0);
        assert!(close2(&t, &(CMatrix2::identity() * c(0.5, 0.0))) < 1e-16);
        let t = build_t(FRAC_PI_2, FRAC_PI_2);
        let r2 = 2f64.sqrt();
        let expect = CMatrix2::new(c(r2 / 4.0, 0.0), c(0.0, 0.0), c(0.0, r2 / 2.0), c(r2 / 4.0, 0.0));
        assert!(close2(&t, &expect) < 1e-15);
        let t = build_t(PI / 3.0, 0.9);
        let det = t[(0, 0)] * t[(1, 1)] - t[(0, 1)] * t[(1, 0)];
        assert!((det - c(1.0 / 16.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn analytic_wdv_at_theta_pi() {
        let s = analytic_wdv(PI, 0.0).unwrap();
        let q = FRAC_PI_4.sin();
        assert!((s.w[(0, 0)] - c(q, 0.0)).norm() < 1e-15);
        assert!((s.w[(0, 1)] - c(FRAC_PI_4.cos(), 0.0)).norm() < 1e-15);
        assert!((s.d[0] - 0.5).abs() < 1e-15 && (s.d[1] - 0.5).abs() < 1e-15);
        assert!(matches!(analytic_wdv(0.0, 0.0), Err(Error::SingularMatrix { .. })));
        assert!(analytic_wdv(TAU, 0.0).is_err());
    }

    #[test]
    fn analytic_matches_numerical_svd() {
        for k in 1..40 {
            let theta = 0.157 * k as f64;
            let phi = -2.0 + 0.11 * k as f64;
            let analytic = analytic_wdv(theta, phi).unwrap();
            assert!(close2(&analytic.reconstruct(), &build_t(theta, phi)) < 1e-12);
            assert!((analytic.d[0] + analytic.d[1] - 1.0).abs() < 1e-12);
            let numeric = svd2x2(&build_t(theta, phi)).unwrap();
            assert!(analytic.equivalent(&numeric, 1e-10), "θ = {theta}");
        }
    }

    #[test]
    fn solver_lattice_points() {
        let s = solve_segment_params(PType::Identity, 1, 0).unwrap();
        assert!((s.theta - 4.0 * (1.0 / 5f64.sqrt()).atan()).abs() < 1e-14);
        assert!((s.area - 3.0 * PI).abs() < 1e-14);
        assert!((s.theta - 1.68213734113586).abs() < 1e-12);

        let z = solve_segment_params(PType::Z, 1, 0).unwrap();
        assert!((z.area - 4.0 * PI).abs() < 1e-14);
        assert!(((z.theta / 4.0).cos().powi(2) - 5.0 / 8.0).abs() < 1e-14);
        assert!((z.theta - 2.6362321433056355).abs() < 1e-12);

        let err = solve_segment_params(PType::Identity, 0, 0).unwrap_err();
        assert!(matches!(err, Error::ThetaMultipleOfPi { .. }));
        assert!(solve_segment_params(PType::Identity, 3, 3).is_err());
    }

    #[test]
    fn swapped_indices_mirror_theta() {
        // cos² ↔ sin² of θ/4 maps θ/4 → π/2 − θ/4, i.e. θ → 2π − θ
        let a = solve_segment_params(PType::Identity, 2, 0).unwrap();
        let b = solve_segment_params(PType::Identity, 0, 2).unwrap();
        assert!((a.theta + b.theta - TAU).abs() < 1e-13);
    }

    #[test]
    fn segment_spec_rejects_bad_inputs() {
        let s = solve_segment_params(PType::Identity, 1, 0).unwrap();
        assert!(SegmentSpec::new(s.theta, 0.0, 1.0, s.area * 0.9, PType::Identity).is_err());
        assert!(SegmentSpec::new(s.theta, 0.0, -1.0, s.area, PType::Identity).is_err());
        // correct cosines but wrong sine signs
        assert!(SegmentSpec::new(s.theta, 0.0, 1.0, s.area, PType::Z).is_err());
        assert!(matches!(
            SegmentSpec::new(PI, 0.0, 1.0, 5.0, PType::Identity),
            Err(Error::ThetaMultipleOfPi { .. })
        ));
    }

    #[test]
    fn segment_unitary_endpoints() {
        let u = segment_unitary_at(1.1, 0.2, 0.0).unwrap();
        assert!(max_abs_diff(u.matrix(), &CMatrix::identity(4, 4)) < 1e-15);

        let s = solve_segment_params(PType::Identity, 1, 0).unwrap();
        let seg = SegmentSpec::from_solution(&s, 0.0, 1.0).unwrap();
        let u = segment_unitary(&seg, seg.area).unwrap().into_matrix();
        assert!(max_abs2(&block(&u, 0, 0)) < 1e-12);
        assert!(max_abs2(&block(&u, 2, 2)) < 1e-12);
    }

    #[test]
    fn segment_unitary_matches_expm() {
        let h = build_h1_effective(1.0, FRAC_PI_2, 0.0);
        let direct = expm_hermitian(&h, 1.0).unwrap();
        let closed = segment_unitary_at(FRAC_PI_2, 0.0, 1.0).unwrap();
        assert!(direct.max_abs_diff(&closed) < 1e-12);
    }

    #[test]
    fn y_rotation_matrix_values() {
        let s = solve_segment_params(PType::Identity, 1, 0).unwrap();
        let g = y_rotation_gate(s.theta, 1, 0, 1.0).unwrap();
        let expect = CMatrix2::new(
            c(-1.0 / 9.0, 0.0),
            c(-(80f64).sqrt() / 9.0, 0.0),
            c((80f64).sqrt() / 9.0, 0.0),
            c(-1.0 / 9.0, 0.0),
        );
        // cos θ = 2cos²(θ/2) − 1 with cos²(θ/4) = 5/6 gives cos θ = −1/9
        assert!(close2(&g.u0, &expect) < 1e-10);
        assert!(close2(&g.u0, &ry_matrix(s.theta)) < 1e-10);
        assert!((g.u0[(0, 1)].re + 0.99381).abs() < 1e-5);
    }

    #[test]
    fn y_rotation_unreachable_reports_nearest() {
        let err = y_rotation_gate(PI / 3.0, 1, 0, 1.0).unwrap_err();
        let Error::Unreachable { nearest, nearest_m, nearest_n, .. } = err else {
            panic!("wrong error {err:?}")
        };
        // brute-force the lattice independently
        let mut best = (f64::INFINITY, 0, 0);
        for m in 0..=10u32 {
            for n in 0..=10u32 {
                if m == n {
                    continue;
                }
                let r = (1.0 + 4.0 * m as f64) / (1.0 + 4.0 * n as f64);
                let th = 4.0 * (1.0 / r.sqrt()).atan();
                if (th - PI / 3.0).abs() < (best.0 - PI / 3.0).abs() {
                    best = (th, m, n);
                }
            }
        }
        assert!((nearest - best.0).abs() < 1e-12);
        assert_eq!((nearest_m, nearest_n), (best.1, best.2));
    }

    #[test]
    fn phase_gate_matrix() {
        let g = phase_gate(FRAC_PI_4, 1, 0, 1.0).unwrap();
        assert!(close2(&g.u0, &phase_matrix(FRAC_PI_4)) < 1e-10);
        let g = phase_gate(0.0, 1, 0, 1.0).unwrap();
        assert!(close2(&g.u0, &(-CMatrix2::identity())) < 1e-10);
    }

    #[test]
    fn loop_rejects_mismatched_segments() {
        let si = solve_segment_params(PType::Identity, 1, 0).unwrap();
        let sz = solve_segment_params(PType::Z, 1, 0).unwrap();
        let a = SegmentSpec::from_solution(&si, 0.0, 1.0).unwrap();
        let b = SegmentSpec::from_solution(&sz, 0.0, 1.0).unwrap();
        assert!(matches!(compose_loop(&a, &b), Err(Error::LoopMismatch(_))));
    }

    #[test]
    fn full_hamiltonian_reduces_to_effective() {
        let full = build_h1_full(1, 1.3, 0.7, 0.4).unwrap();
        assert!(full.max_abs_diff(&build_h1_effective(1.3, 0.7, 0.4)) < 1e-15);
        assert!(build_h1_full(0, 1.0, 1.0, 0.0).is_err());

        let n_max = 5;
        let (j, th, ph) = (1.0, 0.9, 0.3);
        let h = build_h1_full(n_max, j, th, ph).unwrap();
        let l = h.layout().clone();
        for n in 0..n_max {
            let row = l.flat_index(&[n + 1, 0]);
            let col = l.flat_index(&[n, 1]);
            let expect = cis(-ph) * (j * (th / 2.0).cos() * ((n + 1) as f64).sqrt());
            assert!((h.matrix()[(row, col)] - expect).norm() < 1e-15);
        }
        assert!(h.hermiticity_error() == 0.0);
    }

    #[test]
    fn operating_point() {
        assert!((operating_amplitude() / TAU - 4847.30853).abs() < 1e-4);
        assert!((operating_theta() - 1.0454569880).abs() < 1e-9);
    }

    #[test]
    fn lab_frame_bookkeeping() {
        let mut p = LabFrameParams {
            eta: LAMB_DICKE,
            omega_ion: 10.0,
            omega_vib: 1.0,
            omega_laser: 9.0,
            omega_drive: 1.0,
            omega0: 2.0,
            epsilon: 0.1,
            laser_phase: 0.0,
            resonant: true,
        };
        assert!(p.validate().is_ok());
        assert!((p.effective_coupling() - 0.088).abs() < 1e-15);
        p.omega_drive = 1.5;
        assert!(p.validate().is_err());
        p.resonant = false;
        p.eta = 0.0;
        assert!(p.validate().is_err());
    }
}
