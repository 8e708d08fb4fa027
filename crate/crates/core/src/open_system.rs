//! Lindblad dynamics of the driven ion-phonon system.
//!
//! The master equation is
//!
//! ```text
//! dρ/dt = −i[H, ρ] + (κ/2) 𝓛(a) + (γ₋/2) Σⱼ 𝓛(σⱼ) + (γ_z/2) Σⱼ 𝓛(σ_z,ⱼ)
//! 𝓛(A) = 2AρA† − A†Aρ − ρA†A
//! ```
//!
//! with `σ = |0⟩⟨1|` and `σ_z = |1⟩⟨1| − |0⟩⟨0|`, so pure dephasing damps
//! coherences as `e^{−2γ_z t}`. Collapse operators are picked from the layout
//! labels: `phonon` gets `a`, every `ion*` factor gets `σ` and `σ_z`.
//!
//! Rates enter the equation as plain numbers in s⁻¹. [`RateUnits`] controls how
//! a figure quoted in Hz is turned into that number; the default uses it as is.
//!
//! Integration is classical fixed-step RK4 on the density matrix, with the
//! Hamiltonian and jump operators stored as sparse triplets.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::operator::c;
use crate::quantum::{
    expm_hermitian, min_eigenvalue, ops, state_fidelity, CMatrix, CVector, HilbertLayout,
    Operator, QuantumState, StateForm, C64, DRESSED_B, ION, ION1, ION2, PHONON,
};
use crate::single::{build_h1_full, SingleQubitGate};
use crate::two::{build_h2, build_h2_full, TwoIonDrive};

/// Largest allowed trace drift at the end of a schedule piece.
pub const TRACE_DRIFT_TOL: f64 = 1e-8;
/// Most negative eigenvalue tolerated at the end of a schedule piece.
pub const POSITIVITY_FLOOR: f64 = -1e-7;
/// Default step is `1 / (DEFAULT_STEPS_PER_RAD · ω_max)`.
pub const DEFAULT_STEPS_PER_RAD: f64 = 100.0;
/// Steps coarser than `1 / (MIN_STEPS_PER_RAD · ω_max)` are refused.
pub const MIN_STEPS_PER_RAD: f64 = 50.0;

/// How a rate quoted in Hz maps to the coefficient used in the master equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateUnits {
    /// The Hz figure is used directly as the coefficient (γ = 100 Hz → 100 s⁻¹).
    #[default]
    AngularEqualsHz,
    /// The Hz figure is multiplied by 2π.
    TwoPiHz,
}

impl RateUnits {
    pub fn to_coefficient(self, hz: f64) -> f64 {
        match self {
            RateUnits::AngularEqualsHz => hz,
            RateUnits::TwoPiHz => TAU * hz,
        }
    }
}

/// Dissipation coefficients in s⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseRates {
    pub kappa: f64,
    pub gamma_minus: f64,
    pub gamma_z: f64,
}

impl NoiseRates {
    pub fn new(kappa: f64, gamma_minus: f64, gamma_z: f64) -> Result<Self> {
        let r = Self {
            kappa,
            gamma_minus,
            gamma_z,
        };
        r.validate()?;
        Ok(r)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `κ = γ₋ = γ_z = γ`.
    pub fn tied(gamma: f64) -> Result<Self> {
        Self::new(gamma, gamma, gamma)
    }

    pub fn tied_hz(gamma_hz: f64, units: RateUnits) -> Result<Self> {
        Self::tied(units.to_coefficient(gamma_hz))
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("κ", self.kappa), ("γ₋", self.gamma_minus), ("γ_z", self.gamma_z)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "rate {name} must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.kappa == 0.0 && self.gamma_minus == 0.0 && self.gamma_z == 0.0
    }
}

/// Fractional amplitude error: every coupling `J` or `Ω` becomes `(1 + α)` times nominal.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ErrorModel {
    pub alpha: f64,
}

impl ErrorModel {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= -1.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "amplitude error α must be finite and ≥ −1, got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    pub fn none() -> Self {
        Self::default()
    }

    pub fn factor(&self) -> f64 {
        1.0 + self.alpha
    }
}

/// Laser configuration held during one piece of a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Drive {
    /// Sideband plus carrier drive of one ion, amplitude `J`, mixing angle `θ`, phase `φ`.
    SingleIon { amplitude: f64, theta: f64, phi: f64 },
    /// Red-sideband drive of both ions.
    TwoIon {
        omega: f64,
        vartheta: f64,
        phi1: f64,
        phi2: f64,
    },
    Idle,
}

impl Drive {
    fn scaled(self, factor: f64) -> Self {
        match self {
            Drive::SingleIon { amplitude, theta, phi } => Drive::SingleIon {
                amplitude: amplitude * factor,
                theta,
                phi,
            },
            Drive::TwoIon {
                omega,
                vartheta,
                phi1,
                phi2,
            } => Drive::TwoIon {
                omega: omega * factor,
                vartheta,
                phi1,
                phi2,
            },
            Drive::Idle => Drive::Idle,
        }
    }

    /// Hamiltonian of this drive on `layout`.
    pub fn hamiltonian(&self, layout: &HilbertLayout) -> Result<Operator> {
        let kind = LayoutKind::of(layout)?;
        match (*self, kind) {
            (Drive::Idle, _) => Ok(Operator::zeros(layout)),
            (Drive::SingleIon { amplitude, theta, phi }, LayoutKind::PhononIon(n)) => {
                build_h1_full(n, amplitude, theta, phi)
            }
            (
                Drive::TwoIon {
                    omega,
                    vartheta,
                    phi1,
                    phi2,
                },
                kind @ (LayoutKind::PhononTwoIons(_) | LayoutKind::Dressed),
            ) => {
                if omega == 0.0 {
                    return Ok(Operator::zeros(layout));
                }
                let drive = TwoIonDrive::new(omega.abs(), vartheta, phi1, phi2, 0.0)?;
                let h = match kind {
                    LayoutKind::PhononTwoIons(n) => build_h2_full(&drive, phi1, phi2, n)?,
                    _ => build_h2(&drive),
                };
                Ok(if omega < 0.0 { h.scaled(c(-1.0, 0.0)) } else { h })
            }
            (drive, _) => Err(Error::LayoutMismatch(format!(
                "{drive:?} cannot act on layout {layout}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum LayoutKind {
    PhononIon(usize),
    PhononTwoIons(usize),
    Dressed,
}

impl LayoutKind {
    fn of(layout: &HilbertLayout) -> Result<Self> {
        let labels: Vec<&str> = layout.factors().iter().map(|f| f.label.as_str()).collect();
        let phonon_cut = || layout.dim_of(PHONON).map(|d| d - 1).unwrap_or(0);
        match labels.as_slice() {
            [PHONON, ION] if layout.dim_of(ION) == Some(2) => Ok(Self::PhononIon(phonon_cut())),
            [PHONON, ION1, ION2] if layout.dim_of(ION1) == Some(2) && layout.dim_of(ION2) == Some(2) => {
                Ok(Self::PhononTwoIons(phonon_cut()))
            }
            [DRESSED_B] if layout.total_dim() == 3 => Ok(Self::Dressed),
            _ => Err(Error::LayoutMismatch(format!(
                "no drive model for layout {layout}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub drive: Drive,
    /// Seconds.
    pub duration: f64,
}

/// A piecewise-constant pulse sequence on one layout.
///
/// `ideal_gate` is the noise-free, error-free propagator of the whole
/// sequence, computed by exact exponentiation when the schedule is built.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScheduleRepr")]
pub struct Schedule {
    layout: HilbertLayout,
    pieces: Vec<Piece>,
    ideal_gate: Operator,
}

#[derive(Deserialize)]
struct ScheduleRepr {
    layout: HilbertLayout,
    pieces: Vec<Piece>,
    ideal_gate: Option<Operator>,
}

impl TryFrom<ScheduleRepr> for Schedule {
    type Error = Error;

    fn try_from(r: ScheduleRepr) -> Result<Self> {
        let s = Schedule::new(r.layout, r.pieces)?;
        if let Some(stored) = r.ideal_gate {
            let dev = if stored.layout() == s.ideal_gate.layout() {
                stored.max_abs_diff(&s.ideal_gate)
            } else {
                f64::INFINITY
            };
            if dev > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "stored ideal gate disagrees with the pieces (deviation {dev:.3e})"
                )));
            }
        }
        Ok(s)
    }
}

impl Schedule {
    pub fn new(layout: HilbertLayout, pieces: Vec<Piece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidParameter("schedule has no pieces".into()));
        }
        let mut u = Operator::identity(&layout);
        for (k, p) in pieces.iter().enumerate() {
            if !(p.duration > 0.0) || !p.duration.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "piece {k} has non-positive duration {}",
                    p.duration
                )));
            }
            let h = p.drive.hamiltonian(&layout)?;
            u = expm_hermitian(&h, p.duration)?.compose(&u)?;
        }
        Ok(Self {
            layout,
            pieces,
            ideal_gate: u,
        })
    }

    /// Two segments of a single-qubit gate on phonon{0..n_max} ⊗ ion.
    pub fn single_qubit(gate: &SingleQubitGate, n_max: usize) -> Result<Self> {
        let pieces = [gate.seg1, gate.seg2]
            .iter()
            .map(|s| Piece {
                drive: Drive::SingleIon {
                    amplitude: s.amplitude,
                    theta: s.theta,
                    phi: s.phi,
                },
                duration: s.duration,
            })
            .collect();
        Self::new(HilbertLayout::phonon_ion(n_max)?, pieces)
    }

    /// `repetitions` back-to-back runs of the two-segment protocol.
    /// `n_max = None` uses the three-level single-excitation model.
    pub fn two_qubit(drive: &TwoIonDrive, repetitions: usize, n_max: Option<usize>) -> Result<Self> {
        if repetitions == 0 {
            return Err(Error::InvalidParameter("need at least one repetition".into()));
        }
        let layout = match n_max {
            Some(n) => HilbertLayout::phonon_two_ions(n)?,
            None => HilbertLayout::dressed_b(),
        };
        let duration = drive.segment_duration(crate::two::SEGMENT_AREA);
        let pieces = (0..repetitions)
            .flat_map(|_| 0..2)
            .map(|k| {
                let (phi1, phi2) = drive.segment_phases(k);
                Piece {
                    drive: Drive::TwoIon {
                        omega: drive.omega,
                        vartheta: drive.vartheta,
                        phi1,
                        phi2,
                    },
                    duration,
                }
            })
            .collect();
        Self::new(layout, pieces)
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn ideal_gate(&self) -> &Operator {
        &self.ideal_gate
    }

    pub fn total_duration(&self) -> f64 {
        self.pieces.iter().map(|p| p.duration).sum()
    }
}

/// Multiplies every amplitude by `1 + α`. Phases, durations and the ideal gate stay put.
pub fn apply_systematic_error(schedule: &Schedule, error: ErrorModel) -> Schedule {
    let f = error.factor();
    Schedule {
        layout: schedule.layout.clone(),
        pieces: schedule
            .pieces
            .iter()
            .map(|p| Piece {
                drive: p.drive.scaled(f),
                duration: p.duration,
            })
            .collect(),
        ideal_gate: schedule.ideal_gate.clone(),
    }
}

/// `(rate, A)` pairs for the dissipators present on `layout`, with the factor
/// `½` of the master equation already folded into `rate`.
fn collapse_operators(layout: &HilbertLayout, rates: &NoiseRates) -> Result<Vec<(f64, CMatrix)>> {
    rates.validate()?;
    let mut out = Vec::new();
    let ions: Vec<&str> = layout
        .factors()
        .iter()
        .map(|f| f.label.as_str())
        .filter(|l| l.starts_with(ION))
        .collect();
    if rates.kappa > 0.0 {
        let dim = layout.dim_of(PHONON).ok_or_else(|| {
            Error::LayoutMismatch(format!("κ > 0 but layout {layout} has no phonon factor"))
        })?;
        let a = Operator::embed(layout, PHONON, &ops::annihilation(dim))?;
        out.push((rates.kappa / 2.0, a.into_matrix()));
    }
    for (rate, local) in [
        (rates.gamma_minus, ops::sigma_minus()),
        (rates.gamma_z, ops::sigma_z()),
    ] {
        if rate == 0.0 {
            continue;
        }
        if ions.is_empty() {
            return Err(Error::LayoutMismatch(format!(
                "ion rates are nonzero but layout {layout} has no ion factor"
            )));
        }
        for ion in &ions {
            out.push((rate / 2.0, Operator::embed(layout, ion, &local)?.into_matrix()));
        }
    }
    Ok(out)
}

fn density_of(rho: &QuantumState) -> Result<&CMatrix> {
    match rho.form() {
        StateForm::Density(m) => Ok(m),
        StateForm::Pure(_) => Err(Error::InvalidState(
            "the master equation acts on density-form states".into(),
        )),
    }
}

/// Right-hand side of the master equation, evaluated densely.
pub fn lindblad_rhs(rho: &QuantumState, h: &Operator, rates: &NoiseRates) -> Result<CMatrix> {
    if rho.layout() != h.layout() {
        return Err(Error::LayoutMismatch(format!(
            "state on {} but Hamiltonian on {}",
            rho.layout(),
            h.layout()
        )));
    }
    let r = density_of(rho)?;
    let hm = h.matrix();
    let minus_i = c(0.0, -1.0);
    let mut out = (hm * r - r * hm) * minus_i;
    for (half_rate, a) in collapse_operators(rho.layout(), rates)? {
        let ad = a.adjoint();
        let ada = &ad * &a;
        let l = (&a * r * &ad) * c(2.0, 0.0) - &ada * r - r * &ada;
        out += l * c(half_rate, 0.0);
    }
    Ok(out)
}

type Triplets = Vec<(usize, usize, C64)>;

fn triplets(m: &CMatrix) -> Triplets {
    let mut t = Vec::new();
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            if z != c(0.0, 0.0) {
                t.push((i, j, z));
            }
        }
    }
    t
}

/// Sparse generator: `ρ̇ = −i(H_eff ρ − ρ H_eff†) + Σ r A ρ A†` with
/// `H_eff = H − (i/2) Σ r A†A`.
struct Liouvillian {
    heff: Triplets,
    jumps: Vec<(f64, Triplets)>,
}

impl Liouvillian {
    fn new(h: &CMatrix, collapse: &[(f64, CMatrix)]) -> Self {
        let mut heff = h.clone();
        let mut jumps = Vec::new();
        for (half_rate, a) in collapse {
            let rate = 2.0 * half_rate;
            heff -= (a.adjoint() * a) * c(0.0, rate / 2.0);
            jumps.push((rate, triplets(a)));
        }
        Self {
            heff: triplets(&heff),
            jumps,
        }
    }

    fn apply(&self, rho: &CMatrix, out: &mut CMatrix) {
        let dim = rho.nrows();
        out.fill(c(0.0, 0.0));
        for &(i, j, h) in &self.heff {
            let mh = c(h.im, -h.re); // −i·h
            let hc = c(h.im, h.re); // i·conj(h)
            for k in 0..dim {
                out[(i, k)] += mh * rho[(j, k)];
                out[(k, i)] += rho[(k, j)] * hc;
            }
        }
        for (rate, a) in &self.jumps {
            for &(ia, ja, x) in a {
                let xr = x * *rate;
                for &(ib, jb, y) in a {
                    out[(ia, ib)] += xr * rho[(ja, jb)] * y.conj();
                }
            }
        }
    }
}

/// `ω_max`: spectral radius of the error-scaled Hamiltonians plus the total
/// decay rate of the dissipators.
pub fn max_frequency(schedule: &Schedule, rates: &NoiseRates, error: ErrorModel) -> Result<f64> {
    let mut w = 0.0f64;
    for p in &schedule.pieces {
        let h = p.drive.scaled(error.factor()).hamiltonian(&schedule.layout)?;
        w = w.max(h.spectral_radius());
    }
    let decay: f64 = collapse_operators(&schedule.layout, rates)?
        .iter()
        .map(|(half_rate, a)| {
            let ada = a.adjoint() * a;
            2.0 * half_rate * (0..ada.nrows()).map(|i| ada[(i, i)].re).fold(0.0, f64::max)
        })
        .sum();
    Ok(w + decay)
}

/// Default step `1 / (100 ω_max)`.
pub fn default_step(schedule: &Schedule, rates: &NoiseRates, error: ErrorModel) -> Result<f64> {
    let w = max_frequency(schedule, rates, error)?;
    Ok(if w > 0.0 {
        1.0 / (DEFAULT_STEPS_PER_RAD * w)
    } else {
        schedule.total_duration()
    })
}

fn axpy(y: &mut CMatrix, a: f64, x: &CMatrix) {
    for (yi, xi) in y.iter_mut().zip(x.iter()) {
        *yi += xi * a;
    }
}

struct Rk4 {
    k: [CMatrix; 4],
    tmp: CMatrix,
}

impl Rk4 {
    fn new(dim: usize) -> Self {
        let z = CMatrix::zeros(dim, dim);
        Self {
            k: [z.clone(), z.clone(), z.clone(), z.clone()],
            tmp: z,
        }
    }

    fn step(&mut self, l: &Liouvillian, rho: &mut CMatrix, h: f64) {
        let [k1, k2, k3, k4] = &mut self.k;
        l.apply(rho, k1);
        self.tmp.copy_from(rho);
        axpy(&mut self.tmp, h / 2.0, k1);
        l.apply(&self.tmp, k2);
        self.tmp.copy_from(rho);
        axpy(&mut self.tmp, h / 2.0, k2);
        l.apply(&self.tmp, k3);
        self.tmp.copy_from(rho);
        axpy(&mut self.tmp, h, k3);
        l.apply(&self.tmp, k4);
        let w = h / 6.0;
        axpy(rho, w, k1);
        axpy(rho, 2.0 * w, k2);
        axpy(rho, 2.0 * w, k3);
        axpy(rho, w, k4);
        // keep ρ exactly Hermitian
        let dim = rho.nrows();
        for i in 0..dim {
            rho[(i, i)].im = 0.0;
            for j in (i + 1)..dim {
                let avg = (rho[(i, j)] + rho[(j, i)].conj()) * 0.5;
                rho[(i, j)] = avg;
                rho[(j, i)] = avg.conj();
            }
        }
    }
}

/// Propagates `rho0` through the schedule with noise and amplitude error.
///
/// The schedule is given at nominal amplitudes; `error` is applied here.
/// Each piece is cut into `⌈duration / dt⌉` equal RK4 steps.
pub fn integrate_master(
    rho0: &QuantumState,
    schedule: &Schedule,
    rates: &NoiseRates,
    error: ErrorModel,
    dt: f64,
) -> Result<QuantumState> {
    if rho0.layout() != schedule.layout() {
        return Err(Error::LayoutMismatch(format!(
            "initial state on {} but schedule on {}",
            rho0.layout(),
            schedule.layout()
        )));
    }
    let w = max_frequency(schedule, rates, error)?;
    let limit = if w > 0.0 { 1.0 / (MIN_STEPS_PER_RAD * w) } else { f64::INFINITY };
    if !(dt > 0.0) || dt > limit {
        return Err(Error::StepTooLarge { dt, limit });
    }
    let collapse = collapse_operators(&schedule.layout, rates)?;
    let mut rho = rho0.density_matrix();
    let trace0 = rho.trace().re;
    let mut rk = Rk4::new(rho.nrows());
    let mut time = 0.0;
    for p in &schedule.pieces {
        let h = p.drive.scaled(error.factor()).hamiltonian(&schedule.layout)?;
        let l = Liouvillian::new(h.matrix(), &collapse);
        let steps = (p.duration / dt).ceil().max(1.0) as usize;
        let h_step = p.duration / steps as f64;
        for _ in 0..steps {
            rk.step(&l, &mut rho, h_step);
        }
        time += p.duration;
        let drift = (rho.trace().re - trace0).abs();
        if !(drift <= TRACE_DRIFT_TOL) {
            return Err(Error::TraceDrift { drift, time });
        }
        let min_eig = min_eigenvalue(&rho);
        if min_eig < POSITIVITY_FLOOR {
            return Err(Error::NotPositive {
                min_eigenvalue: min_eig,
                time,
            });
        }
    }
    Ok(QuantumState::from_density_unchecked(schedule.layout.clone(), rho))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub mean: f64,
    pub per_state: Vec<f64>,
    pub dt: f64,
}

/// Mean of `√tr(ρ_final ρ_ideal)` over pure `inputs`, where `ρ_ideal` is the
/// input pushed through the schedule's ideal gate.
pub fn gate_fidelity_under_noise(
    schedule: &Schedule,
    rates: &NoiseRates,
    error: ErrorModel,
    inputs: &[QuantumState],
    dt: Option<f64>,
) -> Result<FidelityReport> {
    if inputs.is_empty() {
        return Err(Error::InvalidParameter("no input states given".into()));
    }
    let dt = match dt {
        Some(dt) => dt,
        None => default_step(schedule, rates, error)?,
    };
    let mut per_state = Vec::with_capacity(inputs.len());
    for input in inputs {
        if !input.is_pure_form() {
            return Err(Error::InvalidState("fidelity inputs must be pure".into()));
        }
        let ideal = input.evolve(schedule.ideal_gate())?;
        let noisy = integrate_master(&input.to_density(), schedule, rates, error, dt)?;
        per_state.push(state_fidelity(&noisy, &ideal)?);
    }
    let mean = per_state.iter().sum::<f64>() / per_state.len() as f64;
    Ok(FidelityReport { mean, per_state, dt })
}

fn qubit(a: C64, b: C64) -> CVector {
    CVector::from_vec(vec![a, b]).normalize()
}

/// The six eigenstates of σ_x, σ_y, σ_z.
pub fn axis_states() -> Vec<CVector> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    vec![
        qubit(one, zero),
        qubit(zero, one),
        qubit(one, one),
        qubit(one, -one),
        qubit(one, c(0.0, 1.0)),
        qubit(one, c(0.0, -1.0)),
    ]
}

/// Input states for fidelity averaging with the phonon in vacuum:
/// the six axis states for one ion, `{|0⟩, |+⟩}^⊗2` for two ions.
/// On the single-excitation model the inputs are the three basis states.
pub fn default_inputs(layout: &HilbertLayout) -> Result<Vec<QuantumState>> {
    match LayoutKind::of(layout)? {
        LayoutKind::PhononIon(n) => {
            let vac = CVector::from_fn(n + 1, |i, _| if i == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
            axis_states()
                .into_iter()
                .map(|q| QuantumState::product(layout.clone(), &[vac.clone(), q]))
                .collect()
        }
        LayoutKind::PhononTwoIons(n) => {
            let vac = CVector::from_fn(n + 1, |i, _| if i == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) });
            let axis = axis_states();
            let pair = [axis[0].clone(), axis[2].clone()];
            let mut out = Vec::new();
            for a in &pair {
                for b in &pair {
                    out.push(QuantumState::product(layout.clone(), &[vac.clone(), a.clone(), b.clone()])?);
                }
            }
            Ok(out)
        }
        LayoutKind::Dressed => (0..3).map(|i| QuantumState::basis(layout.clone(), i)).collect(),
    }
}
