//! Gate synthesis into schedules, fidelity sweeps over `(α, γ)`, file
//! exporters and the self-check report.

mod export;
mod plot;
mod sweep;
mod verify;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::open_system::{default_inputs, Schedule};
use crate::quantum::QuantumState;
use crate::single::{
    operating_amplitude, phase_gate, solve_segment_params, y_rotation_gate, PType, SingleQubitGate,
};
use crate::two::{TwoIonDrive, OPERATING_OMEGA2};

pub use export::{export_surface, metadata_path, read_surface_csv, write_surface_csv};
pub use plot::{emit_plot, PlotKind};
pub use sweep::{sweep_fidelity, SurfaceMetadata, SurfaceRow, SurfaceTable, SweepGrid, SweepSettings};
pub use verify::{verify_all, Check, CheckStatus, VerifyOptions, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateKind {
    Ry,
    Phase,
    Cphase,
    CphaseComposite,
}

impl GateKind {
    pub const ALL: [GateKind; 4] = [GateKind::Ry, GateKind::Phase, GateKind::Cphase, GateKind::CphaseComposite];

    pub fn as_str(self) -> &'static str {
        match self {
            GateKind::Ry => "ry",
            GateKind::Phase => "phase",
            GateKind::Cphase => "cphase",
            GateKind::CphaseComposite => "cphase-composite",
        }
    }

    pub fn is_two_qubit(self) -> bool {
        matches!(self, GateKind::Cphase | GateKind::CphaseComposite)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateKind::ALL
            .into_iter()
            .find(|g| g.as_str() == s)
            .ok_or_else(|| Error::Parse {
                context: "gate".into(),
                message: format!("unknown gate `{s}` (expected ry, phase, cphase or cphase-composite)"),
            })
    }
}

/// Everything needed to build a gate schedule. Angles in radians, rates in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GateParams {
    pub gate: GateKind,
    /// Y-rotation angle; `None` takes the lattice angle at `(m, n)`.
    pub theta_target: Option<f64>,
    /// A target this close to the lattice angle at `(m, n)` is replaced by it,
    /// so that angles typed with a few decimals still resolve.
    pub theta_tolerance: f64,
    pub delta_phi: f64,
    pub chi: f64,
    pub vartheta: f64,
    /// Relative laser phase `φ₂ − φ₁` of the two-ion drive.
    pub phi: f64,
    pub m: u32,
    pub n: u32,
    /// Single-ion coupling `J`.
    pub amplitude: f64,
    /// Two-ion coupling `Ω`.
    pub omega: f64,
    /// Phonon cutoff of the two-ion simulation space.
    pub two_ion_cutoff: usize,
}

impl Default for GateParams {
    fn default() -> Self {
        Self {
            gate: GateKind::Phase,
            theta_target: None,
            theta_tolerance: 1e-5,
            delta_phi: FRAC_PI_2,
            chi: FRAC_PI_2,
            vartheta: PI,
            phi: 0.0,
            m: 1,
            n: 0,
            amplitude: operating_amplitude(),
            omega: OPERATING_OMEGA2,
            two_ion_cutoff: 2,
        }
    }
}

impl GateParams {
    pub fn for_gate(gate: GateKind) -> Self {
        Self {
            gate,
            ..Self::default()
        }
    }
}

/// Gate-identifying fields written next to every exported table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateMetadata {
    pub gate: GateKind,
    pub theta: Option<f64>,
    pub delta_phi: Option<f64>,
    pub chi: Option<f64>,
    pub vartheta: Option<f64>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub amplitude: f64,
    pub layout: String,
    pub duration: f64,
}

#[derive(Debug, Clone)]
pub struct SynthesizedGate {
    pub params: GateParams,
    pub schedule: Schedule,
    pub inputs: Vec<QuantumState>,
    pub metadata: GateMetadata,
    /// Present for single-qubit gates.
    pub single: Option<SingleQubitGate>,
    /// Present for two-qubit gates.
    pub drive: Option<TwoIonDrive>,
}

fn single_gate(p: &GateParams) -> Result<SingleQubitGate> {
    match p.gate {
        GateKind::Ry => {
            let lattice = solve_segment_params(PType::Identity, p.m, p.n).ok().map(|s| s.theta);
            let target = match (p.theta_target, lattice) {
                (Some(t), Some(l)) if (t - l).abs() <= p.theta_tolerance => l,
                (Some(t), _) => t,
                (None, Some(l)) => l,
                (None, None) => solve_segment_params(PType::Identity, p.m, p.n)?.theta,
            };
            y_rotation_gate(target, p.m, p.n, p.amplitude)
        }
        _ => phase_gate(p.delta_phi, p.m, p.n, p.amplitude),
    }
}

pub fn synthesize(params: &GateParams) -> Result<SynthesizedGate> {
    if params.gate.is_two_qubit() {
        let drive = TwoIonDrive::with_relative_phase(params.omega, params.vartheta, params.phi, params.chi)?;
        let reps = if params.gate == GateKind::CphaseComposite { 2 } else { 1 };
        let schedule = Schedule::two_qubit(&drive, reps, Some(params.two_ion_cutoff))?;
        let inputs = default_inputs(schedule.layout())?;
        let metadata = GateMetadata {
            gate: params.gate,
            theta: None,
            delta_phi: None,
            chi: Some(params.chi),
            vartheta: Some(params.vartheta),
            m: None,
            n: None,
            amplitude: params.omega,
            layout: schedule.layout().to_string(),
            duration: schedule.total_duration(),
        };
        return Ok(SynthesizedGate {
            params: *params,
            schedule,
            inputs,
            metadata,
            single: None,
            drive: Some(drive),
        });
    }
    let gate = single_gate(params)?;
    let schedule = Schedule::single_qubit(&gate, 1)?;
    let inputs = default_inputs(schedule.layout())?;
    let metadata = GateMetadata {
        gate: params.gate,
        theta: Some(gate.seg1.theta),
        delta_phi: (params.gate == GateKind::Phase).then_some(params.delta_phi),
        chi: None,
        vartheta: None,
        m: Some(params.m),
        n: Some(params.n),
        amplitude: params.amplitude,
        layout: schedule.layout().to_string(),
        duration: schedule.total_duration(),
    };
    Ok(SynthesizedGate {
        params: *params,
        schedule,
        inputs,
        metadata,
        single: Some(gate),
        drive: None,
    })
}
