use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{GateKind, GateParams, SweepGrid, SweepSettings};
use crate::open_system::{ErrorModel, NoiseRates, RateUnits};

/// Noise rates in Hz. Unset channels fall back to `gamma_hz`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseConfig {
    pub gamma_hz: f64,
    pub kappa_hz: Option<f64>,
    pub gamma_minus_hz: Option<f64>,
    pub gamma_z_hz: Option<f64>,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self {
            gamma_hz: 0.0,
            kappa_hz: None,
            gamma_minus_hz: None,
            gamma_z_hz: None,
        }
    }
}

impl NoiseConfig {
    pub fn rates(&self, units: RateUnits) -> Result<NoiseRates> {
        let pick = |v: Option<f64>| units.to_coefficient(v.unwrap_or(self.gamma_hz));
        NoiseRates::new(pick(self.kappa_hz), pick(self.gamma_minus_hz), pick(self.gamma_z_hz))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    pub gamma_min_hz: f64,
    pub gamma_max_hz: f64,
    pub gamma_steps: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            alpha_min: -0.2,
            alpha_max: 0.2,
            alpha_steps: 41,
            gamma_min_hz: 0.0,
            gamma_max_hz: 100.0,
            gamma_steps: 41,
        }
    }
}

impl GridConfig {
    pub fn grid(&self) -> Result<SweepGrid> {
        SweepGrid::linear(
            (self.alpha_min, self.alpha_max, self.alpha_steps),
            (self.gamma_min_hz, self.gamma_max_hz, self.gamma_steps),
        )
    }
}

/// Complete description of a run. Serialized form is stable: writing,
/// reading and writing again yields the same bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub gate: GateParams,
    pub alpha: f64,
    pub noise: NoiseConfig,
    pub grid: GridConfig,
    /// Integrator step in seconds; `null` chooses one from the fastest frequency.
    pub dt: Option<f64>,
    pub rate_units: RateUnits,
    /// Sweep worker threads, 0 for one per core.
    pub workers: usize,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            gate: GateParams::default(),
            alpha: 0.0,
            noise: NoiseConfig::default(),
            grid: GridConfig::default(),
            dt: None,
            rate_units: RateUnits::default(),
            workers: 0,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text, &path.display().to_string())
    }

    pub fn from_json(text: &str, context: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json {
            context: context.into(),
            source: e,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes") + "\n"
    }

    pub fn error_model(&self) -> Result<ErrorModel> {
        ErrorModel::new(self.alpha)
    }

    pub fn rates(&self) -> Result<NoiseRates> {
        self.noise.rates(self.rate_units)
    }

    pub fn sweep_settings(&self) -> SweepSettings {
        SweepSettings {
            rate_units: self.rate_units,
            dt: self.dt,
            workers: self.workers,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum UnitsArg {
    /// Use a rate quoted in Hz directly as s⁻¹.
    Angular,
    /// Multiply a rate quoted in Hz by 2π.
    TwoPi,
}

/// Flags shared by every subcommand. Anything given here overrides the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// JSON run configuration to start from.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long)]
    pub print_config: bool,

    /// ry, phase, cphase or cphase-composite.
    #[arg(long, value_parser = parse_gate)]
    pub gate: Option<GateKind>,
    /// Y-rotation angle (rad).
    #[arg(long)]
    pub theta: Option<f64>,
    /// Phase-gate phase difference Δφ (rad).
    #[arg(long)]
    pub dphi: Option<f64>,
    /// Controlled-phase parameter χ (rad).
    #[arg(long)]
    pub chi: Option<f64>,
    /// Two-ion mixing angle ϑ (rad).
    #[arg(long)]
    pub vartheta: Option<f64>,
    /// Two-ion relative laser phase (rad).
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Single-ion coupling J as 2π × value kHz.
    #[arg(long, value_name = "KHZ")]
    pub j_khz: Option<f64>,
    /// Two-ion coupling Ω as 2π × value kHz.
    #[arg(long, value_name = "KHZ")]
    pub omega_khz: Option<f64>,
    /// Phonon cutoff of the two-ion simulation.
    #[arg(long)]
    pub phonon_cutoff: Option<usize>,

    /// Fractional amplitude error α.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Common decay rate γ (Hz) for κ, γ₋, γ_z.
    #[arg(long)]
    pub gamma_hz: Option<f64>,
    #[arg(long)]
    pub kappa_hz: Option<f64>,
    #[arg(long)]
    pub gamma_minus_hz: Option<f64>,
    #[arg(long)]
    pub gamma_z_hz: Option<f64>,
    #[arg(long, value_enum)]
    pub rate_units: Option<UnitsArg>,

    #[arg(long, allow_hyphen_values = true)]
    pub alpha_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_max: Option<f64>,
    #[arg(long)]
    pub alpha_steps: Option<usize>,
    #[arg(long)]
    pub gamma_min: Option<f64>,
    #[arg(long)]
    pub gamma_max: Option<f64>,
    #[arg(long)]
    pub gamma_steps: Option<usize>,

    /// Integrator step (s).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Sweep worker threads.
    #[arg(long, env = "NHQC_WORKERS")]
    pub workers: Option<usize>,
    /// Directory for output files.
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
}

fn parse_gate(s: &str) -> std::result::Result<GateKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn khz(v: f64) -> f64 {
    TAU * v * 1e3
}

impl Overrides {
    /// Config file (or defaults) with every given flag applied on top.
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($field:expr, $flag:expr) => {
                if let Some(v) = $flag {
                    $field = v;
                }
            };
            ($field:expr, $flag:expr, $map:expr) => {
                if let Some(v) = $flag {
                    $field = $map(v);
                }
            };
        }
        set!(c.gate.gate, self.gate);
        set!(c.gate.theta_target, self.theta, Some);
        set!(c.gate.delta_phi, self.dphi);
        set!(c.gate.chi, self.chi);
        set!(c.gate.vartheta, self.vartheta);
        set!(c.gate.phi, self.phi);
        set!(c.gate.m, self.m);
        set!(c.gate.n, self.n);
        set!(c.gate.amplitude, self.j_khz, khz);
        set!(c.gate.omega, self.omega_khz, khz);
        set!(c.gate.two_ion_cutoff, self.phonon_cutoff);
        set!(c.alpha, self.alpha);
        set!(c.noise.gamma_hz, self.gamma_hz);
        set!(c.noise.kappa_hz, self.kappa_hz, Some);
        set!(c.noise.gamma_minus_hz, self.gamma_minus_hz, Some);
        set!(c.noise.gamma_z_hz, self.gamma_z_hz, Some);
        set!(c.rate_units, self.rate_units, |u| match u {
            UnitsArg::Angular => RateUnits::AngularEqualsHz,
            UnitsArg::TwoPi => RateUnits::TwoPiHz,
        });
        set!(c.grid.alpha_min, self.alpha_min);
        set!(c.grid.alpha_max, self.alpha_max);
        set!(c.grid.alpha_steps, self.alpha_steps);
        set!(c.grid.gamma_min_hz, self.gamma_min);
        set!(c.grid.gamma_max_hz, self.gamma_max);
        set!(c.grid.gamma_steps, self.gamma_steps);
        set!(c.dt, self.dt, Some);
        set!(c.workers, self.workers);
        set!(c.out_dir, self.out_dir.clone());
        Ok(c)
    }
}
