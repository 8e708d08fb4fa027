use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{GateMetadata, SynthesizedGate};
use crate::error::{Error, Result};
use crate::open_system::{default_step, gate_fidelity_under_noise, ErrorModel, NoiseRates, RateUnits};

/// Rectangular `(α, γ)` grid. Both axes strictly increasing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    alphas: Vec<f64>,
    gammas_hz: Vec<f64>,
}

fn check_axis(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidParameter(format!("{name} axis is empty")));
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} axis has non-finite values")));
    }
    if v.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(format!("{name} axis must be strictly increasing")));
    }
    Ok(())
}

/// `steps` evenly spaced points from `min` to `max`; one step requires `min == max`.
pub fn linspace(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    match steps {
        0 => Err(Error::InvalidParameter("an axis needs at least one step".into())),
        1 if min == max => Ok(vec![min]),
        1 => Err(Error::InvalidParameter(format!(
            "a single-step axis needs min == max, got [{min}, {max}]"
        ))),
        _ => {
            let span = max - min;
            let last = (steps - 1) as f64;
            Ok((0..steps).map(|k| min + span * (k as f64) / last).collect())
        }
    }
}

impl SweepGrid {
    pub fn new(alphas: Vec<f64>, gammas_hz: Vec<f64>) -> Result<Self> {
        check_axis("α", &alphas)?;
        check_axis("γ", &gammas_hz)?;
        if alphas[0] < -1.0 {
            return Err(Error::InvalidParameter("α below −1 reverses the drive".into()));
        }
        if gammas_hz[0] < 0.0 {
            return Err(Error::InvalidParameter("γ must be non-negative".into()));
        }
        Ok(Self { alphas, gammas_hz })
    }

    pub fn linear(alpha: (f64, f64, usize), gamma_hz: (f64, f64, usize)) -> Result<Self> {
        Self::new(
            linspace(alpha.0, alpha.1, alpha.2)?,
            linspace(gamma_hz.0, gamma_hz.1, gamma_hz.2)?,
        )
    }

    /// 41 × 41 over α ∈ [−0.2, 0.2], γ ∈ [0, 100] Hz.
    pub fn standard() -> Self {
        Self::linear((-0.2, 0.2, 41), (0.0, 100.0, 41)).expect("static grid")
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn gammas_hz(&self) -> &[f64] {
        &self.gammas_hz
    }

    pub fn len(&self) -> usize {
        self.alphas.len() * self.gammas_hz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in α-outer, γ-inner order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.alphas
            .iter()
            .flat_map(|&a| self.gammas_hz.iter().map(move |&g| (a, g)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSettings {
    pub rate_units: RateUnits,
    /// Fixed step for every point; `None` picks one from the grid's stiffest corner.
    pub dt: Option<f64>,
    /// Worker threads; 0 lets rayon decide.
    pub workers: usize,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            rate_units: RateUnits::default(),
            dt: None,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRow {
    pub alpha: f64,
    pub gamma_hz: f64,
    pub fidelity: f64,
    pub per_state: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceMetadata {
    pub gate: GateMetadata,
    pub alpha_count: usize,
    pub gamma_count: usize,
    pub dt: f64,
    pub integrator: String,
    pub rate_units: RateUnits,
    pub inputs: usize,
    pub code_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceTable {
    pub rows: Vec<SurfaceRow>,
    pub metadata: SurfaceMetadata,
}

impl SurfaceTable {
    /// Row at grid indices `(i_alpha, i_gamma)`.
    pub fn at(&self, i_alpha: usize, i_gamma: usize) -> &SurfaceRow {
        &self.rows[i_alpha * self.metadata.gamma_count + i_gamma]
    }

    pub fn alphas(&self) -> Vec<f64> {
        (0..self.metadata.alpha_count).map(|i| self.at(i, 0).alpha).collect()
    }

    pub fn gammas_hz(&self) -> Vec<f64> {
        (0..self.metadata.gamma_count).map(|j| self.at(0, j).gamma_hz).collect()
    }
}

fn sweep_step(gate: &SynthesizedGate, grid: &SweepGrid, units: RateUnits) -> Result<f64> {
    let rates = NoiseRates::tied_hz(*grid.gammas_hz.last().expect("non-empty"), units)?;
    let mut dt = f64::INFINITY;
    for alpha in [grid.alphas[0], *grid.alphas.last().expect("non-empty")] {
        dt = dt.min(default_step(&gate.schedule, &rates, ErrorModel::new(alpha)?)?);
    }
    Ok(dt)
}

/// Fidelity at every grid point with `κ = γ₋ = γ_z = γ`.
///
/// One step size is used across the grid so that each row depends only on
/// its own `(α, γ)`, whatever the evaluation order.
pub fn sweep_fidelity(gate: &SynthesizedGate, grid: &SweepGrid, settings: &SweepSettings) -> Result<SurfaceTable> {
    let dt = match settings.dt {
        Some(dt) => dt,
        None => sweep_step(gate, grid, settings.rate_units)?,
    };
    let eval = |&(alpha, gamma_hz): &(f64, f64)| -> Result<SurfaceRow> {
        let run = || -> Result<SurfaceRow> {
            let rates = NoiseRates::tied_hz(gamma_hz, settings.rate_units)?;
            let report = gate_fidelity_under_noise(
                &gate.schedule,
                &rates,
                ErrorModel::new(alpha)?,
                &gate.inputs,
                Some(dt),
            )?;
            Ok(SurfaceRow {
                alpha,
                gamma_hz,
                fidelity: report.mean,
                per_state: report.per_state,
            })
        };
        run().map_err(|e| Error::GridPoint {
            alpha,
            gamma_hz,
            source: Box::new(e),
        })
    };
    let points = grid.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let rows = pool.install(|| points.par_iter().map(eval).collect::<Result<Vec<_>>>())?;
    Ok(SurfaceTable {
        rows,
        metadata: SurfaceMetadata {
            gate: gate.metadata.clone(),
            alpha_count: grid.alphas.len(),
            gamma_count: grid.gammas_hz.len(),
            dt,
            integrator: "rk4-fixed-step".into(),
            rate_units: settings.rate_units,
            inputs: gate.inputs.len(),
            code_version: env!("CARGO_PKG_VERSION").into(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let v = linspace(-0.2, 0.2, 41).unwrap();
        assert_eq!(v.len(), 41);
        assert_eq!(v[0], -0.2);
        assert_eq!(v[40], 0.2);
        assert!(v[20].abs() < 1e-17);
        assert_eq!(linspace(0.0, 0.0, 1).unwrap(), vec![0.0]);
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(linspace(0.0, 1.0, 0).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(SweepGrid::new(vec![0.1, 0.1], vec![0.0]).is_err());
        assert!(SweepGrid::new(vec![0.2, 0.1], vec![0.0]).is_err());
        assert!(SweepGrid::new(vec![0.0], vec![-1.0]).is_err());
        assert!(SweepGrid::new(vec![], vec![0.0]).is_err());
        let g = SweepGrid::standard();
        assert_eq!(g.len(), 1681);
        assert_eq!(g.points()[1], (-0.2, 2.5));
    }
}
