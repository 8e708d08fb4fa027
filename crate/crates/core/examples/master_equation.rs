//! Integrates the Lindblad equation for the phase gate and prints how the
//! fidelity of each input falls with decay rate and amplitude error.

use nhqc_ion::experiments::{synthesize, GateKind, GateParams};
use nhqc_ion::open_system::{gate_fidelity_under_noise, ErrorModel, NoiseRates, RateUnits};

fn main() -> nhqc_ion::Result<()> {
    let g = synthesize(&GateParams::for_gate(GateKind::Phase))?;
    println!("schedule on {} lasting {:.1} us", g.schedule.layout(), g.schedule.total_duration() * 1e6);
    for (alpha, gamma_hz) in [(0.0, 0.0), (0.0, 100.0), (0.1, 0.0), (0.1, 100.0)] {
        let rates = NoiseRates::tied_hz(gamma_hz, RateUnits::AngularEqualsHz)?;
        let r = gate_fidelity_under_noise(&g.schedule, &rates, ErrorModel::new(alpha)?, &g.inputs, None)?;
        let per: Vec<String> = r.per_state.iter().map(|f| format!("{f:.5}")).collect();
        println!("alpha {alpha:>4}, gamma {gamma_hz:>5} Hz: F = {:.6}  [{}]  dt = {:.2e}", r.mean, per.join(" "), r.dt);
    }
    Ok(())
}
