//! How much population leaves the {0, 1} phonon subspace once the truncated
//! Fock space replaces the four-level model, for both gate families.

use std::f64::consts::FRAC_PI_2;

use nhqc_ion::single::{leakage_probe, operating_amplitude, phase_gate, y_rotation_gate};
use nhqc_ion::two::{full_two_ion_unitary, TwoIonDrive, OPERATING_OMEGA2};

fn main() -> nhqc_ion::Result<()> {
    let j = operating_amplitude();
    let gates = [
        ("ry", y_rotation_gate(1.68213734113586, 1, 0, j)?),
        ("phase", phase_gate(FRAC_PI_2, 1, 0, j)?),
    ];
    for (name, gate) in &gates {
        for n_max in [2, 4, 8] {
            let r = leakage_probe(gate, n_max)?;
            println!(
                "{name:>5} n_max = {n_max}: leakage {:.3e}, with 2 n_max {:.3e}, converged {}",
                r.leakage, r.leakage_doubled, r.converged
            );
        }
    }

    for vartheta in [FRAC_PI_2, std::f64::consts::PI] {
        let drive = TwoIonDrive::with_relative_phase(OPERATING_OMEGA2, vartheta, 0.0, FRAC_PI_2)?;
        let r = full_two_ion_unitary(&drive, 3, 1e-6)?;
        println!(
            "two ions, vartheta = {vartheta:.4}: max leakage {:.2e}, distance to diag(1,1,1,-e^ichi) {:.3}",
            r.leakage.iter().cloned().fold(0.0, f64::max), r.deviation_from_claim
        );
    }
    Ok(())
}
