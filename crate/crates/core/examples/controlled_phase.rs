//! Two-ion controlled phase: the dressed-state picture, the two-segment loop
//! on the single-excitation subspace and the composite (doubled) gate.

use std::f64::consts::{FRAC_PI_2, PI};

use nhqc_ion::two::{
    closed_form_u2, composite_gate, dressed_states, entangling_phase, two_segment_unitary,
    TwoIonDrive, HALF_PI_AREAS, OPERATING_OMEGA2,
};

fn main() -> nhqc_ion::Result<()> {
    let chi = FRAC_PI_2;
    for vartheta in [PI / 3.0, FRAC_PI_2, PI] {
        let drive = TwoIonDrive::with_relative_phase(OPERATING_OMEGA2, vartheta, 0.3, chi)?;
        let pair = dressed_states(vartheta, drive.relative_phase());
        let u = two_segment_unitary(&drive, HALF_PI_AREAS)?;
        let dev = u.max_abs_diff(&closed_form_u2(&drive));
        let dark = pair.dark.evolve(&u)?;
        let overlap = pair.dark.as_vector().unwrap().dotc(dark.as_vector().unwrap());
        println!(
            "vartheta = {vartheta:.4}: Omega1 = {:.1}, Omega2 = {:.1}, loop vs closed form {dev:.1e}, <d|U|d> = {overlap:.6}",
            drive.omega1(),
            drive.omega2()
        );
    }
    let g = composite_gate(chi);
    println!("composite gate diagonal: {:?}", (0..4).map(|i| g.matrix()[(i, i)]).collect::<Vec<_>>());
    println!("entangling phase of the composite gate = {:.6}", entangling_phase(g.matrix()));
    Ok(())
}
