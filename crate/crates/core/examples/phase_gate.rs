//! Phase gates for a few phase differences, compared with
//! `-diag(e^{-i dphi}, e^{i dphi})`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use nhqc_ion::single::{operating_amplitude, phase_gate, phase_matrix};

fn main() -> nhqc_ion::Result<()> {
    for dphi in [FRAC_PI_4, FRAC_PI_2, 1.0, 2.5] {
        let g = phase_gate(dphi, 1, 0, operating_amplitude())?;
        let err = (g.u0 - phase_matrix(dphi)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!(
            "dphi = {dphi:.4}: theta = {:.6}, total {:.1} us, U0 diag = ({:.4}, {:.4}), err {err:.1e}",
            g.seg1.theta,
            g.total_duration() * 1e6,
            g.u0[(0, 0)],
            g.u0[(1, 1)],
        );
    }
    Ok(())
}
