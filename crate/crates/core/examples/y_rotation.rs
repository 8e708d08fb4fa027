//! Builds the Y rotation at the (m, n) = (1, 0) lattice angle and checks it
//! against the rotation matrix, then shows how an off-lattice angle is rejected.

use nhqc_ion::single::{compose_loop, operating_amplitude, ry_matrix, y_rotation_gate};

fn main() -> nhqc_ion::Result<()> {
    let gate = y_rotation_gate(1.68213734113586, 1, 0, operating_amplitude())?;
    println!("theta = {:.12}, area = {:.6} pi", gate.seg1.theta, gate.seg1.area / std::f64::consts::PI);
    println!("segment phases: {} and {}", gate.seg1.phi, gate.seg2.phi);
    println!("each segment lasts {:.3} us", gate.seg1.duration * 1e6);

    let lp = compose_loop(&gate.seg1, &gate.seg2)?;
    let target = ry_matrix(gate.seg1.theta);
    let err = (lp.u0 - target).iter().map(|z| z.norm()).fold(0.0, f64::max);
    println!("U0 =\n{:.5}", lp.u0.map(|z| z.re));
    println!("max |U0 - Ry(theta)| = {err:.2e}, off-diagonal block = {:.2e}", lp.off_block_max);

    match y_rotation_gate(1.0, 1, 0, operating_amplitude()) {
        Ok(_) => println!("unexpected: 1.0 rad is on the lattice"),
        Err(e) => println!("theta = 1.0 rejected: {e}"),
    }
    Ok(())
}
