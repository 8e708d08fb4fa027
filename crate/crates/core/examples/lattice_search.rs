//! Enumerates reachable rotation angles and finds the lattice point closest
//! to a requested one.

use std::f64::consts::PI;

use nhqc_ion::single::{nearest_lattice, solve_segment_params, PType};

fn main() -> nhqc_ion::Result<()> {
    println!("{:>3} {:>3} {:>10} {:>10}", "m", "n", "theta", "area/pi");
    for m in 0..4 {
        for n in 0..4 {
            if let Ok(s) = solve_segment_params(PType::Identity, m, n) {
                println!("{m:>3} {n:>3} {:>10.6} {:>10.4}", s.theta, s.area / PI);
            }
        }
    }
    let want = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(PI / 3.0);
    if let Some((best, dist)) = nearest_lattice(PType::Identity, want, 20) {
        println!("closest to {want:.6}: (m, n) = ({}, {}), theta = {:.9}, off by {dist:.2e}", best.m, best.n, best.theta);
    }
    Ok(())
}
