//! Nonadiabatic holonomic gates for trapped ions.
//!
//! A single ion coupled to one vibrational mode gives a four-level system in
//! which two-segment, constant-amplitude pulses enact a Y rotation or a phase
//! gate on the ion qubit. A pair of ions sharing the mode gives a controlled
//! phase gate through a dark/bright decomposition. The library builds those
//! schedules, checks their holonomy numerically, and integrates a Lindblad
//! master equation to map fidelity against amplitude error `α` and a decay
//! rate `γ`.
//!
//! | module | contents |
//! |---|---|
//! | [`quantum`] | Hilbert-space layouts, operators, states, `expm`, 2×2 SVD |
//! | [`single`] | one-ion Hamiltonians, segment lattice solver, loops, gates |
//! | [`two`] | two-ion drive, dressed states, controlled phase, full-space check |
//! | [`open_system`] | schedules, noise rates, RK4 master-equation integrator |
//! | [`experiments`] | gate synthesis, parallel sweeps, CSV/SVG output, self-checks |
//! | [`cli`] | the `nhqc` command line |
//!
//! Runnable examples (`cargo run --release --example <name>`):
//!
//! - `y_rotation`: lattice Y rotation compared with `Ry(θ)`
//! - `phase_gate`: phase gates for several phase differences
//! - `lattice_search`: reachable angles and the nearest one to a target
//! - `controlled_phase`: two-ion loop, dark-state return, composite gate
//! - `leakage_probe`: population escaping the phonon qubit on larger Fock spaces
//! - `master_equation`: noisy fidelity of the phase gate at a few `(α, γ)`
//! - `fidelity_surface`: coarse `(α, γ)` surface with CSV and heatmap output
//! - `verify`: the built-in consistency checks
//!
//! ```
//! use nhqc_ion::experiments::{synthesize, GateKind, GateParams};
//! use nhqc_ion::open_system::{gate_fidelity_under_noise, ErrorModel, NoiseRates};
//!
//! let g = synthesize(&GateParams::for_gate(GateKind::Phase)).unwrap();
//! let r = gate_fidelity_under_noise(&g.schedule, &NoiseRates::zero(), ErrorModel::none(), &g.inputs, None)
//!     .unwrap();
//! assert!(r.mean > 1.0 - 1e-6);
//! ```

pub mod cli;
pub mod error;
pub mod experiments;
pub mod open_system;
pub mod quantum;
pub mod single;
pub mod two;

pub use error::{Error, Result};
