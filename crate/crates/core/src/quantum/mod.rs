//! Dense complex linear algebra and quantum-state utilities.

pub mod layout;
pub mod operator;
pub mod state;
pub mod svd;

pub use layout::{Factor, HilbertLayout, DRESSED_B, ION, ION1, ION2, PHONON};
pub use operator::{
    expm_hermitian, hermiticity_error, kron, max_abs, max_abs_diff, ops, strip_global_phase,
    tensor, unitarity_error, CMatrix, Operator, C64, HERMITIAN_TOL, UNITARY_TOL,
};
pub use state::{min_eigenvalue, partial_trace, state_fidelity, CVector, QuantumState, StateForm};
pub use svd::{svd2x2, CMatrix2, SvdTriple};
