use nalgebra::DVector;

use super::layout::HilbertLayout;
use super::operator::{c, hermiticity_error, CMatrix, Operator, C64};
use crate::error::{Error, Result};

pub type CVector = DVector<C64>;

pub const NORM_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum StateForm {
    Pure(CVector),
    Density(CMatrix),
}

/// A pure state vector or a density matrix on a given layout.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    layout: HilbertLayout,
    form: StateForm,
}

impl QuantumState {
    pub fn pure(layout: HilbertLayout, amplitudes: CVector) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("state vector has norm {norm}")));
        }
        Ok(Self {
            layout,
            form: StateForm::Pure(amplitudes),
        })
    }

    /// Normalizes `amplitudes` before wrapping them.
    pub fn pure_normalized(layout: HilbertLayout, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Self::pure(layout, amplitudes / c(norm, 0.0))
    }

    pub fn basis(layout: HilbertLayout, index: usize) -> Result<Self> {
        let d = layout.total_dim();
        if index >= d {
            return Err(Error::InvalidState(format!(
                "basis index {index} out of range for dimension {d}"
            )));
        }
        let mut v = CVector::zeros(d);
        v[index] = c(1.0, 0.0);
        Self::pure(layout, v)
    }

    /// Product of normalized local vectors, one per factor in layout order.
    pub fn product(layout: HilbertLayout, locals: &[CVector]) -> Result<Self> {
        if locals.len() != layout.factors().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} local vectors for {} factors",
                locals.len(),
                layout.factors().len()
            )));
        }
        let mut v = CVector::from_element(1, c(1.0, 0.0));
        for (local, f) in locals.iter().zip(layout.factors()) {
            if local.len() != f.dim {
                return Err(Error::DimensionMismatch(format!(
                    "local vector of length {} for factor `{}` of dimension {}",
                    local.len(),
                    f.label,
                    f.dim
                )));
            }
            v = v.kronecker(local);
        }
        Self::pure_normalized(layout, v)
    }

    pub fn density(layout: HilbertLayout, rho: CMatrix) -> Result<Self> {
        let d = layout.total_dim();
        if rho.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "density matrix is {}x{} for dimension {d}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let herm = hermiticity_error(&rho);
        if herm > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix is not Hermitian (deviation {herm:.3e})"
            )));
        }
        let trace = rho.trace();
        if (trace - c(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("density matrix has trace {trace}")));
        }
        let min_eig = min_eigenvalue(&rho);
        if min_eig < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "density matrix has negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self {
            layout,
            form: StateForm::Density(rho),
        })
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn form(&self) -> &StateForm {
        &self.form
    }

    pub fn is_pure_form(&self) -> bool {
        matches!(self.form, StateForm::Pure(_))
    }

    pub fn as_vector(&self) -> Option<&CVector> {
        match &self.form {
            StateForm::Pure(v) => Some(v),
            StateForm::Density(_) => None,
        }
    }

    pub fn density_matrix(&self) -> CMatrix {
        match &self.form {
            StateForm::Pure(v) => v * v.adjoint(),
            StateForm::Density(rho) => rho.clone(),
        }
    }

    pub fn to_density(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            form: StateForm::Density(self.density_matrix()),
        }
    }

    /// `U|ψ⟩` or `UρU†`.
    pub fn evolve(&self, u: &Operator) -> Result<Self> {
        if u.layout() != &self.layout {
            return Err(Error::LayoutMismatch(format!(
                "operator on {} applied to state on {}",
                u.layout(),
                self.layout
            )));
        }
        let form = match &self.form {
            StateForm::Pure(v) => StateForm::Pure(u.matrix() * v),
            StateForm::Density(rho) => StateForm::Density(u.matrix() * rho * u.matrix().adjoint()),
        };
        Ok(Self {
            layout: self.layout.clone(),
            form,
        })
    }

    pub fn trace(&self) -> f64 {
        match &self.form {
            StateForm::Pure(v) => v.norm_squared(),
            StateForm::Density(rho) => rho.trace().re,
        }
    }

    /// Population of the basis states selected by `predicate` on per-factor digits.
    pub fn population_where(&self, predicate: impl Fn(&[usize]) -> bool) -> f64 {
        let rho = self.density_matrix();
        (0..self.layout.total_dim())
            .filter(|&i| predicate(&self.layout.digits(i)))
            .map(|i| rho[(i, i)].re)
            .sum()
    }

    pub(crate) fn from_density_unchecked(layout: HilbertLayout, rho: CMatrix) -> Self {
        Self {
            layout,
            form: StateForm::Density(rho),
        }
    }
}

fn check_len(layout: &HilbertLayout, len: usize) -> Result<()> {
    if len != layout.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {len} for layout {layout}"
        )));
    }
    Ok(())
}

pub fn min_eigenvalue(rho: &CMatrix) -> f64 {
    let sym = (rho + rho.adjoint()) * c(0.5, 0.0);
    sym.symmetric_eigenvalues()
        .iter()
        .fold(f64::INFINITY, |acc, &x| acc.min(x))
}

/// Reduced density matrix over the factors in `keep`.
pub fn partial_trace(state: &QuantumState, keep: &[&str]) -> Result<QuantumState> {
    let rho = match &state.form {
        StateForm::Density(rho) => rho.clone(),
        StateForm::Pure(_) => {
            return Err(Error::InvalidState(
                "partial_trace expects a density-form state".into(),
            ))
        }
    };
    let layout = &state.layout;
    let reduced_layout = layout.subset(keep)?;
    let kept: Vec<bool> = layout
        .factors()
        .iter()
        .map(|f| keep.contains(&f.label.as_str()))
        .collect();

    let d = layout.total_dim();
    let split = |digits: &[usize]| -> (Vec<usize>, Vec<usize>) {
        let mut k = Vec::new();
        let mut t = Vec::new();
        for (&dig, &is_kept) in digits.iter().zip(&kept) {
            if is_kept {
                k.push(dig)
            } else {
                t.push(dig)
            }
        }
        (k, t)
    };
    let parts: Vec<(usize, Vec<usize>)> = (0..d)
        .map(|i| {
            let (k, t) = split(&layout.digits(i));
            (reduced_layout.flat_index(&k), t)
        })
        .collect();

    let rd = reduced_layout.total_dim();
    let mut out = CMatrix::zeros(rd, rd);
    for i in 0..d {
        for j in 0..d {
            if parts[i].1 == parts[j].1 {
                out[(parts[i].0, parts[j].0)] += rho[(i, j)];
            }
        }
    }
    Ok(QuantumState::from_density_unchecked(reduced_layout, out))
}

/// `F = [tr(ρ_final ρ_ideal)]^{1/2}` with a pure `ρ_ideal`.
///
/// This is the Uhlmann fidelity only because `ρ_ideal` is required to be pure;
/// mixed ideal states are rejected.
pub fn state_fidelity(final_state: &QuantumState, ideal: &QuantumState) -> Result<f64> {
    if final_state.layout != ideal.layout {
        return Err(Error::LayoutMismatch(format!(
            "final state on {} vs ideal state on {}",
            final_state.layout, ideal.layout
        )));
    }
    let overlap = match (&final_state.form, &ideal.form) {
        (StateForm::Pure(f), StateForm::Pure(i)) => i.dotc(f).norm_sqr(),
        (StateForm::Density(rho), StateForm::Pure(i)) => (i.adjoint() * rho * i)[(0, 0)].re,
        (_, StateForm::Density(sigma)) => {
            let purity = (sigma * sigma).trace().re;
            if (purity - 1.0).abs() > TRACE_TOL {
                return Err(Error::InvalidState(format!(
                    "ideal state must be pure (tr ρ² = {purity})"
                )));
            }
            (final_state.density_matrix() * sigma).trace().re
        }
    };
    Ok(overlap.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::layout::{HilbertLayout, ION, PHONON};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn qubit() -> HilbertLayout {
        HilbertLayout::single("q", 2).unwrap()
    }

    fn two() -> HilbertLayout {
        HilbertLayout::new([(PHONON, 2), (ION, 2)]).unwrap()
    }

    #[test]
    fn pure_requires_unit_norm() {
        let v = CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(QuantumState::pure(qubit(), v.clone()).is_err());
        assert!(QuantumState::pure_normalized(qubit(), v).is_ok());
    }

    #[test]
    fn density_validation() {
        let bad_trace = CMatrix::identity(2, 2);
        assert!(QuantumState::density(qubit(), bad_trace).is_err());
        let negative = CMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(QuantumState::density(qubit(), negative).is_err());
        let mixed = CMatrix::identity(2, 2) * c(0.5, 0.0);
        assert!(QuantumState::density(qubit(), mixed).is_ok());
    }

    #[test]
    fn product_state_partial_trace() {
        let a = CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        let q = CVector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
        let s = QuantumState::product(two(), &[a, q.clone()]).unwrap().to_density();
        let reduced = partial_trace(&s, &[ION]).unwrap();
        let expect = &q * q.adjoint();
        assert!(crate::quantum::max_abs_diff(&reduced.density_matrix(), &expect) < 1e-15);
        assert_eq!(reduced.layout().dims(), vec![2]);
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let v = CVector::from_vec(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, 0.0)]);
        let s = QuantumState::pure(two(), v).unwrap().to_density();
        for keep in [PHONON, ION] {
            let r = partial_trace(&s, &[keep]).unwrap().density_matrix();
            let half = CMatrix::identity(2, 2) * c(0.5, 0.0);
            assert!(crate::quantum::max_abs_diff(&r, &half) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_errors() {
        let s = QuantumState::basis(two(), 0).unwrap();
        assert!(partial_trace(&s, &[ION]).is_err());
        assert!(matches!(
            partial_trace(&s.to_density(), &["x"]),
            Err(Error::UnknownFactor(_))
        ));
    }

    #[test]
    fn fidelity_examples() {
        let zero = QuantumState::basis(qubit(), 0).unwrap();
        let one = QuantumState::basis(qubit(), 1).unwrap();
        assert!((state_fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        assert!(state_fidelity(&one, &zero).unwrap().abs() < 1e-15);
        let mixed = QuantumState::density(qubit(), CMatrix::identity(2, 2) * c(0.5, 0.0)).unwrap();
        assert!((state_fidelity(&mixed, &zero).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        // mixed ideal is rejected
        assert!(state_fidelity(&zero, &mixed).is_err());
        // layout mismatch
        assert!(state_fidelity(&QuantumState::basis(two(), 0).unwrap(), &zero).is_err());
    }
}
