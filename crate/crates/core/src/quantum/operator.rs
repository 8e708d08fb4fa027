use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::layout::HilbertLayout;
use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const UNITARY_TOL: f64 = 1e-10;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn cis(phase: f64) -> C64 {
    C64::from_polar(1.0, phase)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise difference of two equally shaped matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn hermiticity_error(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

pub fn unitarity_error(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs_diff(&(m.adjoint() * m), &CMatrix::identity(n, n))
}

/// Kronecker product of two dense matrices.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMatrix::from_fn(ar * br, ac * bc, |i, j| a[(i / br, j / bc)] * b[(i % br, j % bc)])
}

/// Removes a global phase by rotating the first non-negligible diagonal entry
/// onto the positive real axis. Returns the normalized matrix and the stripped phase.
pub fn strip_global_phase(m: &CMatrix) -> (CMatrix, f64) {
    let scale = max_abs(m).max(f64::MIN_POSITIVE);
    let phase = (0..m.nrows().min(m.ncols()))
        .map(|i| m[(i, i)])
        .find(|z| z.norm() > 1e-9 * scale)
        .map_or(0.0, |z| z.arg());
    (m * cis(-phase), phase)
}

/// Dense square matrix tied to a Hilbert-space layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct Operator {
    layout: HilbertLayout,
    matrix: CMatrix,
}

impl Operator {
    pub fn new(layout: HilbertLayout, matrix: CMatrix) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but layout {} has dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                layout,
                d
            )));
        }
        Ok(Self { layout, matrix })
    }

    pub fn identity(layout: &HilbertLayout) -> Self {
        let d = layout.total_dim();
        Self {
            layout: layout.clone(),
            matrix: CMatrix::identity(d, d),
        }
    }

    pub fn zeros(layout: &HilbertLayout) -> Self {
        let d = layout.total_dim();
        Self {
            layout: layout.clone(),
            matrix: CMatrix::zeros(d, d),
        }
    }

    /// Lifts a single-factor operator to the full layout: `I ⊗ … ⊗ local ⊗ … ⊗ I`.
    pub fn embed(layout: &HilbertLayout, label: &str, local: &CMatrix) -> Result<Self> {
        let pos = layout
            .position(label)
            .ok_or_else(|| Error::UnknownFactor(label.to_string()))?;
        let fdim = layout.factors()[pos].dim;
        if local.shape() != (fdim, fdim) {
            return Err(Error::DimensionMismatch(format!(
                "local operator is {}x{} but factor `{label}` has dimension {fdim}",
                local.nrows(),
                local.ncols()
            )));
        }
        let matrix = layout.factors().iter().enumerate().fold(
            CMatrix::identity(1, 1),
            |acc, (i, f)| {
                if i == pos {
                    kron(&acc, local)
                } else {
                    kron(&acc, &CMatrix::identity(f.dim, f.dim))
                }
            },
        );
        Self::new(layout.clone(), matrix)
    }

    pub fn layout(&self) -> &HilbertLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.layout.total_dim()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            layout: self.layout.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// Operator product `self · rhs`.
    pub fn compose(&self, rhs: &Operator) -> Result<Self> {
        if self.layout != rhs.layout {
            return Err(Error::LayoutMismatch(format!(
                "cannot multiply {} by {}",
                self.layout, rhs.layout
            )));
        }
        Ok(Self {
            layout: self.layout.clone(),
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            layout: self.layout.clone(),
            matrix: &self.matrix * factor,
        }
    }

    pub fn hermiticity_error(&self) -> f64 {
        hermiticity_error(&self.matrix)
    }

    pub fn unitarity_error(&self) -> f64 {
        unitarity_error(&self.matrix)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        max_abs_diff(&self.matrix, &other.matrix)
    }

    /// Largest absolute eigenvalue of a Hermitian operator.
    pub fn spectral_radius(&self) -> f64 {
        self.matrix
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }
}

/// Kronecker product with concatenated layouts.
pub fn tensor(a: &Operator, b: &Operator) -> Result<Operator> {
    let layout = a.layout.concat(&b.layout)?;
    Operator::new(layout, kron(&a.matrix, &b.matrix))
}

/// `exp(-i H t)` through the spectral decomposition of `H`.
pub fn expm_hermitian(h: &Operator, t: f64) -> Result<Operator> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "evolution time must be finite and non-negative, got {t}"
        )));
    }
    let scale = max_abs(&h.matrix).max(1.0);
    let deviation = h.hermiticity_error();
    if deviation > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = h.matrix.clone().symmetric_eigen();
    let vecs = &eig.eigenvectors;
    let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(|e| cis(-e * t)));
    let matrix = vecs * phases * vecs.adjoint();
    Operator::new(h.layout.clone(), matrix)
}

/// Standard single-factor operators. `σ_z = |1⟩⟨1| − |0⟩⟨0|`, `σ = |0⟩⟨1|`.
pub mod ops {
    use super::{c, CMatrix};

    pub fn sigma_z() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
    }

    /// Lowering operator `|0⟩⟨1|`.
    pub fn sigma_minus() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
    }

    /// Raising operator `|1⟩⟨0|`.
    pub fn sigma_plus() -> CMatrix {
        sigma_minus().transpose()
    }

    pub fn sigma_x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    pub fn sigma_y() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
    }

    /// Truncated bosonic annihilation operator on `dim` Fock levels.
    pub fn annihilation(dim: usize) -> CMatrix {
        CMatrix::from_fn(dim, dim, |i, j| {
            if j == i + 1 {
                c((j as f64).sqrt(), 0.0)
            } else {
                c(0.0, 0.0)
            }
        })
    }

    pub fn creation(dim: usize) -> CMatrix {
        annihilation(dim).transpose()
    }

    /// `|row⟩⟨col|` on a `dim`-level factor.
    pub fn ket_bra(dim: usize, row: usize, col: usize) -> CMatrix {
        let mut m = CMatrix::zeros(dim, dim);
        m[(row, col)] = c(1.0, 0.0);
        m
    }
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    layout: HilbertLayout,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl From<Operator> for OperatorRepr {
    fn from(op: Operator) -> Self {
        let rows = |f: fn(&C64) -> f64| {
            op.matrix
                .row_iter()
                .map(|r| r.iter().map(f).collect())
                .collect()
        };
        Self {
            re: rows(|z| z.re),
            im: rows(|z| z.im),
            layout: op.layout,
        }
    }
}

impl TryFrom<OperatorRepr> for Operator {
    type Error = Error;

    fn try_from(repr: OperatorRepr) -> Result<Self> {
        let d = repr.layout.total_dim();
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == d && rows.iter().all(|r| r.len() == d);
        if !shape_ok(&repr.re) || !shape_ok(&repr.im) {
            return Err(Error::DimensionMismatch(format!(
                "serialized operator does not match layout dimension {d}"
            )));
        }
        let matrix = CMatrix::from_fn(d, d, |i, j| c(repr.re[i][j], repr.im[i][j]));
        Operator::new(repr.layout, matrix)
    }
}
