use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Label of the collective vibrational mode.
pub const PHONON: &str = "phonon";
/// Label of the ion qubit in single-ion layouts.
pub const ION: &str = "ion";
pub const ION1: &str = "ion1";
pub const ION2: &str = "ion2";
/// Three-level single-excitation basis {|100⟩, |010⟩, |001⟩} of the two-ion model.
pub const DRESSED_B: &str = "B";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    pub dim: usize,
}

/// Ordered tensor-product structure of a Hilbert space.
///
/// Basis states are enumerated row-major: the first factor is the most
/// significant index, so `|m⟩_a ⊗ |n⟩_q` sits at `m * dim_q + n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Factor>", into = "Vec<Factor>")]
pub struct HilbertLayout {
    factors: Vec<Factor>,
    total_dim: usize,
}

impl HilbertLayout {
    pub fn new<S: Into<String>>(factors: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let factors: Vec<Factor> = factors
            .into_iter()
            .map(|(label, dim)| Factor {
                label: label.into(),
                dim,
            })
            .collect();
        Self::try_from(factors)
    }

    pub fn single(label: &str, dim: usize) -> Result<Self> {
        Self::new([(label, dim)])
    }

    /// Vibrational mode truncated at `n_max` quanta, tensored with one ion qubit.
    pub fn phonon_ion(n_max: usize) -> Result<Self> {
        Self::new([(PHONON, n_max + 1), (ION, 2)])
    }

    /// Vibrational mode truncated at `n_max` quanta, tensored with two ion qubits.
    pub fn phonon_two_ions(n_max: usize) -> Result<Self> {
        Self::new([(PHONON, n_max + 1), (ION1, 2), (ION2, 2)])
    }

    pub fn two_ions() -> Self {
        Self::new([(ION1, 2), (ION2, 2)]).expect("static layout")
    }

    pub fn dressed_b() -> Self {
        Self::single(DRESSED_B, 3).expect("static layout")
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.label == label)
    }

    pub fn dim_of(&self, label: &str) -> Option<usize> {
        self.position(label).map(|i| self.factors[i].dim)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    /// Layout of `self ⊗ other`.
    pub fn concat(&self, other: &HilbertLayout) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::try_from(factors)
    }

    /// Layout restricted to the given factors, in this layout's order.
    pub fn subset(&self, keep: &[&str]) -> Result<Self> {
        for label in keep {
            if !self.contains(label) {
                return Err(Error::UnknownFactor((*label).to_string()));
            }
        }
        let factors: Vec<Factor> = self
            .factors
            .iter()
            .filter(|f| keep.contains(&f.label.as_str()))
            .cloned()
            .collect();
        Self::try_from(factors)
    }

    /// Splits a flat basis index into per-factor indices.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.dim;
            index /= f.dim;
        }
        out
    }

    /// Inverse of [`digits`](Self::digits).
    pub fn flat_index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&d, f)| acc * f.dim + d)
    }
}

impl TryFrom<Vec<Factor>> for HilbertLayout {
    type Error = Error;

    fn try_from(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidLayout("layout needs at least one factor".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.dim < 2 {
                return Err(Error::InvalidLayout(format!(
                    "factor `{}` has dimension {} (< 2)",
                    f.label, f.dim
                )));
            }
            if factors[..i].iter().any(|g| g.label == f.label) {
                return Err(Error::InvalidLayout(format!(
                    "duplicate factor label `{}`",
                    f.label
                )));
            }
        }
        let total_dim = factors.iter().map(|f| f.dim).product();
        Ok(Self { factors, total_dim })
    }
}

impl From<HilbertLayout> for Vec<Factor> {
    fn from(layout: HilbertLayout) -> Self {
        layout.factors
    }
}

impl std::fmt::Display for HilbertLayout {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| format!("{}({})", x.label, x.dim))
            .collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}
