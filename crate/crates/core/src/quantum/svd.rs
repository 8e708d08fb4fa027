//! Closed-form singular value decomposition of 2×2 complex matrices.
//!
//! The factorization `T = W D V†` is pinned to a canonical form: singular
//! values descend, and the first non-negligible entry of each column of `W`
//! is real and non-negative (the matching column of `V` absorbs the phase).

use nalgebra::{Matrix2, Vector2};

use super::operator::{c, C64};
use crate::error::{Error, Result};

pub type CMatrix2 = Matrix2<C64>;
type CVector2 = Vector2<C64>;

/// `(W, D, V)` with `T = W · diag(d) · V†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvdTriple {
    pub w: CMatrix2,
    pub d: [f64; 2],
    pub v: CMatrix2,
}

impl SvdTriple {
    pub fn d_matrix(&self) -> CMatrix2 {
        CMatrix2::new(c(self.d[0], 0.0), c(0.0, 0.0), c(0.0, 0.0), c(self.d[1], 0.0))
    }

    pub fn reconstruct(&self) -> CMatrix2 {
        self.w * self.d_matrix() * self.v.adjoint()
    }

    /// Entrywise comparison that tolerates a relabeling of the singular pairs
    /// and a phase per pair. When the singular values are degenerate the
    /// factors are not unique, so only the reconstructions are compared.
    pub fn equivalent(&self, other: &SvdTriple, tol: f64) -> bool {
        if max_abs2(&(self.reconstruct() - other.reconstruct())) > tol {
            return false;
        }
        if (self.d[0] - self.d[1]).abs() <= tol {
            return (other.d[0] - other.d[1]).abs() <= tol
                && (self.d[0] - other.d[0]).abs() <= tol;
        }
        let perms: [[usize; 2]; 2] = [[0, 1], [1, 0]];
        perms.iter().any(|p| {
            (0..2).all(|k| {
                let j = p[k];
                if (self.d[k] - other.d[j]).abs() > tol {
                    return false;
                }
                let wa = self.w.column(k);
                let wb = other.w.column(j);
                let overlap = wb.dotc(&wa);
                let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { c(1.0, 0.0) };
                let w_ok = (wa - wb * phase).iter().all(|z| z.norm() <= tol);
                let v_ok = (self.v.column(k) - other.v.column(j) * phase)
                    .iter()
                    .all(|z| z.norm() <= tol);
                w_ok && v_ok
            })
        })
    }
}

pub(crate) fn max_abs2(m: &CMatrix2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn perp(u: &CVector2) -> CVector2 {
    CVector2::new(-u[1].conj(), u[0].conj())
}

fn det(t: &CMatrix2) -> C64 {
    t[(0, 0)] * t[(1, 1)] - t[(0, 1)] * t[(1, 0)]
}

/// Canonical SVD of an invertible 2×2 complex matrix.
pub fn svd2x2(t: &CMatrix2) -> Result<SvdTriple> {
    let scale = max_abs2(t);
    let abs_det = det(t).norm();
    if scale == 0.0 || !scale.is_finite() || abs_det <= 1e-14 * scale * scale {
        return Err(Error::SingularMatrix { det: abs_det });
    }

    // Eigen-decomposition of the Hermitian Gram matrix T†T.
    let gram = t.adjoint() * t;
    let a = gram[(0, 0)].re;
    let d = gram[(1, 1)].re;
    let b = gram[(0, 1)];
    let half_gap = ((a - d) * 0.5).hypot(b.norm());
    let lambda_max = (a + d) * 0.5 + half_gap;
    let s1 = lambda_max.sqrt();
    // σ₁σ₂ = |det T| avoids cancellation in the small singular value.
    let s2 = abs_det / s1;

    let cand1 = CVector2::new(b, c(lambda_max - a, 0.0));
    let cand2 = CVector2::new(c(lambda_max - d, 0.0), b.conj());
    let v1 = {
        let pick = if cand1.norm() >= cand2.norm() { cand1 } else { cand2 };
        if pick.norm() <= 1e-15 * lambda_max {
            // Gram matrix proportional to the identity.
            CVector2::new(c(1.0, 0.0), c(0.0, 0.0))
        } else {
            pick.normalize()
        }
    };
    let v2 = perp(&v1);

    let w1 = (t * v1).normalize();
    let w2 = {
        let base = perp(&w1);
        let proj = base.dotc(&(t * v2));
        if proj.norm() > 0.0 {
            base * (proj / proj.norm())
        } else {
            base
        }
    };

    let mut w = CMatrix2::from_columns(&[w1, w2]);
    let mut v = CMatrix2::from_columns(&[v1, v2]);
    for k in 0..2 {
        let col = w.column(k);
        let lead = if col[0].norm() > 1e-12 { col[0] } else { col[1] };
        let fix = C64::from_polar(1.0, -lead.arg());
        for r in 0..2 {
            w[(r, k)] *= fix;
            v[(r, k)] *= fix;
        }
    }

    Ok(SvdTriple { w, d: [s1, s2], v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::operator::unitarity_error;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dyn2(m: &CMatrix2) -> DMatrix<C64> {
        DMatrix::from_iterator(2, 2, m.iter().cloned())
    }

    #[test]
    fn scaled_identity() {
        let t = CMatrix2::identity() * c(0.5, 0.0);
        let s = svd2x2(&t).unwrap();
        assert_eq!(s.d, [0.5, 0.5]);
        assert!(max_abs2(&(s.w - CMatrix2::identity())) < 1e-15);
        assert!(max_abs2(&(s.v - CMatrix2::identity())) < 1e-15);
    }

    #[test]
    fn singular_rejected() {
        let t = CMatrix2::new(c(1.0, 0.0), c(2.0, 0.0), c(0.5, 0.0), c(1.0, 0.0));
        assert!(matches!(svd2x2(&t), Err(Error::SingularMatrix { .. })));
        assert!(svd2x2(&CMatrix2::zeros()).is_err());
    }

    #[test]
    fn random_reconstruction_and_canonical_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let t = CMatrix2::from_fn(|_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let s = svd2x2(&t).unwrap();
            assert!(max_abs2(&(s.reconstruct() - t)) <= 1e-12);
            assert!(s.d[0] >= s.d[1]);
            assert!(unitarity_error(&dyn2(&s.w)) <= 1e-12);
            assert!(unitarity_error(&dyn2(&s.v)) <= 1e-12);
            for k in 0..2 {
                let lead = if s.w[(0, k)].norm() > 1e-12 { s.w[(0, k)] } else { s.w[(1, k)] };
                assert!(lead.im.abs() < 1e-14 && lead.re >= 0.0);
            }
            // Independent check: σ² are the eigenvalues of T†T.
            let eig = dyn2(&(t.adjoint() * t)).symmetric_eigenvalues();
            let (hi, lo) = (eig.max(), eig.min());
            assert!((s.d[0] - hi.sqrt()).abs() <= 1e-12);
            assert!((s.d[1] - lo.max(0.0).sqrt()).abs() <= 1e-12);
        }
    }
}
