//! Density matrices, von Neumann entropy, the qubit portrait of a qutrit and
//! the qutrit <-> two-mode embedding.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, ComplexMatrix};

/// Hermiticity tolerance (max-norm) used for density matrices.
pub const TOL_HERMITIAN: f64 = 1e-10;
/// Eigenvalues down to `-TOL_PSD` are accepted as rounding noise.
pub const TOL_PSD: f64 = 1e-9;
/// Allowed `|Tr rho - 1|`.
pub const TOL_TRACE: f64 = 1e-9;
/// `Tr rho^2 >= 1 - TOL_PURE` counts as pure.
pub const TOL_PURE: f64 = 1e-9;

/// A validated density matrix.
///
/// Construction goes through [`validate_density`], which runs the
/// eigensolver once; the spectrum is kept so entropy evaluation does not need
/// a second decomposition.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    eigenvalues: Vec<f64>,
    tol_herm: f64,
    tol_psd: f64,
}

impl DensityMatrix {
    /// Validates with the default tolerances.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        validate_density(m, TOL_HERMITIAN, TOL_PSD)
    }

    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real(dim, dim, entries)?)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(diag))
    }

    /// `|psi><psi|` for a unit vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::projector(psi))
    }

    /// `I / d`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::from_real_diagonal(&vec![1.0 / dim as f64; dim])
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Entry `(i, j)`, zero-based.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat.get(i, j)
    }

    /// Ascending spectrum computed at validation time.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// `(tol_herm, tol_psd)` used when this state was validated.
    pub fn tolerances(&self) -> (f64, f64) {
        (self.tol_herm, self.tol_psd)
    }

    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(self).nats()
    }

    pub fn purity(&self) -> f64 {
        purity(self)
    }

    pub fn is_pure(&self) -> bool {
        self.purity() >= 1.0 - TOL_PURE
    }
}

/// Checks Hermiticity, unit trace and positivity, in that order.
pub fn validate_density(m: ComplexMatrix, tol_herm: f64, tol_psd: f64) -> Result<DensityMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if let Some((row, col)) = m.first_non_finite() {
        return Err(Error::NonFinite { row, col });
    }
    let deviation = m.hermitian_deviation();
    if deviation > tol_herm {
        return Err(Error::NotHermitian { deviation, tol: tol_herm });
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > TOL_TRACE {
        return Err(Error::TraceNotOne { trace, tol: TOL_TRACE });
    }
    let eigen = hermitian_eigen(&m, tol_herm)?;
    if let Some(&lowest) = eigen.eigenvalues.first() {
        if lowest < -tol_psd {
            return Err(Error::NotPositive { eigenvalue: lowest, tol: tol_psd });
        }
    }
    Ok(DensityMatrix { mat: m, eigenvalues: eigen.eigenvalues, tol_herm, tol_psd })
}

/// Validation of a state that should be valid by construction; failures
/// become [`Error::InternalNumerical`].
pub(crate) fn revalidate(m: ComplexMatrix, what: &str) -> Result<DensityMatrix> {
    DensityMatrix::new(m).map_err(|e| Error::InternalNumerical(format!("{what}: {e}")))
}

/// Entropy in nats.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Entropy(f64);

impl Entropy {
    pub fn nats(self) -> f64 {
        self.0
    }

    pub fn bits(self) -> f64 {
        self.0 / std::f64::consts::LN_2
    }
}

/// Shannon entropy (nats) of a spectrum, with `0 ln 0 = 0`. Negative values
/// are clamped to zero; callers are expected to have rejected anything below
/// the PSD tolerance already.
pub fn spectral_entropy(eigenvalues: &[f64]) -> f64 {
    -eigenvalues
        .iter()
        .map(|&l| l.max(0.0))
        .filter(|&l| l > 0.0)
        .map(|l| l * l.ln())
        .sum::<f64>()
}

/// `S(rho) = -Tr rho ln rho`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Entropy {
    Entropy(spectral_entropy(&rho.eigenvalues).max(0.0))
}

/// `Tr rho^2`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // rho is Hermitian, so Tr rho^2 = sum |rho_ij|^2
    rho.mat.data().iter().map(|z| z.norm_sqr()).sum()
}

fn expect_dim(rho: &DensityMatrix, dim: usize, op: &str) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch(format!("{op} expects d = {dim}, got d = {}", rho.dim())));
    }
    Ok(())
}

/// Qubit portrait `[[r11 + r22, r13], [r31, r33]]` of a qutrit.
pub fn qubit_portrait(rho3: &DensityMatrix) -> Result<DensityMatrix> {
    expect_dim(rho3, 3, "qubit_portrait")?;
    let r = |i, j| rho3.get(i, j);
    let sigma = ComplexMatrix::new(2, 2, vec![r(0, 0) + r(1, 1), r(0, 2), r(2, 0), r(2, 2)])?;
    revalidate(sigma, "qubit portrait")
}

/// Places a qutrit in the upper-left 3x3 block of a two-qubit state with an
/// empty fourth row and column.
pub fn embed_qutrit(rho3: &DensityMatrix) -> Result<DensityMatrix> {
    expect_dim(rho3, 3, "embed_qutrit")?;
    let m = ComplexMatrix::from_fn(4, 4, |i, j| {
        if i < 3 && j < 3 {
            rho3.get(i, j)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    revalidate(m, "qutrit embedding")
}

/// Largest modulus in the fourth row or column of a 4x4 matrix.
pub fn support_residual(m: &ComplexMatrix) -> f64 {
    (0..4).map(|k| m.get(3, k).norm().max(m.get(k, 3).norm())).fold(0.0, f64::max)
}

/// Inverse of [`embed_qutrit`]; fails with [`Error::SupportLeak`] when the
/// state has weight outside the qutrit subspace.
pub fn extract_qutrit(rho4: &DensityMatrix, tol: f64) -> Result<DensityMatrix> {
    expect_dim(rho4, 4, "extract_qutrit")?;
    let residual = support_residual(rho4.matrix());
    if residual > tol {
        return Err(Error::SupportLeak { residual, tol });
    }
    DensityMatrix::new(rho4.matrix().block(0, 0, 3, 3))
}
