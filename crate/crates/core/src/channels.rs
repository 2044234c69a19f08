//! Quantum channels in Kraus form and the amplitude damping channel.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};
use crate::states::{revalidate, DensityMatrix};

/// Completeness tolerance for `sum A_k^dagger A_k = I`.
pub const TOL_COMPLETENESS: f64 = 1e-10;

/// Damping strength, `0 <= gamma <= 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct GammaParam(f64);

impl GammaParam {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::GammaOutOfRange(gamma));
        }
        Ok(Self(gamma))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A channel `rho -> sum_k A_k rho A_k^dagger` with checked completeness.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    in_dim: usize,
    out_dim: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// `max |sum A_k^dagger A_k - I|`.
    pub fn completeness_residual(&self) -> f64 {
        completeness_residual(&self.ops, self.in_dim)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply_channel(self, rho)
    }
}

fn completeness_residual(ops: &[ComplexMatrix], in_dim: usize) -> f64 {
    let mut sum = ComplexMatrix::zeros(in_dim, in_dim);
    for a in ops {
        sum = &sum + &(&a.adjoint() * a);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(in_dim))
}

/// Builds a channel from Kraus operators, checking shapes and completeness.
pub fn validate_channel(ops: Vec<ComplexMatrix>, tol: f64) -> Result<KrausChannel> {
    let first = ops
        .first()
        .ok_or_else(|| Error::DimensionMismatch("a channel needs at least one Kraus operator".into()))?;
    let (out_dim, in_dim) = (first.rows(), first.cols());
    if let Some(bad) = ops.iter().find(|a| a.rows() != out_dim || a.cols() != in_dim) {
        return Err(Error::DimensionMismatch(format!(
            "Kraus operators must share one shape: {out_dim}x{in_dim} vs {}x{}",
            bad.rows(),
            bad.cols()
        )));
    }
    let residual = completeness_residual(&ops, in_dim);
    if !(residual <= tol) {
        return Err(Error::NotTracePreserving { residual, tol });
    }
    Ok(KrausChannel { in_dim, out_dim, ops })
}

/// Amplitude damping Kraus pair
/// `A0 = [[1, 0], [0, sqrt(1 - g)]]`, `A1 = [[0, sqrt(g)], [0, 0]]`.
pub fn amplitude_damping(g: GammaParam) -> KrausChannel {
    let gamma = g.value();
    let a0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, (1.0 - gamma).sqrt()]).expect("finite");
    let a1 = ComplexMatrix::from_real(2, 2, &[0.0, gamma.sqrt(), 0.0, 0.0]).expect("finite");
    KrausChannel { in_dim: 2, out_dim: 2, ops: vec![a0, a1] }
}

/// `sum_k A_k rho A_k^dagger`, revalidated as a density matrix.
pub fn apply_channel(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != ch.in_dim {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on d = {}, state has d = {}",
            ch.in_dim,
            rho.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(ch.out_dim, ch.out_dim);
    for a in &ch.ops {
        out = &out + &a.conjugate(rho.matrix())?;
    }
    revalidate(out, "channel output")
}

/// Entrywise amplitude damping on a qubit:
/// `[[r11 + g r22, sqrt(1-g) r12], [sqrt(1-g) r21, (1-g) r22]]`.
pub fn amplitude_damping_closed_form(g: GammaParam, rho2: &DensityMatrix) -> Result<DensityMatrix> {
    if rho2.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("amplitude damping acts on d = 2, got d = {}", rho2.dim())));
    }
    let gamma = g.value();
    let damp = (1.0 - gamma).sqrt();
    let r = |i, j| rho2.get(i, j);
    let m = ComplexMatrix::new(
        2,
        2,
        vec![r(0, 0) + r(1, 1) * gamma, r(0, 1) * damp, r(1, 0) * damp, r(1, 1) * (1.0 - gamma)],
    )?;
    revalidate(m, "amplitude damping output")
}

/// `Id_{d_left} (x) channel`, with Kraus operators `I (x) A_k`.
pub fn tensor_with_identity(ch: &KrausChannel, d_left: usize) -> Result<KrausChannel> {
    if d_left == 0 {
        return Err(Error::DimensionMismatch("identity factor needs d_left >= 1".into()));
    }
    let id = ComplexMatrix::identity(d_left);
    Ok(KrausChannel {
        in_dim: d_left * ch.in_dim,
        out_dim: d_left * ch.out_dim,
        ops: ch.ops.iter().map(|a| kron(&id, a)).collect(),
    })
}

/// Unit vector `e_k` in dimension `dim`.
pub fn basis_vector(dim: usize, k: usize) -> Vec<Complex64> {
    (0..dim).map(|i| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
}
