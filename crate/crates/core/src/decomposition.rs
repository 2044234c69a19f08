//! Two-term tensor decompositions of two-qubit states,
//!
//! `rho = sum_{n,m} alpha_nm |e_n><e_m| (x) |h_n><h_m|`,
//!
//! with `(e_n)` the computational basis of the first qubit, `h_n` unit vectors
//! of the second qubit and `alpha` a unit-trace positive semidefinite 2x2
//! matrix. States embedded from a qutrit (empty fourth row and column) force
//! `h2 = (1, 0)`; what remains is `h1 = (x, y)`, fixed here to `x >= 0` real.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, kron, ComplexMatrix};
use crate::sampling::{ginibre, rng_from_seed};
use crate::states::{revalidate, support_residual, DensityMatrix, TOL_HERMITIAN, TOL_PSD, TOL_TRACE};

/// Default absolute tolerance for the form conditions and extraction.
pub const DEFAULT_FORM_TOL: f64 = 1e-9;

/// Allowed deviation of `||h_n||` from one.
pub const TOL_UNIT_NORM: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The `(alpha, h1, h2)` data of a two-term tensor decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorDecomposition {
    alpha: ComplexMatrix,
    h1: [Complex64; 2],
    h2: [Complex64; 2],
}

impl TensorDecomposition {
    /// Checks that `alpha` is a 2x2 unit-trace PSD matrix and `h1`, `h2` are
    /// unit vectors.
    pub fn new(alpha: ComplexMatrix, h1: [Complex64; 2], h2: [Complex64; 2]) -> Result<Self> {
        if alpha.rows() != 2 || alpha.cols() != 2 {
            return Err(Error::InvalidDecomposition(format!(
                "alpha must be 2x2, got {}x{}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        let eigen = hermitian_eigen(&alpha, TOL_HERMITIAN)
            .map_err(|e| Error::InvalidDecomposition(format!("alpha: {e}")))?;
        if eigen.eigenvalues[0] < -TOL_PSD {
            return Err(Error::InvalidDecomposition(format!(
                "alpha has negative eigenvalue {:e}",
                eigen.eigenvalues[0]
            )));
        }
        let trace = alpha.trace().re;
        if (trace - 1.0).abs() > TOL_TRACE {
            return Err(Error::InvalidDecomposition(format!("alpha has trace {trace}")));
        }
        for (name, h) in [("h1", &h1), ("h2", &h2)] {
            let norm = (h[0].norm_sqr() + h[1].norm_sqr()).sqrt();
            if !((norm - 1.0).abs() <= TOL_UNIT_NORM) {
                return Err(Error::InvalidDecomposition(format!("{name} has norm {norm}")));
            }
        }
        Ok(Self { alpha, h1, h2 })
    }

    /// Convenience constructor for the embedded gauge `h2 = (1, 0)`.
    pub fn with_ground_h2(alpha: ComplexMatrix, h1: [Complex64; 2]) -> Result<Self> {
        Self::new(alpha, h1, [ONE, ZERO])
    }

    pub fn alpha(&self) -> &ComplexMatrix {
        &self.alpha
    }

    pub fn h1(&self) -> [Complex64; 2] {
        self.h1
    }

    pub fn h2(&self) -> [Complex64; 2] {
        self.h2
    }

    /// `alpha_jj`, real by Hermiticity.
    pub fn weight(&self, j: usize) -> f64 {
        self.alpha.get(j, j).re
    }

    pub fn h(&self, j: usize) -> [Complex64; 2] {
        match j {
            0 => self.h1,
            1 => self.h2,
            _ => panic!("decomposition has two terms, index {j} out of range"),
        }
    }

    /// The state this decomposition describes.
    pub fn reconstruct(&self) -> Result<DensityMatrix> {
        reconstruct(self)
    }
}

impl fmt::Display for TensorDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = |c: Complex64| format!("{:+.12}{:+.12}i", c.re, c.im);
        let a = &self.alpha;
        writeln!(f, "alpha = [[{}, {}], [{}, {}]]", z(a.get(0, 0)), z(a.get(0, 1)), z(a.get(1, 0)), z(a.get(1, 1)))?;
        writeln!(f, "h1    = ({}, {})", z(self.h1[0]), z(self.h1[1]))?;
        write!(f, "h2    = ({}, {})", z(self.h2[0]), z(self.h2[1]))
    }
}

/// Residuals of the necessary conditions for the two-term form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormDiagnostics {
    /// `|r11 r22 - r12 r21|`.
    pub minor_residual: f64,
    /// `|det|` of the upper-left 3x3 block.
    pub det3_residual: f64,
    /// Largest modulus in the fourth row or column.
    pub support_residual: f64,
    pub decomposable: bool,
    pub tol: f64,
}

impl fmt::Display for FormDiagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "minor_residual = {:e}, det3_residual = {:e}, support_residual = {:e} (tol {:e})",
            self.minor_residual, self.det3_residual, self.support_residual, self.tol
        )
    }
}

fn det3(m: &ComplexMatrix) -> Complex64 {
    let a = |i, j| m.get(i, j);
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

fn expect_two_qubit(rho4: &DensityMatrix) -> Result<()> {
    if rho4.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit state (d = 4), got d = {}", rho4.dim())));
    }
    Ok(())
}

/// Evaluates the vanishing-minor and support conditions.
pub fn check_form_conditions(rho4: &DensityMatrix, tol: f64) -> Result<FormDiagnostics> {
    expect_two_qubit(rho4)?;
    let m = rho4.matrix();
    let minor_residual = (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).norm();
    let det3_residual = det3(&m.block(0, 0, 3, 3)).norm();
    let support_residual = support_residual(m);
    let decomposable = minor_residual <= tol && det3_residual <= tol && support_residual <= tol;
    Ok(FormDiagnostics { minor_residual, det3_residual, support_residual, decomposable, tol })
}

/// `sum alpha_nm |e_n><e_m| (x) |h_n><h_m|` without validation.
pub fn reconstruct_matrix(dec: &TensorDecomposition) -> ComplexMatrix {
    let e = [[ONE, ZERO], [ZERO, ONE]];
    let hs = [dec.h1, dec.h2];
    let mut out = ComplexMatrix::zeros(4, 4);
    for n in 0..2 {
        for m in 0..2 {
            let term = kron(&ComplexMatrix::outer(&e[n], &e[m]), &ComplexMatrix::outer(&hs[n], &hs[m]));
            out = &out + &term.scale(dec.alpha.get(n, m));
        }
    }
    out
}

pub fn reconstruct(dec: &TensorDecomposition) -> Result<DensityMatrix> {
    revalidate(reconstruct_matrix(dec), "reconstructed state")
}

/// Recovers `(alpha, h1, h2)` from a state with the two-term form.
///
/// Gauge: `h2 = (1, 0)` and `h1 = (x, y)` with `x >= 0` real. Degenerate
/// branches: if `alpha_11 <= tol` then `h1 = (1, 0)` and `alpha_12 = 0`;
/// if `r11 <= tol` then `h1 = (0, 1)` and `alpha_12 = r23`. The result is
/// always reconstructed and compared against the input.
pub fn extract_decomposition(rho4: &DensityMatrix, tol: f64) -> Result<TensorDecomposition> {
    let diagnostics = check_form_conditions(rho4, tol)?;
    if !diagnostics.decomposable {
        return Err(Error::NotDecomposable(diagnostics));
    }
    let r = |i, j| rho4.get(i, j);
    let alpha11 = r(0, 0).re + r(1, 1).re;
    let alpha22 = r(2, 2).re;

    let (h1, alpha12) = if alpha11 <= tol {
        ([ONE, ZERO], ZERO)
    } else if r(0, 0).re <= tol {
        ([ZERO, ONE], r(1, 2))
    } else {
        let x = (r(0, 0).re / alpha11).sqrt();
        // r21 = alpha11 x y fixes the phase of y; |y| = sqrt(1 - x^2) keeps h1 unit
        let y_raw = r(1, 0) / (alpha11 * x);
        let y_abs = (1.0 - x * x).max(0.0).sqrt();
        let y = if y_raw.norm() > 0.0 { y_raw * (y_abs / y_raw.norm()) } else { Complex64::new(y_abs, 0.0) };
        ([Complex64::new(x, 0.0), y], r(0, 2) / x)
    };

    let alpha = ComplexMatrix::new(
        2,
        2,
        vec![Complex64::new(alpha11, 0.0), alpha12, alpha12.conj(), Complex64::new(alpha22, 0.0)],
    )?;
    let candidate = TensorDecomposition { alpha, h1, h2: [ONE, ZERO] };
    let residual = reconstruct_matrix(&candidate).max_abs_diff(rho4.matrix());
    if !(residual <= tol) {
        return Err(Error::InconsistentEntries { residual, tol });
    }
    TensorDecomposition::new(candidate.alpha, candidate.h1, candidate.h2)
}

/// Seeded decomposable state in the embedded gauge: `alpha` from the
/// Ginibre ensemble, `x ~ U[0, 1]`, `y = e^{i phi} sqrt(1 - x^2)` with
/// `phi ~ U[0, 2 pi)`, `h2 = (1, 0)`.
pub fn random_decomposable(seed: u64) -> TensorDecomposition {
    let mut rng = rng_from_seed(seed);
    let g = ginibre(2, 2, &mut rng);
    let ggd = &g * &g.adjoint();
    let alpha = ggd.scale_real(1.0 / ggd.trace().re).hermitian_part();
    let x: f64 = rng.random();
    let phi: f64 = rng.random::<f64>() * TAU;
    let y = Complex64::from_polar((1.0 - x * x).sqrt(), phi);
    TensorDecomposition { alpha, h1: [Complex64::new(x, 0.0), y], h2: [ONE, ZERO] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn alpha(a11: f64, a12: Complex64, a22: f64) -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![c(a11, 0.0), a12, a12.conj(), c(a22, 0.0)]).unwrap()
    }

    #[test]
    fn diagonal_round_trip() {
        let dec = TensorDecomposition::with_ground_h2(alpha(0.5, ZERO, 0.5), [ONE, ZERO]).unwrap();
        let rho = reconstruct(&dec).unwrap();
        // 1/2 |e1><e1| (x) |0><0| + 1/2 |e2><e2| (x) |0><0|
        assert_eq!(rho.matrix(), &ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.5, 0.0]));
        let back = extract_decomposition(&rho, DEFAULT_FORM_TOL).unwrap();
        assert_eq!(back.h1(), [ONE, ZERO]);
        assert!(back.alpha().max_abs_diff(dec.alpha()) < 1e-15);
    }

    #[test]
    fn complex_round_trip() {
        let h = FRAC_1_SQRT_2;
        let dec = TensorDecomposition::with_ground_h2(alpha(0.5, c(0.25, 0.0), 0.5), [c(h, 0.0), c(0.0, h)]).unwrap();
        let rho = reconstruct(&dec).unwrap();
        let diag = check_form_conditions(&rho, DEFAULT_FORM_TOL).unwrap();
        assert!(diag.decomposable);
        assert!(diag.minor_residual <= 1e-12 && diag.det3_residual <= 1e-12);
        let back = extract_decomposition(&rho, DEFAULT_FORM_TOL).unwrap();
        assert!(reconstruct(&back).unwrap().matrix().max_abs_diff(rho.matrix()) <= 1e-12);
        assert!((back.h1()[0] - c(h, 0.0)).norm() < 1e-12);
        assert!((back.h1()[1] - c(0.0, h)).norm() < 1e-12);
        assert!(back.alpha().max_abs_diff(dec.alpha()) < 1e-12);
    }

    #[test]
    fn block_pattern_matches_symbolic_form() {
        // rho = [[a11 |h1><h1|, a12 |h1><h2|], [a21 |h2><h1|, a22 |h2><h2|]]
        let h1 = [c(0.6, 0.0), c(0.0, 0.8)];
        let h2 = [c(0.8, 0.0), c(0.36, 0.48)];
        let a12 = c(0.1, -0.2);
        let dec = TensorDecomposition::new(alpha(0.7, a12, 0.3), h1, h2).unwrap();
        let m = reconstruct_matrix(&dec);
        let hs = [h1, h2];
        let a = dec.alpha();
        for n in 0..2 {
            for mm in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let expected = a.get(n, mm) * hs[n][k] * hs[mm][l].conj();
                        assert!((m.get(2 * n + k, 2 * mm + l) - expected).norm() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn non_decomposable_diagonal() {
        let rho = DensityMatrix::from_real_diagonal(&[0.5, 0.25, 0.25, 0.0]).unwrap();
        let diag = check_form_conditions(&rho, DEFAULT_FORM_TOL).unwrap();
        assert_eq!(diag.minor_residual, 0.125);
        assert!(!diag.decomposable);
        match extract_decomposition(&rho, DEFAULT_FORM_TOL) {
            Err(Error::NotDecomposable(d)) => assert_eq!(d, diag),
            other => panic!("expected NotDecomposable, got {other:?}"),
        }
    }

    #[test]
    fn rank_one_product_state() {
        let h = [c(0.6, 0.0), c(0.0, 0.8)];
        let psi = [h[0], h[1], ZERO, ZERO];
        let rho = DensityMatrix::pure(&psi).unwrap();
        assert!(check_form_conditions(&rho, DEFAULT_FORM_TOL).unwrap().decomposable);
        let dec = extract_decomposition(&rho, DEFAULT_FORM_TOL).unwrap();
        assert!((dec.weight(0) - 1.0).abs() < 1e-15);
        assert!(dec.weight(1).abs() < 1e-15);
    }

    #[test]
    fn zero_first_component_branch() {
        // h1 = (0, 1) so r11 = 0
        let dec = TensorDecomposition::with_ground_h2(alpha(0.4, c(0.1, 0.2), 0.6), [ZERO, ONE]).unwrap();
        let rho = reconstruct(&dec).unwrap();
        let back = extract_decomposition(&rho, DEFAULT_FORM_TOL).unwrap();
        assert_eq!(back.h1(), [ZERO, ONE]);
        assert!(back.alpha().max_abs_diff(dec.alpha()) < 1e-15);
    }

    #[test]
    fn zero_weight_branch() {
        let rho = DensityMatrix::from_real_diagonal(&[0.0, 0.0, 1.0, 0.0]).unwrap();
        let back = extract_decomposition(&rho, DEFAULT_FORM_TOL).unwrap();
        assert_eq!(back.h1(), [ONE, ZERO]);
        assert_eq!(back.weight(1), 1.0);
        assert_eq!(back.alpha().get(0, 1), ZERO);
    }

    #[test]
    fn support_leak_is_not_decomposable() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        let diag = check_form_conditions(&rho, DEFAULT_FORM_TOL).unwrap();
        assert_eq!(diag.support_residual, 0.25);
        assert!(!diag.decomposable);
    }

    #[test]
    fn rejects_wrong_dimension() {
        let rho = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(matches!(check_form_conditions(&rho, 1e-9), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn new_validates_invariants() {
        assert!(TensorDecomposition::with_ground_h2(alpha(0.5, ZERO, 0.6), [ONE, ZERO]).is_err());
        assert!(TensorDecomposition::with_ground_h2(alpha(0.5, c(0.6, 0.0), 0.5), [ONE, ZERO]).is_err());
        assert!(TensorDecomposition::with_ground_h2(alpha(0.5, ZERO, 0.5), [ONE, ONE]).is_err());
    }

    #[test]
    fn sampler_is_deterministic() {
        assert_eq!(random_decomposable(42), random_decomposable(42));
        assert_ne!(random_decomposable(42), random_decomposable(43));
    }
}
