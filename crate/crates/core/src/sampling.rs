//! Seeded random ensembles used by the verification harness and tests.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;
use crate::states::{revalidate, DensityMatrix};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `rows x cols` matrix of independent standard complex normal entries.
pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

/// `G G^dagger / Tr(G G^dagger)` for a Ginibre `G`; full rank almost surely.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let g = ginibre(dim, dim, rng);
    let ggd = &g * &g.adjoint();
    let tr = ggd.trace().re;
    ggd.scale_real(1.0 / tr).hermitian_part()
}

pub fn random_density<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    revalidate(random_density_matrix(dim, rng), "random density matrix").expect("Ginibre ensemble is always valid")
}

/// `(G + G^dagger) / 2` with Ginibre `G`.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ginibre(dim, dim, rng).hermitian_part()
}

/// Random unitary as a product of complex Givens (Jacobi) rotations over
/// every index pair, two layers deep, followed by random diagonal phases.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let mut u = ComplexMatrix::identity(dim);
    for _ in 0..2 {
        for p in 0..dim {
            for q in p + 1..dim {
                let theta: f64 = rng.random::<f64>() * TAU;
                let phi: f64 = rng.random::<f64>() * TAU;
                let (s, c) = theta.sin_cos();
                let phase = Complex64::from_polar(1.0, phi);
                let g = ComplexMatrix::from_fn(dim, dim, |i, j| match (i, j) {
                    _ if i == p && j == p => Complex64::new(c, 0.0),
                    _ if i == q && j == q => Complex64::new(c, 0.0),
                    _ if i == p && j == q => phase * s,
                    _ if i == q && j == p => -phase.conj() * s,
                    _ if i == j => Complex64::new(1.0, 0.0),
                    _ => Complex64::new(0.0, 0.0),
                });
                u = &u * &g;
            }
        }
    }
    let phases: Vec<Complex64> = (0..dim).map(|_| Complex64::from_polar(1.0, rng.random::<f64>() * TAU)).collect();
    u.map_indexed(|_, j, z| z * phases[j])
}
