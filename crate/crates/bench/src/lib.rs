//! Fixed inputs shared by the benchmarks.

use qutrit_gain_core::sampling::{random_density, random_hermitian, rng_from_seed};
use qutrit_gain_core::{random_decomposable, reconstruct, ComplexMatrix, DensityMatrix, TensorDecomposition};

pub const SEED: u64 = 1234;

/// A random 4x4 Hermitian matrix.
pub fn hermitian4() -> ComplexMatrix {
    random_hermitian(4, &mut rng_from_seed(SEED))
}

/// A random full-rank qutrit state.
pub fn qutrit_state() -> DensityMatrix {
    random_density(3, &mut rng_from_seed(SEED))
}

pub fn decomposition() -> TensorDecomposition {
    random_decomposable(SEED)
}

/// The two-mode state of [`decomposition`].
pub fn two_mode_state() -> DensityMatrix {
    reconstruct(&decomposition()).expect("sampler output reconstructs")
}
