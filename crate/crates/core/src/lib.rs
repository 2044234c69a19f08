//! Entropy-gain lower bounds for qutrit states realised as two-qubit states.
//!
//! A qutrit `rho` is embedded as a 4x4 two-qubit state with an empty fourth
//! row and column. When that state has the two-term tensor form
//! `sum alpha_nm |e_n><e_m| (x) |h_n><h_m|`, the entropy gain under
//! `Id (x) Omega` is bounded below by `sum_j alpha_jj S(Omega(|h_j><h_j|))`.
//! This crate computes both sides for the amplitude damping channel (and any
//! other qubit channel in Kraus form), together with the linear algebra,
//! state validation and decomposition machinery they need.
//!
//! Modules, bottom up:
//!
//! * [`linalg`]: dense complex matrices, Kronecker product, Jacobi eigensolver.
//! * [`states`]: validated density matrices, entropy, qubit portrait, embedding.
//! * [`channels`]: Kraus channels and amplitude damping.
//! * [`decomposition`]: form conditions, extraction and reconstruction.
//! * [`bounds`]: both sides of the bound, gamma sweeps, Monte Carlo checks.
//! * [`sampling`]: seeded random ensembles.

pub mod bounds;
pub mod channels;
pub mod decomposition;
pub mod error;
pub mod linalg;
pub mod sampling;
pub mod states;

pub use bounds::{
    conditional_qubit_state, default_gamma_grid, entropy_gain, gain_lower_bound, gamma_sweep, induced_qutrit_map,
    verify_bound, verify_ensemble, BoundReport, EnsembleCase, EnsembleSummary, SweepRow, DEFAULT_BOUND_TOL,
};
pub use channels::{
    amplitude_damping, amplitude_damping_closed_form, apply_channel, tensor_with_identity, validate_channel,
    GammaParam, KrausChannel,
};
pub use decomposition::{
    check_form_conditions, extract_decomposition, random_decomposable, reconstruct, FormDiagnostics,
    TensorDecomposition, DEFAULT_FORM_TOL,
};
pub use error::{Error, Result};
pub use linalg::{hermitian_eigen, kron, ComplexMatrix, ComplexScalar, HermitianEigen};
pub use states::{
    embed_qutrit, extract_qutrit, purity, qubit_portrait, validate_density, von_neumann_entropy, DensityMatrix,
    Entropy,
};

pub use num_complex::Complex64;
