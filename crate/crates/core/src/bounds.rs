//! Both sides of the entropy-gain lower bound
//!
//! `S((Id (x) Omega)(rho)) - S(rho) >= sum_j alpha_jj S(Omega(|h_j><h_j|))`
//!
//! for two-term tensor states, the induced map on the embedded qutrit under
//! amplitude damping, and the sweep / Monte Carlo harness that checks it.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::channels::{amplitude_damping, apply_channel, tensor_with_identity, GammaParam, KrausChannel};
use crate::decomposition::{random_decomposable, reconstruct, TensorDecomposition};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{revalidate, DensityMatrix};

/// Slack floor for "the bound holds".
pub const DEFAULT_BOUND_TOL: f64 = 1e-8;

/// `r11 + r22` at or below this cannot be normalised.
pub const MIN_CONDITIONAL_WEIGHT: f64 = 1e-12;

/// `{0, 0.1, ..., 1}`.
pub fn default_gamma_grid() -> Vec<f64> {
    (0..=10).map(|k| k as f64 / 10.0).collect()
}

/// Outcome of one bound check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    /// Entropy gain (nats).
    pub lhs: f64,
    /// Weighted output entropies (nats).
    pub rhs: f64,
    /// `lhs - rhs`.
    pub slack: f64,
    pub holds: bool,
    pub tol: f64,
}

impl BoundReport {
    fn new(lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = lhs - rhs;
        Self { lhs, rhs, slack, holds: slack >= -tol, tol }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub gamma: f64,
    pub entropy_in: f64,
    pub entropy_out: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// `S((Id (x) ch)(rho)) - S(rho)`, where the identity acts on whatever factor
/// is left after `ch.in_dim()` divides `rho.dim()`.
pub fn entropy_gain(ch: &KrausChannel, rho: &DensityMatrix) -> Result<f64> {
    let (_, gain) = output_and_gain(ch, rho)?;
    Ok(gain)
}

fn output_and_gain(ch: &KrausChannel, rho: &DensityMatrix) -> Result<(DensityMatrix, f64)> {
    let k = ch.in_dim();
    if k == 0 || !rho.dim().is_multiple_of(k) {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} is not a multiple of the channel input dimension {k}",
            rho.dim()
        )));
    }
    let lifted = tensor_with_identity(ch, rho.dim() / k)?;
    let out = apply_channel(&lifted, rho)?;
    let gain = out.entropy() - rho.entropy();
    Ok((out, gain))
}

/// `sum_j alpha_jj S(ch(|h_j><h_j|))` for any qubit channel.
pub fn gain_lower_bound(dec: &TensorDecomposition, ch: &KrausChannel) -> Result<f64> {
    if ch.in_dim() != 2 {
        return Err(Error::DimensionMismatch(format!("bound needs a qubit channel, got in_dim = {}", ch.in_dim())));
    }
    let mut total = 0.0;
    for j in 0..2 {
        let weight = dec.weight(j);
        if weight == 0.0 {
            continue;
        }
        let pure = revalidate(ComplexMatrix::projector(&dec.h(j)), "pure component")?;
        total += weight * apply_channel(ch, &pure)?.entropy();
    }
    Ok(total)
}

pub fn verify_bound(dec: &TensorDecomposition, ch: &KrausChannel, tol: f64) -> Result<BoundReport> {
    let rho = reconstruct(dec)?;
    let lhs = entropy_gain(ch, &rho)?;
    let rhs = gain_lower_bound(dec, ch)?;
    Ok(BoundReport::new(lhs, rhs, tol))
}

fn expect_qutrit(rho3: &DensityMatrix) -> Result<()> {
    if rho3.dim() != 3 {
        return Err(Error::DimensionMismatch(format!("expected a qutrit (d = 3), got d = {}", rho3.dim())));
    }
    Ok(())
}

/// The qutrit map induced by `Id (x) amplitude_damping(g)` on the embedded
/// state, written entrywise: rows/columns 1 and 3 are untouched, row/column
/// 2 is scaled by `sqrt(1-g)`, and `g r22` moves into `r11`.
pub fn induced_qutrit_map(g: GammaParam, rho3: &DensityMatrix) -> Result<DensityMatrix> {
    expect_qutrit(rho3)?;
    let gamma = g.value();
    let damp = (1.0 - gamma).sqrt();
    let scale = [1.0, damp, 1.0];
    let m = rho3.matrix().map_indexed(|i, j, z| {
        if i == 1 && j == 1 {
            z * (1.0 - gamma)
        } else if i == 0 && j == 0 {
            z + rho3.get(1, 1) * gamma
        } else {
            z * (scale[i] * scale[j])
        }
    });
    revalidate(m, "induced qutrit map")
}

/// Upper-left 2x2 block of a qutrit normalised by `r11 + r22`.
pub fn conditional_qubit_state(rho3: &DensityMatrix) -> Result<DensityMatrix> {
    expect_qutrit(rho3)?;
    let weight = rho3.get(0, 0).re + rho3.get(1, 1).re;
    if !(weight > MIN_CONDITIONAL_WEIGHT) {
        return Err(Error::ZeroWeight { weight });
    }
    let block = rho3.matrix().block(0, 0, 2, 2).scale(Complex64::new(1.0 / weight, 0.0));
    revalidate(block, "conditional qubit state")
}

/// One row per grid point, in grid order.
pub fn gamma_sweep(dec: &TensorDecomposition, grid: &[f64]) -> Result<Vec<SweepRow>> {
    let gammas = grid.iter().map(|&g| GammaParam::new(g)).collect::<Result<Vec<_>>>()?;
    let rho = reconstruct(dec)?;
    let entropy_in = rho.entropy();
    gammas
        .into_iter()
        .map(|g| {
            let ch = amplitude_damping(g);
            let (out, lhs) = output_and_gain(&ch, &rho)?;
            let rhs = gain_lower_bound(dec, &ch)?;
            Ok(SweepRow { gamma: g.value(), entropy_in, entropy_out: out.entropy(), lhs, rhs, slack: lhs - rhs })
        })
        .collect()
}

/// One `(seed, gamma)` evaluation of the Monte Carlo check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleCase {
    pub seed: u64,
    pub gamma: f64,
    pub report: BoundReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnsembleSummary {
    pub checked: usize,
    pub min_slack: f64,
    /// Case with the smallest slack; first in `(seed, gamma)` order on ties.
    pub worst: Option<EnsembleCase>,
    /// Cases with `slack < -tol`, in `(seed, gamma)` order.
    pub violations: Vec<EnsembleCase>,
}

impl EnsembleSummary {
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Ensemble seeds are `base_seed, base_seed + 1, ...` (wrapping).
pub fn ensemble_seed(base_seed: u64, index: usize) -> u64 {
    base_seed.wrapping_add(index as u64)
}

/// Checks the bound for amplitude damping on `samples` seeded decomposable
/// states across `grid`. States are evaluated in parallel; the summary is
/// independent of scheduling.
pub fn verify_ensemble(samples: usize, base_seed: u64, grid: &[f64], tol: f64) -> Result<EnsembleSummary> {
    let channels: Vec<(f64, KrausChannel)> = grid
        .iter()
        .map(|&g| GammaParam::new(g).map(|p| (g, amplitude_damping(p))))
        .collect::<Result<_>>()?;

    let per_state: Vec<Vec<EnsembleCase>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let seed = ensemble_seed(base_seed, i);
            let dec = random_decomposable(seed);
            let rho = reconstruct(&dec)?;
            channels
                .iter()
                .map(|(gamma, ch)| {
                    let lhs = entropy_gain(ch, &rho)?;
                    let rhs = gain_lower_bound(&dec, ch)?;
                    Ok(EnsembleCase { seed, gamma: *gamma, report: BoundReport::new(lhs, rhs, tol) })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut summary = EnsembleSummary { checked: 0, min_slack: f64::INFINITY, worst: None, violations: Vec::new() };
    for case in per_state.into_iter().flatten() {
        summary.checked += 1;
        if case.report.slack < summary.min_slack {
            summary.min_slack = case.report.slack;
            summary.worst = Some(case);
        }
        if !case.report.holds {
            summary.violations.push(case);
        }
    }
    Ok(summary)
}
