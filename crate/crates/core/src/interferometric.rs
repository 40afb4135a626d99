//! Interferometric phase: per-level parallel transport, the transport
//! unitary, total and dynamical phases, and the parallel-transport residual.

use num_complex::Complex64;

use crate::analysis::PhaseResult;
use crate::error::{Error, Result};
use crate::family::{eigen_paths, EigenPaths, HamiltonianFamily};
use crate::linalg::{anti_hermitian_part, max_abs, principal_arg, CMatrix, HermitianMatrix, UnitaryMatrix};
use crate::loops::ParameterLoop;
use crate::state::DensityMatrix;

/// Largest accepted per-level transport residual.
pub const RESIDUAL_TOL: f64 = 1e-6;
const COMMUTATOR_TOL: f64 = 1e-10;
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// `U(t_k)` at every node of a loop, with the per-level phases at the end.
#[derive(Debug, Clone)]
pub struct TransportUnitary {
    steps: Vec<UnitaryMatrix>,
    level_phases: Vec<f64>,
    paths: EigenPaths,
    dt: f64,
}

impl TransportUnitary {
    pub fn steps(&self) -> &[UnitaryMatrix] {
        &self.steps
    }

    pub fn last(&self) -> &UnitaryMatrix {
        &self.steps[self.steps.len() - 1]
    }

    /// Accumulated Berry phase of each level over the whole loop.
    pub fn level_phases(&self) -> &[f64] {
        &self.level_phases
    }

    pub fn paths(&self) -> &EigenPaths {
        &self.paths
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn residual(&self) -> f64 {
        parallel_residual_interferometric(&self.steps, &self.paths, self.dt)
    }
}

/// Partial Berry phases `beta_n(0 -> t_k)` for every node `k`.
fn partial_phases(paths: &EigenPaths, level: usize) -> Result<Vec<f64>> {
    let mut acc = vec![0.0];
    let mut beta = 0.0;
    for z in paths.overlaps(level) {
        beta -= principal_arg(z)?;
        acc.push(beta);
    }
    Ok(acc)
}

/// Discrete Berry phase `-sum_k arg <n(t_k)|n(t_{k+1})>` of one level around
/// the loop, without reduction modulo `2 pi`.
pub fn berry_phase_level(family: &dyn HamiltonianFamily, lp: &ParameterLoop, level: usize) -> Result<f64> {
    let paths = eigen_paths(family, lp)?;
    berry_phase_from_paths(&paths, level)
}

pub fn berry_phase_from_paths(paths: &EigenPaths, level: usize) -> Result<f64> {
    if level >= paths.n_levels() {
        return Err(Error::InvalidArgument(format!(
            "level {level} out of range for {} levels",
            paths.n_levels()
        )));
    }
    Ok(*partial_phases(paths, level)?.last().expect("at least one node"))
}

/// Builds `U(t_k) = sum_n e^{i beta_n(0 -> t_k)} |n(t_k)><n(t_0)|`, the
/// evolution that keeps every eigenstate of `rho0` in phase with itself.
pub fn transport_unitary(
    family: &dyn HamiltonianFamily,
    lp: &ParameterLoop,
    rho0: &DensityMatrix,
) -> Result<TransportUnitary> {
    let dim = family.dim();
    if rho0.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: rho0.dim() });
    }
    let h0 = family.hamiltonian(lp.points()[0]);
    let commutator = rho0.as_matrix() * h0.as_matrix() - h0.as_matrix() * rho0.as_matrix();
    let defect = max_abs(&commutator);
    if defect > COMMUTATOR_TOL {
        return Err(Error::InvalidArgument(format!(
            "rho0 does not commute with the initial Hamiltonian (defect {defect:e})"
        )));
    }
    let paths = eigen_paths(family, lp)?;
    let levels = paths.n_levels();
    let phases = (0..levels).map(|n| partial_phases(&paths, n)).collect::<Result<Vec<_>>>()?;
    let tol = 1e-10 * lp.n_segments().max(1) as f64;
    let steps = (0..paths.n_nodes())
        .map(|k| {
            let mut u = CMatrix::zeros(dim, dim);
            for n in 0..levels {
                let factor = Complex64::from_polar(1.0, phases[n][k]);
                u += paths.vector(k, n) * paths.vector(0, n).adjoint() * factor;
            }
            UnitaryMatrix::with_tolerance(u, tol)
        })
        .collect::<Result<Vec<_>>>()?;
    let level_phases = phases.iter().map(|p| p[p.len() - 1]).collect();
    let transport = TransportUnitary { steps, level_phases, paths, dt: lp.dt() };
    let residual = transport.residual();
    if residual > RESIDUAL_TOL {
        return Err(Error::ToleranceExceeded { check: "interferometric_parallel", value: residual, tolerance: RESIDUAL_TOL });
    }
    Ok(transport)
}

/// `G = sum_n lambda_n e^{i beta_n}` and its argument.
pub fn interferometric_phase(weights: &[f64], phases: &[f64]) -> Result<PhaseResult> {
    if weights.len() != phases.len() {
        return Err(Error::DimensionMismatch { expected: weights.len(), found: phases.len() });
    }
    if let Some(&w) = weights.iter().find(|&&w| !(w > 0.0)) {
        return Err(Error::InvalidArgument(format!("weights must be positive, got {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::NotNormalized { trace: total });
    }
    let g: Complex64 = weights.iter().zip(phases).map(|(&w, &b)| Complex64::from_polar(w, b)).sum();
    PhaseResult::defined(g)
}

/// `G = Tr(rho0 U)` and its argument.
pub fn total_phase(rho0: &DensityMatrix, u: &UnitaryMatrix) -> Result<PhaseResult> {
    if rho0.dim() != u.dim() {
        return Err(Error::DimensionMismatch { expected: rho0.dim(), found: u.dim() });
    }
    PhaseResult::defined(rho0.expectation(u.as_matrix()))
}

/// `-integral Tr[rho(t) H(t)] dt` by the trapezoidal rule.
pub fn dynamical_phase(
    rhos: &[DensityMatrix],
    hams: &[HermitianMatrix],
    dt: f64,
) -> Result<f64> {
    if rhos.len() != hams.len() {
        return Err(Error::DimensionMismatch { expected: rhos.len(), found: hams.len() });
    }
    let energies = rhos
        .iter()
        .zip(hams)
        .map(|(r, h)| {
            if r.dim() != h.dim() {
                return Err(Error::DimensionMismatch { expected: r.dim(), found: h.dim() });
            }
            Ok(r.expectation(h.as_matrix()).re)
        })
        .collect::<Result<Vec<f64>>>()?;
    let integral: f64 = energies.windows(2).map(|w| 0.5 * (w[0] + w[1]) * dt).sum();
    Ok(-integral)
}

/// `max_{k,n} |<n(t_k)| (U(t_{k+1}) U(t_k)^dagger - I) |n(t_k)>| / dt`, with
/// the generator taken as the anti-Hermitian part of the step.
pub fn parallel_residual_interferometric(steps: &[UnitaryMatrix], paths: &EigenPaths, dt: f64) -> f64 {
    assert_eq!(steps.len(), paths.n_nodes(), "steps and eigenvector paths must share the grid");
    let mut worst: f64 = 0.0;
    for k in 0..steps.len() - 1 {
        let gen = anti_hermitian_part(&(steps[k + 1].as_matrix() * steps[k].as_matrix().adjoint()));
        for n in 0..paths.n_levels() {
            let v = paths.vector(k, n);
            let z = v.dotc(&(&gen * v));
            worst = worst.max(z.norm() / dt);
        }
    }
    worst
}

/// Global phase process `U(t) = e^{i omega t}`, a transport that violates
/// the parallel condition at rate `omega`.
pub fn global_phase_process(dim: usize, omega: f64, times: &[f64]) -> Vec<UnitaryMatrix> {
    times
        .iter()
        .map(|&t| UnitaryMatrix::global_phase(dim, omega * t))
        .collect()
}
