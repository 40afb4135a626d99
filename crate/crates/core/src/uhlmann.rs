//! Uhlmann connection and holonomy, the Uhlmann phase, parallel-transport
//! residuals, and processes obeying both transport conditions at once.

use crate::analysis::PhaseResult;
use crate::error::{Error, Result};
use crate::family::{EigenPaths, HamiltonianFamily};
use crate::interferometric::{parallel_residual_interferometric, total_phase, transport_unitary};
use crate::linalg::{
    anti_hermitian_part, eig_hermitian, exp_anti_hermitian, max_abs, spectrum_unchecked, CMatrix,
    HermitianMatrix, Spectrum, UnitaryMatrix,
};
use crate::loops::ParameterLoop;
use crate::state::{gibbs_state, purified_overlap, purify_with_sqrt, Amplitude, DensityMatrix};

/// Closure tolerance of a density-matrix loop.
pub const CLOSURE_TOL: f64 = 1e-10;
/// Eigenvalues closer than this count as one degenerate level.
pub const DEGENERATE_EIGENVALUE_TOL: f64 = 1e-12;
/// Largest accepted residual of a dual-condition process.
pub const PROCESS_RESIDUAL_TOL: f64 = 1e-4;
/// Largest accepted drift of the spectrum of `rho` along a unitary process.
pub const SPECTRUM_DRIFT_TOL: f64 = 1e-10;

/// The Uhlmann connection contracted with one step of a loop.
#[derive(Debug, Clone)]
pub struct UhlmannStep {
    a: CMatrix,
}

impl UhlmannStep {
    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    /// `exp(-A)`, the phase-factor update across the step.
    pub fn propagator(&self) -> UnitaryMatrix {
        exp_anti_hermitian(&(-&self.a))
    }

    /// `max |A + A^dagger|`.
    pub fn anti_hermiticity_defect(&self) -> f64 {
        max_abs(&(&self.a + self.a.adjoint()))
    }
}

/// `A = -sum_nm |n><n|[d sqrt(rho), sqrt(rho)]|m>/(l_n + l_m) <m|` in the
/// eigenbasis of `sqrt_rho`, whose eigenvalues are `sqrt(l_n)`.
fn connection(sqrt_rho: &Spectrum, delta_sqrt: &CMatrix) -> CMatrix {
    let e = sqrt_rho.eigenvectors().as_matrix();
    let s = sqrt_rho.eigenvalues();
    let mut x = e.adjoint() * delta_sqrt * e;
    let n = s.len();
    for i in 0..n {
        for j in 0..n {
            let (li, lj) = (s[i] * s[i], s[j] * s[j]);
            x[(i, j)] = if (li - lj).abs() <= DEGENERATE_EIGENVALUE_TOL {
                num_complex::Complex64::new(0.0, 0.0)
            } else {
                x[(i, j)] * ((s[i] - s[j]) / (li + lj))
            };
        }
    }
    e * x * e.adjoint()
}

fn sqrt_spectrum(rho: &DensityMatrix) -> Spectrum {
    let s = rho.eigenvalues().iter().map(|l| l.sqrt()).collect();
    spectrum_unchecked(s, rho.spectrum().eigenvectors().clone())
}

/// Connection across the step `rho_k -> rho_k1`, evaluated in the
/// eigenbasis of `rho_k`.
pub fn uhlmann_connection_step(rho_k: &DensityMatrix, rho_k1: &DensityMatrix) -> Result<UhlmannStep> {
    if rho_k.dim() != rho_k1.dim() {
        return Err(Error::DimensionMismatch { expected: rho_k.dim(), found: rho_k1.dim() });
    }
    let delta = rho_k1.sqrt().into_matrix() - rho_k.sqrt().into_matrix();
    Ok(UhlmannStep { a: connection(&sqrt_spectrum(rho_k), &delta) })
}

/// Connection across a step with `sqrt(rho)` known at both ends and at the
/// midpoint; second-order accurate in the step.
pub fn uhlmann_connection_midpoint(
    sqrt_start: &HermitianMatrix,
    sqrt_end: &HermitianMatrix,
    sqrt_mid: &Spectrum,
) -> UhlmannStep {
    let delta = sqrt_end.as_matrix() - sqrt_start.as_matrix();
    UhlmannStep { a: connection(sqrt_mid, &delta) }
}

/// Phase factors `V(t_k) = exp(-A_{k-1}) ... exp(-A_0)` for `V(0) = I`.
fn transport_factors(sqrt_nodes: &[HermitianMatrix], sqrt_mids: &[Spectrum]) -> Vec<UnitaryMatrix> {
    let dim = sqrt_nodes[0].dim();
    let mut v = UnitaryMatrix::identity(dim);
    let mut out = Vec::with_capacity(sqrt_nodes.len());
    out.push(v.clone());
    for (k, mid) in sqrt_mids.iter().enumerate() {
        let step = uhlmann_connection_midpoint(&sqrt_nodes[k], &sqrt_nodes[k + 1], mid);
        v = step.propagator().compose(&v);
        out.push(v.clone());
    }
    out
}

fn check_closed(rhos: &[DensityMatrix]) -> Result<()> {
    if rhos.len() < 2 {
        return Err(Error::NotClosed { defect: f64::INFINITY });
    }
    let dim = rhos[0].dim();
    if let Some(r) = rhos.iter().find(|r| r.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: r.dim() });
    }
    let defect = max_abs(&(rhos[0].as_matrix() - rhos[rhos.len() - 1].as_matrix()));
    if defect > CLOSURE_TOL {
        return Err(Error::NotClosed { defect });
    }
    Ok(())
}

/// Path-ordered holonomy `exp(-A_{n-1}) ... exp(-A_0)` of a closed sequence
/// of density matrices, with `sqrt(rho)` at each segment midpoint taken as
/// the mean of its endpoint values.
pub fn holonomy(rhos: &[DensityMatrix]) -> Result<UnitaryMatrix> {
    check_closed(rhos)?;
    let sqrt_nodes: Vec<HermitianMatrix> = rhos.iter().map(DensityMatrix::sqrt).collect();
    let sqrt_mids: Vec<Spectrum> = sqrt_nodes
        .windows(2)
        .map(|w| eig_hermitian(&HermitianMatrix::symmetrized((w[0].as_matrix() + w[1].as_matrix()).scale(0.5))))
        .collect();
    let factors = transport_factors(&sqrt_nodes, &sqrt_mids);
    finish_holonomy(factors, rhos.len() - 1)
}

fn finish_holonomy(mut factors: Vec<UnitaryMatrix>, n_steps: usize) -> Result<UnitaryMatrix> {
    let last = factors.pop().expect("at least one factor");
    UnitaryMatrix::with_tolerance(last.into_matrix(), 1e-8 * n_steps.max(1) as f64)
}

/// Gibbs states of a family at the nodes and segment midpoints of a loop.
#[derive(Debug, Clone)]
pub struct GibbsPath {
    nodes: Vec<DensityMatrix>,
    sqrt_nodes: Vec<HermitianMatrix>,
    sqrt_mids: Vec<Spectrum>,
}

impl GibbsPath {
    pub fn new(family: &dyn HamiltonianFamily, lp: &ParameterLoop, beta: f64) -> Result<Self> {
        let mut nodes = lp
            .points()
            .iter()
            .map(|&p| gibbs_state(&family.hamiltonian(p), beta))
            .collect::<Result<Vec<_>>>()?;
        let last = nodes.len() - 1;
        nodes[last] = nodes[0].clone();
        let sqrt_mids = (0..lp.n_segments())
            .map(|k| Ok(sqrt_spectrum(&gibbs_state(&family.hamiltonian(lp.segment_midpoint(k)), beta)?)))
            .collect::<Result<Vec<_>>>()?;
        let sqrt_nodes = nodes.iter().map(DensityMatrix::sqrt).collect();
        Ok(Self { nodes, sqrt_nodes, sqrt_mids })
    }

    pub fn nodes(&self) -> &[DensityMatrix] {
        &self.nodes
    }

    pub fn sqrt_nodes(&self) -> &[HermitianMatrix] {
        &self.sqrt_nodes
    }

    /// Phase factors `V(t_k)` of the horizontal lift starting at `V(0) = I`.
    pub fn phase_factors(&self) -> Vec<UnitaryMatrix> {
        transport_factors(&self.sqrt_nodes, &self.sqrt_mids)
    }

    /// The Uhlmann holonomy of the loop.
    pub fn holonomy(&self) -> Result<UnitaryMatrix> {
        finish_holonomy(self.phase_factors(), self.nodes.len() - 1)
    }

    /// `W(t_k) = sqrt(rho(t_k)) V(t_k)` for given phase factors.
    pub fn amplitudes(&self, factors: &[UnitaryMatrix]) -> Vec<Amplitude> {
        self.sqrt_nodes.iter().zip(factors).map(|(s, v)| purify_with_sqrt(s, v)).collect()
    }

    /// Largest deviation of any node's spectrum from the first node's.
    pub fn spectrum_drift(&self) -> f64 {
        let first = self.nodes[0].eigenvalues();
        self.nodes
            .iter()
            .flat_map(|r| r.eigenvalues().iter().zip(first).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }
}

/// Uhlmann holonomy of the Gibbs states of `family` along `lp`, with exact
/// midpoint states.
pub fn holonomy_along(family: &dyn HamiltonianFamily, lp: &ParameterLoop, beta: f64) -> Result<UnitaryMatrix> {
    GibbsPath::new(family, lp, beta)?.holonomy()
}

/// `G_U = Tr(rho0 U_gamma)` and its argument.
pub fn uhlmann_phase(rho0: &DensityMatrix, u_gamma: &UnitaryMatrix) -> Result<PhaseResult> {
    total_phase(rho0, u_gamma)
}

/// `max_k |W_k^dagger W_{k+1} - W_{k+1}^dagger W_k| / dt`: how far each step
/// is from satisfying `W^dagger dW = dW^dagger W`.
pub fn uhlmann_residual(ws: &[Amplitude], dt: f64) -> f64 {
    ws.windows(2)
        .map(|w| {
            let m = w[0].w().adjoint() * w[1].w();
            max_abs(&(&m - m.adjoint())) / dt
        })
        .fold(0.0, f64::max)
}

/// `max_k |dW_k W_k^dagger - W_k dW_k^dagger| / dt`, the condition in its
/// right-multiplied form.
pub fn uhlmann_residual_right(ws: &[Amplitude], dt: f64) -> f64 {
    ws.windows(2)
        .map(|w| {
            let dw = w[1].w() - w[0].w();
            let m = &dw * w[0].w().adjoint();
            max_abs(&(&m - m.adjoint())) / dt
        })
        .fold(0.0, f64::max)
}

/// `max |W(0) W(tau)^dagger - W(tau) W(0)^dagger|`: nonzero when the end
/// points of a horizontal lift are not parallel to each other.
pub fn non_transitivity_witness(w0: &Amplitude, w_tau: &Amplitude) -> f64 {
    let m = w0.w() * w_tau.w().adjoint();
    max_abs(&(&m - m.adjoint()))
}

/// A cyclic process `W(t) = U_s(t) W(0) U_a(t)` that transports the system
/// in phase level by level and the amplitude horizontally.
#[derive(Debug, Clone)]
pub struct DualProcess {
    us: Vec<UnitaryMatrix>,
    ua: Vec<UnitaryMatrix>,
    v: Vec<UnitaryMatrix>,
    rho0: DensityMatrix,
    rho_a0: DensityMatrix,
    path: GibbsPath,
    paths: EigenPaths,
    dt: f64,
}

/// The four residuals of a [`DualProcess`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessResiduals {
    pub interferometric: f64,
    pub uhlmann: f64,
    pub split: f64,
    pub ancilla_balance: f64,
}

impl ProcessResiduals {
    pub fn max(&self) -> f64 {
        self.interferometric.max(self.uhlmann).max(self.split).max(self.ancilla_balance)
    }

    pub fn named(&self) -> [(&'static str, f64); 4] {
        [
            ("interferometric_parallel", self.interferometric),
            ("uhlmann_parallel", self.uhlmann),
            ("split_parallel", self.split),
            ("ancilla_balance", self.ancilla_balance),
        ]
    }
}

impl DualProcess {
    pub fn us(&self) -> &[UnitaryMatrix] {
        &self.us
    }

    pub fn ua(&self) -> &[UnitaryMatrix] {
        &self.ua
    }

    pub fn v(&self) -> &[UnitaryMatrix] {
        &self.v
    }

    pub fn rho0(&self) -> &DensityMatrix {
        &self.rho0
    }

    pub fn rho_a0(&self) -> &DensityMatrix {
        &self.rho_a0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// `W(t_k) = sqrt(rho(t_k)) V(t_k)`.
    pub fn amplitudes(&self) -> Vec<Amplitude> {
        self.path.amplitudes(&self.v)
    }

    /// `U_gamma = V(tau) V(0)^dagger`.
    pub fn holonomy(&self) -> &UnitaryMatrix {
        &self.v[self.v.len() - 1]
    }

    /// `<W(0)|W(tau)>` and its argument, the Uhlmann phase.
    pub fn uhlmann(&self) -> Result<PhaseResult> {
        let ws = self.amplitudes();
        PhaseResult::defined(purified_overlap(&ws[0], &ws[ws.len() - 1])?)
    }

    /// `Tr[rho(0) U_s(tau)]` and its argument, the interferometric phase.
    pub fn interferometric(&self) -> Result<PhaseResult> {
        total_phase(&self.rho0, &self.us[self.us.len() - 1])
    }

    pub fn non_transitivity(&self) -> f64 {
        let ws = self.amplitudes();
        non_transitivity_witness(&ws[0], &ws[ws.len() - 1])
    }

    pub fn residuals(&self) -> ProcessResiduals {
        ProcessResiduals {
            interferometric: parallel_residual_interferometric(&self.us, &self.paths, self.dt),
            uhlmann: uhlmann_residual(&self.amplitudes(), self.dt),
            split: split_condition_residual(&self.rho0, &self.us, &self.ua, self.dt),
            ancilla_balance: ancilla_balance_residual(&self.rho0, &self.rho_a0, &self.us, &self.ua, self.dt),
        }
    }
}

/// Residual of the Uhlmann condition written in terms of `U_s` and `U_a`
/// (with `V(0) = I`):
/// `U_a^+ W0^+ U_s^+ dU_s W0 U_a + U_a^+ W0^+ W0 dU_a
///  = U_a^+ W0^+ dU_s^+ U_s W0 U_a + dU_a^+ W0^+ W0 U_a`,
/// differences taken across each step and the other factors at its midpoint.
pub fn split_condition_residual(rho0: &DensityMatrix, us: &[UnitaryMatrix], ua: &[UnitaryMatrix], dt: f64) -> f64 {
    let w0 = rho0.sqrt().into_matrix();
    let w0w0 = w0.adjoint() * &w0;
    let mut worst: f64 = 0.0;
    for k in 0..us.len().min(ua.len()).saturating_sub(1) {
        let ms = (us[k].as_matrix() + us[k + 1].as_matrix()).scale(0.5);
        let ma = (ua[k].as_matrix() + ua[k + 1].as_matrix()).scale(0.5);
        let ds = us[k + 1].as_matrix() - us[k].as_matrix();
        let da = ua[k + 1].as_matrix() - ua[k].as_matrix();
        let lhs = ma.adjoint() * w0.adjoint() * ms.adjoint() * &ds * &w0 * &ma + ma.adjoint() * &w0w0 * &da;
        let rhs = ma.adjoint() * w0.adjoint() * ds.adjoint() * &ms * &w0 * &ma + da.adjoint() * &w0w0 * &ma;
        worst = worst.max(max_abs(&(lhs - rhs)) / dt);
    }
    worst
}

/// `max_k |Tr[rho(0) U_s^+ dU_s] + Tr[rho_a(0)^T dU_a U_a^+]| / dt`, each
/// generator taken as the anti-Hermitian part of its step.
pub fn ancilla_balance_residual(
    rho0: &DensityMatrix,
    rho_a0: &DensityMatrix,
    us: &[UnitaryMatrix],
    ua: &[UnitaryMatrix],
    dt: f64,
) -> f64 {
    let rho_a_t = rho_a0.as_matrix().transpose();
    let mut worst: f64 = 0.0;
    for k in 0..us.len().min(ua.len()).saturating_sub(1) {
        let gs = anti_hermitian_part(&(us[k].as_matrix().adjoint() * us[k + 1].as_matrix()));
        let ga = anti_hermitian_part(&(ua[k + 1].as_matrix() * ua[k].as_matrix().adjoint()));
        let total = rho0.expectation(&gs) + (&rho_a_t * ga).trace();
        worst = worst.max(total.norm() / dt);
    }
    worst
}

/// Builds the process without checking its residuals.
pub fn build_dual_process_unchecked(
    family: &dyn HamiltonianFamily,
    lp: &ParameterLoop,
    rho0: &DensityMatrix,
) -> Result<DualProcess> {
    let beta = rho0
        .beta()
        .ok_or_else(|| Error::InvalidArgument("rho0 must be a Gibbs state of the family".into()))?;
    let start = gibbs_state(&family.hamiltonian(lp.points()[0]), beta)?;
    let mismatch = max_abs(&(start.as_matrix() - rho0.as_matrix()));
    if mismatch > CLOSURE_TOL {
        return Err(Error::InvalidArgument(format!(
            "rho0 is not the Gibbs state at the loop start (deviation {mismatch:e})"
        )));
    }
    let path = GibbsPath::new(family, lp, beta)?;
    let drift = path.spectrum_drift();
    if drift > SPECTRUM_DRIFT_TOL {
        return Err(Error::NonUnitaryProcess { drift });
    }
    let transport = transport_unitary(family, lp, rho0)?;
    let v = path.phase_factors();
    let us = transport.steps().to_vec();
    let ua = us.iter().zip(&v).map(|(s, v)| s.adjoint().compose(v)).collect();
    let rho_a0 = DensityMatrix::new(HermitianMatrix::symmetrized(rho0.as_matrix().transpose()))?;
    Ok(DualProcess {
        us,
        ua,
        v,
        rho0: rho0.clone(),
        rho_a0,
        path,
        paths: transport.paths().clone(),
        dt: lp.dt(),
    })
}

/// Builds `U_s` from level-wise parallel transport, `V` from the Uhlmann
/// holonomy's partial products and `U_a = U_s^dagger V`, then checks all
/// four residuals against [`PROCESS_RESIDUAL_TOL`].
pub fn build_dual_process(
    family: &dyn HamiltonianFamily,
    lp: &ParameterLoop,
    rho0: &DensityMatrix,
) -> Result<DualProcess> {
    let process = build_dual_process_unchecked(family, lp, rho0)?;
    for (check, value) in process.residuals().named() {
        if !(value <= PROCESS_RESIDUAL_TOL) {
            return Err(Error::ToleranceExceeded { check, value, tolerance: PROCESS_RESIDUAL_TOL });
        }
    }
    Ok(process)
}
