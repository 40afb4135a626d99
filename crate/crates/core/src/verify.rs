//! The verification suite: residual thresholds, closed-form cross-checks,
//! convergence orders and structural properties, run on the shipped models.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::analysis::{find_tc, Method, PhaseKind};
use crate::error::Result;
use crate::family::{eigen_paths, EigenPaths, Eigenpairs, HamiltonianFamily};
use crate::interferometric::berry_phase_from_paths;
use crate::linalg::{c, max_abs};
use crate::loops::{equator_loop, meridian_loop, SpherePoint};
use crate::models::{
    chi_three_level, diagonalizer_transport_residual, g_interferometric_three_level,
    g_interferometric_three_level_transport, g_uhlmann_spin_half, g_uhlmann_three_level,
    uhlmann_holonomy_three_level, ModelConfig, ThreeLevel, TwoLevel,
};
use crate::state::gibbs_state;
use crate::uhlmann::{build_dual_process_unchecked, holonomy_along, DualProcess, PROCESS_RESIDUAL_TOL};

/// Steps per winding used when none is given.
pub const DEFAULT_VERIFY_STEPS: usize = 4000;

/// How a check's value is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub value: f64,
    pub bound: Bound,
    pub threshold: f64,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, value: f64, bound: Bound, threshold: f64, detail: impl Into<String>) -> Self {
        let passed = match bound {
            Bound::AtMost => value <= threshold,
            Bound::AtLeast => value >= threshold,
        };
        Self { name, value, bound, threshold, passed, detail: detail.into() }
    }

    fn failed(name: &'static str, detail: impl Into<String>) -> Self {
        Self { name, value: f64::NAN, bound: Bound::AtMost, threshold: f64::NAN, passed: false, detail: detail.into() }
    }
}

type CheckFn = fn(usize) -> Result<CheckOutcome>;

/// Every check by name, in execution order.
pub const CHECKS: &[(&str, CheckFn)] = &[
    ("interferometric-residual", interferometric_residual),
    ("uhlmann-residual", uhlmann_residual_check),
    ("split-residual", split_residual),
    ("ancilla-balance", ancilla_balance),
    ("holonomy-closed-form", holonomy_closed_form),
    ("holonomy-convergence", holonomy_convergence),
    ("uhlmann-residual-convergence", uhlmann_residual_convergence),
    ("dual-process-uhlmann", dual_process_uhlmann),
    ("dual-process-interferometric", dual_process_interferometric),
    ("interferometric-transport-sum", interferometric_transport_sum),
    ("spin-half-uhlmann", spin_half_uhlmann),
    ("non-transitivity", non_transitivity),
    ("berry-limit", berry_limit),
    ("holonomy-unitarity", holonomy_unitarity),
    ("berry-gauge-invariance", berry_gauge_invariance),
    ("gibbs-covariance", gibbs_covariance),
    ("chi-limits", chi_limits),
    ("degenerate-pairs", degenerate_pairs),
    ("meridian-only", meridian_only),
    ("uhlmann-tc", uhlmann_tc),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}

/// Runs the checks named in `only` (all when empty) at `n_steps` steps per
/// winding. Returns `None` for an unknown name.
pub fn run_checks(n_steps: usize, only: &[String]) -> Option<Vec<CheckOutcome>> {
    if only.iter().any(|n| !CHECKS.iter().any(|(name, _)| name == n)) {
        return None;
    }
    Some(
        CHECKS
            .iter()
            .filter(|(name, _)| only.is_empty() || only.iter().any(|o| o == name))
            .map(|(name, f)| f(n_steps).unwrap_or_else(|e| CheckOutcome::failed(name, format!("{} ({})", e, e.code()))))
            .collect(),
    )
}

const BETA_R: f64 = 2.0;

fn three_level_process(omega: u32, beta: f64, n_steps: usize) -> Result<DualProcess> {
    let family = ThreeLevel::new(1.0);
    let lp = meridian_loop(0.7, omega, n_steps)?;
    let rho0 = gibbs_state(&family.hamiltonian(lp.points()[0]), beta)?;
    build_dual_process_unchecked(&family, &lp, &rho0)
}

fn interferometric_residual(n: usize) -> Result<CheckOutcome> {
    let p = three_level_process(1, BETA_R, n)?;
    Ok(CheckOutcome::new("interferometric-residual", p.residuals().interferometric, Bound::AtMost, PROCESS_RESIDUAL_TOL, "per-level transport, three-level meridian, bR = 2"))
}

fn uhlmann_residual_check(n: usize) -> Result<CheckOutcome> {
    let p = three_level_process(1, BETA_R, n)?;
    Ok(CheckOutcome::new("uhlmann-residual", p.residuals().uhlmann, Bound::AtMost, PROCESS_RESIDUAL_TOL, "W^+ dW - dW^+ W along the horizontal lift"))
}

fn split_residual(n: usize) -> Result<CheckOutcome> {
    let p = three_level_process(1, BETA_R, n)?;
    Ok(CheckOutcome::new("split-residual", p.residuals().split, Bound::AtMost, PROCESS_RESIDUAL_TOL, "Uhlmann condition in terms of U_s and U_a"))
}

fn ancilla_balance(n: usize) -> Result<CheckOutcome> {
    let p = three_level_process(1, BETA_R, n)?;
    Ok(CheckOutcome::new("ancilla-balance", p.residuals().ancilla_balance, Bound::AtMost, PROCESS_RESIDUAL_TOL, "Tr[rho U_s^+ dU_s] + Tr[rho_a^T dU_a U_a^+]"))
}

fn holonomy_error(beta: f64, omega: u32, n: usize) -> Result<f64> {
    let phi0 = 0.7;
    let u = holonomy_along(&ThreeLevel::new(1.0), &meridian_loop(phi0, omega, n)?, beta)?;
    let closed = uhlmann_holonomy_three_level(beta, 1.0, omega, phi0);
    Ok(max_abs(&(u.as_matrix() - closed.as_matrix())))
}

fn holonomy_closed_form(n: usize) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for &beta in &[0.5, 1.0, 2.0, 4.0] {
        for omega in 1..=2 {
            worst = worst.max(holonomy_error(beta, omega, n)?);
        }
    }
    Ok(CheckOutcome::new("holonomy-closed-form", worst, Bound::AtMost, 1e-6, "entrywise, bR in {0.5, 1, 2, 4}, omega in {1, 2}"))
}

fn order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

fn holonomy_convergence(n: usize) -> Result<CheckOutcome> {
    let coarse = holonomy_error(BETA_R, 1, n)?;
    let fine = holonomy_error(BETA_R, 1, 2 * n)?;
    Ok(CheckOutcome::new("holonomy-convergence", order(coarse, fine), Bound::AtLeast, 1.9, format!("errors {coarse:.3e} -> {fine:.3e}")))
}

fn uhlmann_residual_convergence(n: usize) -> Result<CheckOutcome> {
    let coarse = three_level_process(1, BETA_R, n)?.residuals().uhlmann;
    let fine = three_level_process(1, BETA_R, 2 * n)?.residuals().uhlmann;
    Ok(CheckOutcome::new("uhlmann-residual-convergence", order(coarse, fine), Bound::AtLeast, 1.9, format!("residuals {coarse:.3e} -> {fine:.3e}")))
}

fn dual_process_uhlmann(n: usize) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for omega in 1..=2 {
        let p = three_level_process(omega, BETA_R, n)?;
        let g = p.uhlmann()?.amplitude;
        worst = worst.max((g - g_uhlmann_three_level(BETA_R, 1.0, omega)?).norm());
    }
    Ok(CheckOutcome::new("dual-process-uhlmann", worst, Bound::AtMost, 1e-6, "<W(0)|W(tau)> against G_U, omega in {1, 2}"))
}

fn dual_process_interferometric(n: usize) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for omega in 1..=2 {
        let p = three_level_process(omega, BETA_R, n)?;
        let g = p.interferometric()?.amplitude;
        worst = worst.max((g - g_interferometric_three_level(BETA_R, 1.0, omega)?).norm());
    }
    Ok(CheckOutcome::new(
        "dual-process-interferometric",
        worst,
        Bound::AtMost,
        1e-6,
        "Tr[rho(0) U_s(tau)] against the printed theta_I amplitude, omega in {1, 2}",
    ))
}

fn interferometric_transport_sum(n: usize) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for omega in 1..=3 {
        let p = three_level_process(omega, BETA_R, n)?;
        let g = p.interferometric()?.amplitude;
        worst = worst.max((g - g_interferometric_three_level_transport(BETA_R, 1.0, omega)?).norm());
    }
    Ok(CheckOutcome::new(
        "interferometric-transport-sum",
        worst,
        Bound::AtMost,
        1e-6,
        "Tr[rho(0) U_s(tau)] against the Berry-factor sum, omega in {1, 2, 3}",
    ))
}

fn spin_half_uhlmann(n: usize) -> Result<CheckOutcome> {
    let family = TwoLevel::spin_half(1.0);
    let mut worst: f64 = 0.0;
    for &beta in &[0.5, 2.0, 4.0] {
        for omega in 1..=2 {
            let lp = meridian_loop(0.3, omega, n)?;
            let rho0 = gibbs_state(&family.hamiltonian(lp.points()[0]), beta)?;
            let u = holonomy_along(&family, &lp, beta)?;
            let g = rho0.expectation(u.as_matrix());
            worst = worst.max((g - g_uhlmann_spin_half(beta, 1.0, omega)?).norm());
        }
    }
    Ok(CheckOutcome::new("spin-half-uhlmann", worst, Bound::AtMost, 1e-6, "Tr[rho U_gamma] against cos(pi W) cos(pi W sech(bR/2))"))
}

fn non_transitivity(n: usize) -> Result<CheckOutcome> {
    let p = three_level_process(1, BETA_R, n)?;
    Ok(CheckOutcome::new("non-transitivity", p.non_transitivity(), Bound::AtLeast, 1e-3, "|W(0)W(tau)^+ - W(tau)W(0)^+|, bR = 2"))
}

fn berry_limit(n: usize) -> Result<CheckOutcome> {
    let config = ModelConfig::two_level(1.0, 1, crate::models::LoopKind::Equator);
    let r = crate::analysis::evaluate(&config, PhaseKind::Interferometric, Method::Numeric, 0.1, n)?;
    let phase = r.phase.unwrap_or(f64::NAN);
    let dev = crate::linalg::wrap_angle(phase - PI).abs();
    Ok(CheckOutcome::new("berry-limit", dev, Bound::AtMost, 10.0 * (-20f64).exp(), "two-level equator, bR = 10, against the ground-state Berry phase"))
}

fn holonomy_unitarity(n: usize) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for &beta in &[0.5, 2.0, 8.0] {
        let lp = meridian_loop(0.4, 2, n)?;
        let u = holonomy_along(&ThreeLevel::new(1.0), &lp, beta)?;
        worst = worst.max(u.defect() / lp.n_segments() as f64);
    }
    Ok(CheckOutcome::new("holonomy-unitarity", worst, Bound::AtMost, 1e-8, "|U^+ U - I| per step"))
}

fn berry_gauge_invariance(n: usize) -> Result<CheckOutcome> {
    let lp = crate::loops::ParameterLoop::new(
        crate::loops::Convention::Standard,
        (0..=n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                SpherePoint::new(1.0 + 0.4 * t.sin(), t)
            })
            .collect(),
        1,
    )?;
    let paths = eigen_paths(&TwoLevel::new(1.0), &lp)?;
    let regauged: Vec<Eigenpairs> = paths
        .frames()
        .iter()
        .enumerate()
        .map(|(k, f)| Eigenpairs {
            energies: f.energies.clone(),
            vectors: f
                .vectors
                .iter()
                .enumerate()
                .map(|(l, v)| v * Complex64::from_polar(1.0, 3.0 * (k as f64 * (l + 1) as f64).sin()))
                .collect(),
        })
        .collect();
    let regauged = EigenPaths::from_frames(regauged)?;
    let mut worst: f64 = 0.0;
    for level in 0..2 {
        let a = berry_phase_from_paths(&paths, level)?;
        let b = berry_phase_from_paths(&regauged, level)?;
        worst = worst.max(crate::linalg::wrap_angle(a - b).abs());
    }
    Ok(CheckOutcome::new("berry-gauge-invariance", worst, Bound::AtMost, 1e-10, "random per-node eigenvector phases"))
}

fn gibbs_covariance(_n: usize) -> Result<CheckOutcome> {
    let h = ThreeLevel::new(1.0).hamiltonian(SpherePoint::new(0.9, 0.3));
    let k = crate::linalg::CMatrix::from_fn(3, 3, |i, j| c((i + 2 * j) as f64 * 0.1, (i as f64 - j as f64) * 0.2));
    let u = crate::linalg::exp_anti_hermitian(&(&k - k.adjoint()));
    let mut worst: f64 = 0.0;
    for &beta in &[0.1, 1.0, 5.0] {
        let rotated = gibbs_state(&h.conjugate_by(&u), beta)?;
        let expect = gibbs_state(&h, beta)?.conjugate_by(&u);
        worst = worst.max(max_abs(&(rotated.as_matrix() - expect.as_matrix())));
    }
    Ok(CheckOutcome::new("gibbs-covariance", worst, Bound::AtMost, 1e-10, "gibbs(U H U^+) = U gibbs(H) U^+"))
}

fn chi_limits(_n: usize) -> Result<CheckOutcome> {
    let grid: Vec<f64> = (0..=200).map(|k| k as f64 * 0.1).collect();
    let values: Vec<f64> = grid.iter().map(|&b| chi_three_level(b, 1.0)).collect();
    let monotone = values.windows(2).all(|w| w[1] >= w[0]);
    let low = values[0];
    let high = 1.0 - chi_three_level(40.0, 1.0);
    let dev = low.abs().max(high.abs()).max(if monotone { 0.0 } else { 1.0 });
    Ok(CheckOutcome::new("chi-limits", dev, Bound::AtMost, 1e-12, "chi(0) = 0, chi(inf) = 1, monotone"))
}

fn degenerate_pairs(n: usize) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    for &beta in &[0.5, 2.0] {
        let u = holonomy_along(&ThreeLevel::new(1.0), &meridian_loop(1.2, 2, n)?, beta)?;
        let m = u.as_matrix();
        for i in 0..2 {
            worst = worst.max(m[(i, 2)].norm()).max(m[(2, i)].norm());
        }
        worst = worst.max((m[(2, 2)] - c(1.0, 0.0)).norm());
    }
    Ok(CheckOutcome::new("degenerate-pairs", worst, Bound::AtMost, 1e-8, "third row and column of U_gamma stay (0, 0, 1)"))
}

fn meridian_only(n: usize) -> Result<CheckOutcome> {
    let along_meridian = diagonalizer_transport_residual(1.0, 1.0, &meridian_loop(0.5, 1, n)?)?;
    let along_equator = diagonalizer_transport_residual(1.0, 1.0, &equator_loop(1, n)?)?;
    let value = if along_meridian <= 1e-6 { along_equator } else { 0.0 };
    Ok(CheckOutcome::new(
        "meridian-only",
        value,
        Bound::AtLeast,
        1e-3,
        format!("|Tr(rho dU U^+)|/dt: meridian {along_meridian:.3e}, equator {along_equator:.3e}"),
    ))
}

fn uhlmann_tc(_n: usize) -> Result<CheckOutcome> {
    let config = ModelConfig::three_level_meridian(1.0, 1);
    let tc = find_tc(&config, PhaseKind::Uhlmann, Method::Closed, (0.5, 1.0), 1e-10, 0)?.tc;
    Ok(CheckOutcome::new("uhlmann-tc", (tc - 0.7338).abs(), Bound::AtMost, 5e-4, format!("T_c = {tc:.10}")))
}
