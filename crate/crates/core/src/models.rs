//! The two- and three-level models: Hamiltonian families, analytic
//! eigenvectors, and closed-form phases, holonomies and critical temperatures.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analysis::PhaseResult;
use crate::error::{Error, Result};
use crate::family::{Eigenpairs, HamiltonianFamily};
use crate::linalg::{anti_hermitian_part, c, CMatrix, CVector, HermitianMatrix, UnitaryMatrix};
use crate::loops::{equator_loop, meridian_loop, solid_angle_phase, ParameterLoop, SpherePoint};
use crate::state::gibbs_state;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    TwoLevel,
    ThreeLevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoopKind {
    Equator,
    Meridian,
}

/// Which model, how strongly coupled, and along which loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub r: f64,
    pub omega: u32,
    pub loop_kind: LoopKind,
    pub phi0: f64,
}

impl ModelConfig {
    pub fn new(kind: ModelKind, r: f64, omega: u32, loop_kind: LoopKind, phi0: f64) -> Result<Self> {
        let config = Self { kind, r, omega, loop_kind, phi0 };
        config.validate()?;
        Ok(config)
    }

    pub fn three_level_meridian(r: f64, omega: u32) -> Self {
        Self { kind: ModelKind::ThreeLevel, r, omega, loop_kind: LoopKind::Meridian, phi0: 0.0 }
    }

    pub fn two_level(r: f64, omega: u32, loop_kind: LoopKind) -> Self {
        Self { kind: ModelKind::TwoLevel, r, omega, loop_kind, phi0: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::InvalidArgument(format!("R must be positive, got {}", self.r)));
        }
        if self.omega == 0 {
            return Err(Error::InvalidArgument("omega must be >= 1".into()));
        }
        if self.loop_kind == LoopKind::Meridian && !(0.0..=PI).contains(&self.phi0) {
            return Err(Error::InvalidLongitude { phi0: self.phi0 });
        }
        Ok(())
    }

    /// The configured loop with `n_steps` steps per winding.
    pub fn parameter_loop(&self, n_steps: usize) -> Result<ParameterLoop> {
        match self.loop_kind {
            LoopKind::Meridian => meridian_loop(self.phi0, self.omega, n_steps),
            LoopKind::Equator => equator_loop(self.omega, n_steps),
        }
    }

    /// The family `sigma.R` or the three-level block Hamiltonian.
    pub fn family(&self) -> Box<dyn HamiltonianFamily> {
        match self.kind {
            ModelKind::TwoLevel => Box::new(TwoLevel::new(self.r)),
            ModelKind::ThreeLevel => Box::new(ThreeLevel::new(self.r)),
        }
    }
}

/// `H(config, p)`: `sigma.R` for two levels, `diag(sigma.R, R)` for three.
pub fn hamiltonian(config: &ModelConfig, p: SpherePoint) -> HermitianMatrix {
    config.family().hamiltonian(p)
}

fn sigma_dot(p: SpherePoint, r: f64) -> [[Complex64; 2]; 2] {
    let (st, ct) = p.theta.sin_cos();
    let e = Complex64::from_polar(st, p.phi);
    [[c(r * ct, 0.0), e.conj() * r], [e * r, c(-r * ct, 0.0)]]
}

/// `H = g sigma.R`, with `g = 1` for the interferometric model and
/// `g = 1/2` for the spin-1/2 Uhlmann model (level splitting `R`).
#[derive(Debug, Clone, Copy)]
pub struct TwoLevel {
    r: f64,
    coupling: f64,
}

impl TwoLevel {
    pub fn new(r: f64) -> Self {
        Self { r, coupling: 1.0 }
    }

    pub fn spin_half(r: f64) -> Self {
        Self { r, coupling: 0.5 }
    }
}

impl HamiltonianFamily for TwoLevel {
    fn dim(&self) -> usize {
        2
    }

    fn hamiltonian(&self, p: SpherePoint) -> HermitianMatrix {
        let m = sigma_dot(p, self.r * self.coupling);
        HermitianMatrix::symmetrized(CMatrix::from_fn(2, 2, |i, j| m[i][j]))
    }
}

/// The three-level model `diag(sigma.R, R)`.
#[derive(Debug, Clone, Copy)]
pub struct ThreeLevel {
    r: f64,
}

impl ThreeLevel {
    pub fn new(r: f64) -> Self {
        Self { r }
    }
}

/// Eigenvectors of the three-level Hamiltonian, labeled by level.
#[derive(Debug, Clone)]
pub struct ThreeLevelEigenvectors {
    pub plus_r1: CVector,
    pub plus_r2: CVector,
    pub minus_r: CVector,
}

pub fn analytic_eigvecs_three_level(p: SpherePoint) -> ThreeLevelEigenvectors {
    let (s, co) = (0.5 * p.theta).sin_cos();
    let e = Complex64::from_polar(1.0, p.phi);
    ThreeLevelEigenvectors {
        plus_r1: CVector::from_vec(vec![c(co, 0.0), e * s, c(0.0, 0.0)]),
        plus_r2: CVector::from_vec(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        minus_r: CVector::from_vec(vec![c(s, 0.0), -e * co, c(0.0, 0.0)]),
    }
}

/// `U(theta, phi)` with columns `|+R1>, |-R>, |+R2>`, so `H = R U diag(1, -1, 1) U^dagger`.
pub fn u_three_level(p: SpherePoint) -> UnitaryMatrix {
    let v = analytic_eigvecs_three_level(p);
    UnitaryMatrix::trusted(CMatrix::from_columns(&[v.plus_r1, v.minus_r, v.plus_r2]))
}

impl HamiltonianFamily for ThreeLevel {
    fn dim(&self) -> usize {
        3
    }

    fn hamiltonian(&self, p: SpherePoint) -> HermitianMatrix {
        let m = sigma_dot(p, self.r);
        let mut h = CMatrix::zeros(3, 3);
        for i in 0..2 {
            for j in 0..2 {
                h[(i, j)] = m[i][j];
            }
        }
        h[(2, 2)] = c(self.r, 0.0);
        HermitianMatrix::symmetrized(h)
    }

    /// Levels ordered `|+R1>, |-R>, |+R2>`, matching the computational basis
    /// at the north pole.
    fn analytic_eigenpairs(&self, p: SpherePoint) -> Option<Eigenpairs> {
        let v = analytic_eigvecs_three_level(p);
        Some(Eigenpairs { energies: vec![self.r, -self.r, self.r], vectors: vec![v.plus_r1, v.minus_r, v.plus_r2] })
    }
}

fn winding_sign(omega: u32) -> f64 {
    if omega % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidArgument(format!("beta must be finite and >= 0, got {beta}")));
    }
    Ok(())
}

/// Two-level interferometric amplitude `lambda_- e^{i b} + lambda_+ e^{-i b}`
/// with `b` the ground-state solid-angle phase of the loop.
pub fn g_interferometric_two_level(beta: f64, r: f64, lp: &ParameterLoop) -> Result<Complex64> {
    check_beta(beta)?;
    let b = solid_angle_phase(lp).value;
    let x = (-2.0 * beta * r).exp();
    let lower = 1.0 / (1.0 + x);
    let upper = x / (1.0 + x);
    Ok(Complex64::from_polar(lower, b) + Complex64::from_polar(upper, -b))
}

pub fn theta_i_two_level(beta: f64, r: f64, lp: &ParameterLoop) -> Result<PhaseResult> {
    PhaseResult::defined(g_interferometric_two_level(beta, r, lp)?)
}

/// Three-level interferometric amplitude
/// `[cos(pi W) e^{-bR} + e^{-bR} - cos(pi W) e^{bR}] / Z(0)`.
pub fn g_interferometric_three_level(beta: f64, r: f64, omega: u32) -> Result<Complex64> {
    check_beta(beta)?;
    let s = winding_sign(omega);
    let x = (-2.0 * beta * r).exp();
    Ok(c((s * x + x - s) / (2.0 * x + 1.0), 0.0))
}

pub fn theta_i_three_level(beta: f64, r: f64, omega: u32) -> Result<PhaseResult> {
    PhaseResult::defined(g_interferometric_three_level(beta, r, omega)?)
}

/// Three-level interferometric amplitude obtained by parallel transport
/// with `U(0) = I`, where both levels of the `sigma.R` block acquire the
/// Berry factor `cos(pi W)`: `[cos(pi W)(e^{-bR} + e^{bR}) + e^{-bR}] / Z(0)`.
pub fn g_interferometric_three_level_transport(beta: f64, r: f64, omega: u32) -> Result<Complex64> {
    check_beta(beta)?;
    let s = winding_sign(omega);
    let x = (-2.0 * beta * r).exp();
    Ok(c((s * (1.0 + x) + x) / (2.0 * x + 1.0), 0.0))
}

/// `2R / ln 2`.
pub fn tc_interferometric_three_level(r: f64) -> f64 {
    2.0 * r / LN_2
}

/// `cos(pi W) cos(pi W sech(bR/2))`.
pub fn g_uhlmann_spin_half(beta: f64, r: f64, omega: u32) -> Result<Complex64> {
    check_beta(beta)?;
    let w = omega as f64;
    let sech = 1.0 / (0.5 * beta * r).cosh();
    Ok(c(winding_sign(omega) * (PI * w * sech).cos(), 0.0))
}

pub fn theta_u_spin_half(beta: f64, r: f64, omega: u32) -> Result<PhaseResult> {
    PhaseResult::defined(g_uhlmann_spin_half(beta, r, omega)?)
}

/// The `n`-th spin-1/2 Uhlmann critical temperature,
/// `R / (2 ln(a + sqrt(a^2 - 1)))` with `a = W / (n + 1/2)`, `n < W`.
pub fn tc_uhlmann_spin_half(r: f64, omega: u32, n: u32) -> Result<f64> {
    if n >= omega {
        return Err(Error::InvalidArgument(format!("n must be below omega = {omega}, got {n}")));
    }
    let a = omega as f64 / (n as f64 + 0.5);
    Ok(r / (2.0 * (a + (a * a - 1.0).sqrt()).ln()))
}

/// `chi = (e^{-bR} + e^{bR} - 2) / (e^{-bR} + e^{bR}) = 1 - sech(bR)`.
pub fn chi_three_level(beta: f64, r: f64) -> f64 {
    1.0 - 1.0 / (beta * r).cosh()
}

/// Closed-form three-level Uhlmann holonomy along the meridian `phi0`:
/// a rotation by `pi W chi` in the `|+R1>, |-R>` block.
pub fn uhlmann_holonomy_three_level(beta: f64, r: f64, omega: u32, phi0: f64) -> UnitaryMatrix {
    let angle = PI * omega as f64 * chi_three_level(beta, r);
    let (s, co) = angle.sin_cos();
    let e = Complex64::from_polar(1.0, phi0);
    let mut m = CMatrix::zeros(3, 3);
    m[(0, 0)] = c(co, 0.0);
    m[(0, 1)] = -e.conj() * s;
    m[(1, 0)] = e * s;
    m[(1, 1)] = c(co, 0.0);
    m[(2, 2)] = c(1.0, 0.0);
    UnitaryMatrix::trusted(m)
}

/// `G_U = [(-1)^W 2 cosh(bR) cos(W pi / cosh(bR)) + e^{-bR}] / Z(0)`.
pub fn g_uhlmann_three_level(beta: f64, r: f64, omega: u32) -> Result<Complex64> {
    check_beta(beta)?;
    let x = (-2.0 * beta * r).exp();
    let sech = 1.0 / (beta * r).cosh();
    let block = winding_sign(omega) * (1.0 + x) * (PI * omega as f64 * sech).cos();
    Ok(c((block + x) / (2.0 * x + 1.0), 0.0))
}

pub fn theta_u_three_level(beta: f64, r: f64, omega: u32) -> Result<PhaseResult> {
    PhaseResult::defined(g_uhlmann_three_level(beta, r, omega)?)
}

/// `max_k |Tr(rho_k dU U^dagger)| / dt` along a loop for the three-level
/// model, with `U` the diagonalizing unitary and `rho_k` the Gibbs state.
/// Vanishes along meridians and not along other loops.
pub fn diagonalizer_transport_residual(beta: f64, r: f64, lp: &ParameterLoop) -> Result<f64> {
    let family = ThreeLevel::new(r);
    let dt = lp.dt();
    let mut worst: f64 = 0.0;
    for w in lp.points().windows(2) {
        let rho = gibbs_state(&family.hamiltonian(w[0]), beta)?;
        let u0 = u_three_level(w[0]);
        let u1 = u_three_level(w[1]);
        let gen = anti_hermitian_part(&(u1.as_matrix() * u0.as_matrix().adjoint()));
        worst = worst.max(rho.expectation(&gen).norm() / dt);
    }
    Ok(worst)
}
