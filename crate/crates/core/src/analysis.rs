//! Transition amplitudes, visibility, the geometrical generating function,
//! temperature sweeps and critical-temperature search.

use std::collections::BTreeMap;

use num_complex::Complex64;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interferometric::transport_unitary;
use crate::linalg::{principal_arg, wrap_angle, ZERO_AMPLITUDE};
use crate::models::{
    g_interferometric_three_level, g_interferometric_two_level, g_uhlmann_spin_half, g_uhlmann_three_level,
    LoopKind, ModelConfig, ModelKind, TwoLevel,
};
use crate::state::gibbs_state;
use crate::uhlmann::{uhlmann_residual, GibbsPath};

/// A transition amplitude `G` together with everything derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseResult {
    pub amplitude: Complex64,
    /// `arg G` in `(-pi, pi]`; `None` when `|G| < 1e-14`.
    pub phase: Option<f64>,
    pub visibility: f64,
    /// `-ln |G|^2`; `+inf` when the phase is undefined.
    pub g: f64,
    pub residuals: BTreeMap<String, f64>,
}

impl PhaseResult {
    pub fn from_amplitude(amplitude: Complex64) -> Self {
        let visibility = amplitude.norm();
        let phase = principal_arg(amplitude).ok();
        Self { amplitude, phase, visibility, g: generating_function(amplitude, 1), residuals: BTreeMap::new() }
    }

    /// Like [`PhaseResult::from_amplitude`] but fails when the phase is undefined.
    pub fn defined(amplitude: Complex64) -> Result<Self> {
        principal_arg(amplitude)?;
        Ok(Self::from_amplitude(amplitude))
    }

    pub fn with_residual(mut self, name: &str, value: f64) -> Self {
        self.residuals.insert(name.to_string(), value);
        self
    }

    /// Phase, or `NaN` when undefined.
    pub fn phase_or_nan(&self) -> f64 {
        self.phase.unwrap_or(f64::NAN)
    }
}

/// `g = -(1/L) ln |G|^2`, or `+inf` when `|G| < 1e-14`.
pub fn generating_function(amplitude: Complex64, l: u32) -> f64 {
    let v = amplitude.norm();
    if v < ZERO_AMPLITUDE {
        return f64::INFINITY;
    }
    -(v * v).ln() / l.max(1) as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseKind {
    Interferometric,
    Uhlmann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Closed,
    Numeric,
}

fn beta_of(t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!("temperature must be positive and finite, got {t}")));
    }
    Ok(1.0 / t)
}

fn meridian_only(config: &ModelConfig) -> Result<()> {
    if config.loop_kind != LoopKind::Meridian {
        return Err(Error::InvalidArgument(
            "closed forms for the three-level model are given for meridian loops".into(),
        ));
    }
    Ok(())
}

/// Closed-form transition amplitude at temperature `t`.
pub fn closed_amplitude(config: &ModelConfig, kind: PhaseKind, t: f64) -> Result<Complex64> {
    config.validate()?;
    let beta = beta_of(t)?;
    match (config.kind, kind) {
        (ModelKind::TwoLevel, PhaseKind::Interferometric) => {
            g_interferometric_two_level(beta, config.r, &config.parameter_loop(crate::loops::MIN_STEPS)?)
        }
        (ModelKind::TwoLevel, PhaseKind::Uhlmann) => g_uhlmann_spin_half(beta, config.r, config.omega),
        (ModelKind::ThreeLevel, PhaseKind::Interferometric) => {
            meridian_only(config)?;
            g_interferometric_three_level(beta, config.r, config.omega)
        }
        (ModelKind::ThreeLevel, PhaseKind::Uhlmann) => {
            meridian_only(config)?;
            g_uhlmann_three_level(beta, config.r, config.omega)
        }
    }
}

/// Numerically transported amplitude at temperature `t`, with the
/// parallel-transport residual of the run attached.
pub fn numeric_amplitude(config: &ModelConfig, kind: PhaseKind, t: f64, n_steps: usize) -> Result<(Complex64, (&'static str, f64))> {
    config.validate()?;
    let beta = beta_of(t)?;
    let lp = config.parameter_loop(n_steps)?;
    match kind {
        PhaseKind::Interferometric => {
            let family = config.family();
            let rho0 = gibbs_state(&family.hamiltonian(lp.points()[0]), beta)?;
            let transport = transport_unitary(family.as_ref(), &lp, &rho0)?;
            let g = rho0.expectation(transport.last().as_matrix());
            Ok((g, ("interferometric_parallel", transport.residual())))
        }
        PhaseKind::Uhlmann => {
            let family: Box<dyn crate::family::HamiltonianFamily> = match config.kind {
                ModelKind::TwoLevel => Box::new(TwoLevel::spin_half(config.r)),
                ModelKind::ThreeLevel => config.family(),
            };
            let path = GibbsPath::new(family.as_ref(), &lp, beta)?;
            let factors = path.phase_factors();
            let residual = uhlmann_residual(&path.amplitudes(&factors), lp.dt());
            let g = path.nodes()[0].expectation(factors[factors.len() - 1].as_matrix());
            Ok((g, ("uhlmann_parallel", residual)))
        }
    }
}

/// Transition amplitude and phase at temperature `t` by the chosen method.
/// The phase is left undefined, not an error, at a zero of `G`.
pub fn evaluate(config: &ModelConfig, kind: PhaseKind, method: Method, t: f64, n_steps: usize) -> Result<PhaseResult> {
    match method {
        Method::Closed => Ok(PhaseResult::from_amplitude(closed_amplitude(config, kind, t)?)),
        Method::Numeric => {
            let (g, (name, residual)) = numeric_amplitude(config, kind, t, n_steps)?;
            Ok(PhaseResult::from_amplitude(g).with_residual(name, residual))
        }
    }
}

/// One temperature of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub re_g: f64,
    pub im_g: f64,
    pub visibility: f64,
    pub g: f64,
    /// `NaN` when undefined or when the row failed.
    pub phase: f64,
    /// Error code of a failed row.
    pub error: Option<&'static str>,
}

impl SweepRow {
    fn from_result(t: f64, r: Result<PhaseResult>) -> Self {
        match r {
            Ok(p) => Self {
                t,
                re_g: p.amplitude.re,
                im_g: p.amplitude.im,
                visibility: p.visibility,
                g: p.g,
                phase: p.phase_or_nan(),
                error: None,
            },
            Err(e) => Self {
                t,
                re_g: f64::NAN,
                im_g: f64::NAN,
                visibility: f64::NAN,
                g: f64::NAN,
                phase: f64::NAN,
                error: Some(e.code()),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Spacing {
    Linear,
    Log,
}

/// `n_points` temperatures from `t_min` to `t_max` inclusive.
pub fn temperature_grid(t_min: f64, t_max: f64, n_points: usize, spacing: Spacing) -> Result<Vec<f64>> {
    if !(t_min.is_finite() && t_min > 0.0 && t_max.is_finite() && t_max > t_min) {
        return Err(Error::InvalidArgument(format!("need 0 < t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if n_points < 2 {
        return Err(Error::InvalidArgument(format!("n_points must be >= 2, got {n_points}")));
    }
    let last = (n_points - 1) as f64;
    let grid = (0..n_points)
        .map(|k| {
            let f = k as f64 / last;
            match spacing {
                Spacing::Linear => t_min + (t_max - t_min) * f,
                Spacing::Log => (t_min.ln() + (t_max.ln() - t_min.ln()) * f).exp(),
            }
        })
        .collect();
    Ok(grid)
}

/// Evaluates every temperature of `t_grid` independently, in parallel;
/// failures are recorded per row.
pub fn sweep(
    config: &ModelConfig,
    kind: PhaseKind,
    method: Method,
    t_grid: &[f64],
    n_steps: usize,
) -> Result<Vec<SweepRow>> {
    config.validate()?;
    if t_grid.iter().any(|&t| !(t > 0.0)) || t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidArgument("temperatures must be positive and strictly ascending".into()));
    }
    Ok(t_grid
        .par_iter()
        .map(|&t| SweepRow::from_result(t, evaluate(config, kind, method, t, n_steps)))
        .collect())
}

/// Number of discontinuities of the phase between consecutive rows with a
/// defined phase.
pub fn count_jumps(rows: &[SweepRow]) -> usize {
    let phases: Vec<f64> = rows.iter().map(|r| r.phase).filter(|p| p.is_finite()).collect();
    phases.windows(2).filter(|w| wrap_angle(w[1] - w[0]).abs() > std::f64::consts::FRAC_PI_2).count()
}

/// Number of sign changes of `Re G` between consecutive rows.
pub fn count_sign_changes(rows: &[SweepRow]) -> usize {
    let signs: Vec<bool> = rows
        .iter()
        .map(|r| r.re_g)
        .filter(|x| x.is_finite() && *x != 0.0)
        .map(|x| x > 0.0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Result of [`find_tc`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalTemperature {
    pub tc: f64,
    pub iterations: u32,
    pub visibility: f64,
}

/// Largest `|Im G|` for which `G` is treated as real.
pub const REAL_AMPLITUDE_TOL: f64 = 1e-10;

fn real_part_at(config: &ModelConfig, kind: PhaseKind, method: Method, t: f64, n_steps: usize) -> Result<f64> {
    let g = match method {
        Method::Closed => closed_amplitude(config, kind, t)?,
        Method::Numeric => numeric_amplitude(config, kind, t, n_steps)?.0,
    };
    if g.im.abs() >= REAL_AMPLITUDE_TOL {
        return Err(Error::ComplexAmplitude { t, im: g.im });
    }
    Ok(g.re)
}

/// Bisection on `Re G(T)` inside `bracket` until it is narrower than `tol`.
pub fn find_tc(
    config: &ModelConfig,
    kind: PhaseKind,
    method: Method,
    bracket: (f64, f64),
    tol: f64,
    n_steps: usize,
) -> Result<CriticalTemperature> {
    let (mut lo, mut hi) = bracket;
    if !(lo > 0.0 && hi > lo && tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < t_lo < t_hi and tol > 0, got ({lo}, {hi}), {tol}"
        )));
    }
    let f = |t: f64| real_part_at(config, kind, method, t, n_steps);
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 || f_hi == 0.0 {
        let tc = if f_lo == 0.0 { lo } else { hi };
        return Ok(CriticalTemperature { tc, iterations: 0, visibility: 0.0 });
    }
    if (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoBracket { t_lo: lo, t_hi: hi });
    }
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let tc = 0.5 * (lo + hi);
    let visibility = match method {
        Method::Closed => closed_amplitude(config, kind, tc)?.norm(),
        Method::Numeric => numeric_amplitude(config, kind, tc, n_steps)?.0.norm(),
    };
    Ok(CriticalTemperature { tc, iterations, visibility })
}

/// First interval of a log-spaced scan over `[t_min, t_max]` on which
/// `Re G` changes sign.
pub fn scan_bracket(
    config: &ModelConfig,
    kind: PhaseKind,
    method: Method,
    t_min: f64,
    t_max: f64,
    n_points: usize,
    n_steps: usize,
) -> Result<(f64, f64)> {
    let grid = temperature_grid(t_min, t_max, n_points, Spacing::Log)?;
    let values = grid
        .par_iter()
        .map(|&t| real_part_at(config, kind, method, t, n_steps))
        .collect::<Result<Vec<f64>>>()?;
    (0..grid.len() - 1)
        .find(|&k| (values[k] > 0.0) != (values[k + 1] > 0.0))
        .map(|k| (grid[k], grid[k + 1]))
        .ok_or(Error::NoBracket { t_lo: t_min, t_hi: t_max })
}
