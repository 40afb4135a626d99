//! Discretized closed loops on the parameter sphere.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};

/// Smallest accepted number of steps per winding.
pub const MIN_STEPS: usize = 4;
/// Default number of steps per winding.
pub const DEFAULT_STEPS: usize = 2000;
const CLOSURE_TOL: f64 = 1e-12;

/// A point `(theta, phi)` of the parameter sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub theta: f64,
    pub phi: f64,
}

impl SpherePoint {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// `(sin t cos p, sin t sin p, cos t)`.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn midpoint(&self, other: &SpherePoint) -> SpherePoint {
        SpherePoint::new(0.5 * (self.theta + other.theta), 0.5 * (self.phi + other.phi))
    }
}

/// Coordinate ranges a loop is expressed in.
///
/// `Standard` is `0 <= theta <= pi`, `0 <= phi < 2 pi`; `Extended` is
/// `0 <= theta < 2 pi`, `0 <= phi <= pi`, which covers a whole meridian
/// without passing through a coordinate singularity. Along a loop the
/// running coordinate is stored unwrapped (it accumulates `2 pi omega`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Standard,
    Extended,
}

/// Closed, explicitly discretized loop with its winding count.
#[derive(Debug, Clone)]
pub struct ParameterLoop {
    convention: Convention,
    points: Vec<SpherePoint>,
    omega: u32,
}

impl ParameterLoop {
    /// Validates closure and, for extended loops, the winding and
    /// deviation constraints.
    pub fn new(convention: Convention, points: Vec<SpherePoint>, omega: u32) -> Result<Self> {
        if omega == 0 {
            return Err(Error::InvalidArgument("omega must be >= 1".into()));
        }
        if points.len() < 2 {
            return Err(Error::NonClosedLoop("a loop needs at least two points".into()));
        }
        if points.iter().any(|p| !p.theta.is_finite() || !p.phi.is_finite()) {
            return Err(Error::InvalidArgument("loop points must be finite".into()));
        }
        let first = points[0].unit_vector();
        let last = points[points.len() - 1].unit_vector();
        let gap = (0..3).map(|i| (first[i] - last[i]).abs()).fold(0.0, f64::max);
        if gap > CLOSURE_TOL {
            return Err(Error::NonClosedLoop(format!(
                "first and last points differ by {gap:e} on the sphere"
            )));
        }
        let lp = Self { convention, points, omega };
        if convention == Convention::Extended {
            let variation = lp.theta_variation();
            let expected = TAU * omega as f64;
            if (variation - expected).abs() > CLOSURE_TOL * (1.0 + expected) {
                return Err(Error::NonClosedLoop(format!(
                    "total theta variation {variation} differs from 2 pi omega = {expected}"
                )));
            }
            let (max_dtheta, max_dphi) = lp.max_steps();
            if max_dphi > max_dtheta * max_dtheta {
                return Err(Error::InvalidArgument(format!(
                    "longitude deviation {max_dphi:e} per step exceeds (max dtheta)^2 = {:e}",
                    max_dtheta * max_dtheta
                )));
            }
        }
        Ok(lp)
    }

    /// A loop that stays at one point for `n_steps` steps.
    pub fn constant(point: SpherePoint, n_steps: usize) -> Result<Self> {
        check_steps(n_steps)?;
        Self::new(Convention::Standard, vec![point; n_steps + 1], 1)
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    pub fn omega(&self) -> u32 {
        self.omega
    }

    pub fn n_segments(&self) -> usize {
        self.points.len() - 1
    }

    /// Loop duration `2 pi omega`; the loop is traversed at a uniform rate.
    pub fn duration(&self) -> f64 {
        TAU * self.omega as f64
    }

    /// Time step of every segment.
    pub fn dt(&self) -> f64 {
        self.duration() / self.n_segments() as f64
    }

    pub fn times(&self) -> Vec<f64> {
        let dt = self.dt();
        (0..self.points.len()).map(|k| k as f64 * dt).collect()
    }

    /// Midpoint of segment `k` in the loop's own coordinates.
    pub fn segment_midpoint(&self, k: usize) -> SpherePoint {
        self.points[k].midpoint(&self.points[k + 1])
    }

    /// Same loop traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self { convention: self.convention, points, omega: self.omega }
    }

    /// `sum |d theta|` along the loop, compensated summation.
    pub fn theta_variation(&self) -> f64 {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for w in self.points.windows(2) {
            let y = (w[1].theta - w[0].theta).abs() - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum
    }

    /// Largest `|d theta|` and `|d phi|` over all segments.
    pub fn max_steps(&self) -> (f64, f64) {
        self.points.windows(2).fold((0.0, 0.0), |(a, b), w| {
            (f64::max(a, (w[1].theta - w[0].theta).abs()), f64::max(b, (w[1].phi - w[0].phi).abs()))
        })
    }
}

fn check_steps(n_steps: usize) -> Result<()> {
    if n_steps < MIN_STEPS {
        return Err(Error::InvalidArgument(format!("n_steps must be >= {MIN_STEPS}, got {n_steps}")));
    }
    Ok(())
}

fn check_omega(omega: u32) -> Result<()> {
    if omega == 0 {
        return Err(Error::InvalidArgument("omega must be >= 1".into()));
    }
    Ok(())
}

/// Meridian of longitude `phi0` starting at the north pole, wound `omega`
/// times with `n_steps` uniform steps per winding (extended convention).
pub fn meridian_loop(phi0: f64, omega: u32, n_steps: usize) -> Result<ParameterLoop> {
    if !(0.0..=PI).contains(&phi0) {
        return Err(Error::InvalidLongitude { phi0 });
    }
    check_omega(omega)?;
    check_steps(n_steps)?;
    let n = n_steps * omega as usize;
    let total = TAU * omega as f64;
    let points = (0..=n)
        .map(|k| SpherePoint::new(total * k as f64 / n as f64, phi0))
        .collect();
    ParameterLoop::new(Convention::Extended, points, omega)
}

/// The equator `theta = pi/2`, wound `omega` times eastward starting at
/// `phi = 0` (standard convention).
pub fn equator_loop(omega: u32, n_steps: usize) -> Result<ParameterLoop> {
    check_omega(omega)?;
    check_steps(n_steps)?;
    let n = n_steps * omega as usize;
    let total = TAU * omega as f64;
    let points = (0..=n)
        .map(|k| SpherePoint::new(FRAC_PI_2, total * k as f64 / n as f64))
        .collect();
    ParameterLoop::new(Convention::Standard, points, omega)
}

/// Result of [`solid_angle_phase`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolidAngle {
    pub value: f64,
    /// Set for extended-convention loops, where `d phi = 0` by construction
    /// and the value is 0 by definition.
    pub extended_convention: bool,
}

/// Trapezoidal `1/2 * loop integral of (1 - cos theta) d phi`: the
/// ground-state Berry phase of a spin-1/2 in a field along the loop.
pub fn solid_angle_phase(lp: &ParameterLoop) -> SolidAngle {
    if lp.convention() == Convention::Extended {
        return SolidAngle { value: 0.0, extended_convention: true };
    }
    let value = lp
        .points()
        .windows(2)
        .map(|w| {
            let f0 = 1.0 - w[0].theta.cos();
            let f1 = 1.0 - w[1].theta.cos();
            0.25 * (f0 + f1) * (w[1].phi - w[0].phi)
        })
        .sum();
    SolidAngle { value, extended_convention: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meridian_grid() {
        let lp = meridian_loop(0.0, 1, 4).unwrap();
        let thetas: Vec<f64> = lp.points().iter().map(|p| p.theta).collect();
        let expect = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2, TAU];
        for (a, b) in thetas.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(lp.points().iter().all(|p| p.phi == 0.0));
        assert_eq!(lp.convention(), Convention::Extended);
    }

    #[test]
    fn meridian_total_variation() {
        for omega in 1..=3 {
            let lp = meridian_loop(1.0, omega, 2000).unwrap();
            assert!((lp.theta_variation() - TAU * omega as f64).abs() < 1e-12);
            assert_eq!(lp.n_segments(), 2000 * omega as usize);
        }
    }

    #[test]
    fn meridian_rejects_bad_longitude() {
        assert!(matches!(meridian_loop(-0.1, 1, 8), Err(Error::InvalidLongitude { .. })));
        assert!(matches!(meridian_loop(3.2, 1, 8), Err(Error::InvalidLongitude { .. })));
        assert!(meridian_loop(PI, 1, 8).is_ok());
        assert!(matches!(meridian_loop(0.0, 1, 3), Err(Error::InvalidArgument(_))));
        assert!(matches!(meridian_loop(0.0, 0, 8), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn equator_grid() {
        let lp = equator_loop(1, 4).unwrap();
        let phis: Vec<f64> = lp.points().iter().map(|p| p.phi).collect();
        let expect = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2, TAU];
        for (a, b) in phis.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(lp.points().iter().all(|p| p.theta == FRAC_PI_2));
    }

    #[test]
    fn open_curves_are_rejected() {
        let pts = vec![SpherePoint::new(0.5, 0.0), SpherePoint::new(0.5, 1.0)];
        assert!(matches!(ParameterLoop::new(Convention::Standard, pts, 1), Err(Error::NonClosedLoop(_))));
    }

    #[test]
    fn extended_loops_enforce_deviation_bound() {
        let n = 100;
        let wobble = |amp: f64| -> Vec<SpherePoint> {
            (0..=n)
                .map(|k| {
                    let t = TAU * k as f64 / n as f64;
                    SpherePoint::new(t, 0.3 + amp * t.sin())
                })
                .collect()
        };
        assert!(ParameterLoop::new(Convention::Extended, wobble(1e-4), 1).is_ok());
        assert!(matches!(
            ParameterLoop::new(Convention::Extended, wobble(0.1), 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn solid_angle_on_equator() {
        for omega in 1..=3 {
            let s = solid_angle_phase(&equator_loop(omega, 64).unwrap());
            assert!((s.value - PI * omega as f64).abs() < 1e-12);
            assert!(!s.extended_convention);
        }
    }

    #[test]
    fn solid_angle_at_pole_and_on_meridian() {
        let pole = ParameterLoop::constant(SpherePoint::new(0.0, 0.0), 16).unwrap();
        assert_eq!(solid_angle_phase(&pole).value, 0.0);
        let s = solid_angle_phase(&meridian_loop(0.2, 1, 16).unwrap());
        assert_eq!(s.value, 0.0);
        assert!(s.extended_convention);
    }
}
