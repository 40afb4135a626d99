#![allow(dead_code)]

use std::f64::consts::PI;

use mixphase::linalg::{exp_anti_hermitian, wrap_angle, CMatrix, HermitianMatrix, UnitaryMatrix, I};
use mixphase::loops::{Convention, ParameterLoop, SpherePoint};
use num_complex::Complex64;
use proptest::prelude::*;

/// Hermitian matrix from `n * n` real parameters: the diagonal, then the
/// real and imaginary parts of the strict upper triangle.
pub fn hermitian_from(n: usize, params: &[f64]) -> HermitianMatrix {
    let mut m = CMatrix::zeros(n, n);
    let mut it = params.iter().copied();
    for i in 0..n {
        m[(i, i)] = Complex64::new(it.next().unwrap(), 0.0);
    }
    for i in 0..n {
        for j in i + 1..n {
            let z = Complex64::new(it.next().unwrap(), it.next().unwrap());
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::new(m).expect("hermitian by construction")
}

pub fn unitary_from(n: usize, params: &[f64]) -> UnitaryMatrix {
    let h = hermitian_from(n, params);
    exp_anti_hermitian(&(h.as_matrix() * I))
}

pub fn hermitian(n: usize, scale: f64) -> impl Strategy<Value = HermitianMatrix> {
    prop::collection::vec(-scale..scale, n * n).prop_map(move |p| hermitian_from(n, &p))
}

pub fn unitary(n: usize) -> impl Strategy<Value = UnitaryMatrix> {
    prop::collection::vec(-3.0..3.0f64, n * n).prop_map(move |p| unitary_from(n, &p))
}

/// A fixed, non-degenerate 3x3 Hermitian matrix for deterministic tests.
pub fn sample_hermitian3() -> HermitianMatrix {
    hermitian_from(3, &[0.7, -0.3, 1.1, 0.2, -0.5, 0.4, 0.9, -0.6, 0.1])
}

pub fn sample_unitary3() -> UnitaryMatrix {
    unitary_from(3, &[0.3, 1.2, -0.8, 0.5, 0.9, -1.1, 0.4, 0.7, -0.2])
}

/// Circle of angular radius `radius` around an axis tilted by `tilt` from
/// the north pole; encloses the pole when `tilt < radius`.
pub fn tilted_circle(radius: f64, tilt: f64, n: usize) -> ParameterLoop {
    let mut points = Vec::with_capacity(n + 1);
    let mut last_phi: Option<f64> = None;
    for k in 0..=n {
        let t = 2.0 * PI * k as f64 / n as f64;
        let (x, y0, z0) = (radius.sin() * t.cos(), radius.sin() * t.sin(), radius.cos());
        let (y, z) = (y0 * tilt.cos() - z0 * tilt.sin(), y0 * tilt.sin() + z0 * tilt.cos());
        let theta = z.clamp(-1.0, 1.0).acos();
        let mut phi = y.atan2(x);
        if let Some(prev) = last_phi {
            phi = prev + wrap_angle(phi - prev);
        }
        last_phi = Some(phi);
        points.push(SpherePoint::new(theta, phi));
    }
    ParameterLoop::new(Convention::Standard, points, 1).unwrap()
}
