//! Dense complex matrix kernel.
//!
//! Hermitian and unitary matrices are thin wrappers over
//! `nalgebra::DMatrix<Complex64>` that carry their structural invariant.
//! Everything here is a pure function of its inputs.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Per-entry tolerance for `H[i][j] = conj(H[j][i])`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Max-norm tolerance for `U^dagger U = I`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Below this modulus an amplitude has no phase.
pub const ZERO_AMPLITUDE: f64 = 1e-14;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest absolute entry.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `max |U^dagger U - I|`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m.adjoint() * m - CMatrix::identity(n, n)))
}

/// Anti-Hermitian part `(X - X^dagger) / 2`.
pub fn anti_hermitian_part(m: &CMatrix) -> CMatrix {
    (m - m.adjoint()).scale(0.5)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

fn check_square(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch { expected: m.nrows(), found: m.ncols() });
    }
    if m.nrows() == 0 {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        check_square(&m)?;
        let n = m.nrows();
        for i in 0..n {
            for j in i..n {
                let deviation = (m[(i, j)] - m[(j, i)].conj()).norm();
                if deviation > HERMITIAN_TOL || !deviation.is_finite() {
                    return Err(Error::NonHermitianInput { row: i, col: j, deviation });
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds from a matrix that is Hermitian up to roundoff; the result is
    /// symmetrized exactly.
    pub(crate) fn symmetrized(m: CMatrix) -> Self {
        let h = (&m + m.adjoint()).scale(0.5);
        Self(h)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| c(x, 0.0)));
        Self(CMatrix::from_diagonal(&v))
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(CMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// `U H U^dagger`.
    pub fn conjugate_by(&self, u: &UnitaryMatrix) -> Self {
        Self::symmetrized(u.as_matrix() * &self.0 * u.as_matrix().adjoint())
    }

    pub fn shifted(&self, shift: f64) -> Self {
        let n = self.dim();
        Self(&self.0 + CMatrix::identity(n, n).scale(shift))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(CMatrix);

impl UnitaryMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerance(m, UNITARY_TOL)
    }

    pub fn with_tolerance(m: CMatrix, tol: f64) -> Result<Self> {
        check_square(&m)?;
        let defect = unitarity_defect(&m);
        if defect > tol || !defect.is_finite() {
            return Err(Error::NonUnitary { defect });
        }
        Ok(Self(m))
    }

    /// Caller guarantees unitarity up to accumulated roundoff.
    pub(crate) fn trusted(m: CMatrix) -> Self {
        Self(m)
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n, n))
    }

    /// `e^{i alpha} I`.
    pub fn global_phase(n: usize, alpha: f64) -> Self {
        Self(CMatrix::identity(n, n) * Complex64::from_polar(1.0, alpha))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, rhs: &UnitaryMatrix) -> Self {
        Self(&self.0 * &rhs.0)
    }

    pub fn defect(&self) -> f64 {
        unitarity_defect(&self.0)
    }
}

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: UnitaryMatrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &UnitaryMatrix {
        &self.eigenvectors
    }

    pub fn vector(&self, k: usize) -> CVector {
        self.eigenvectors.as_matrix().column(k).into_owned()
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `sum_k f(lambda_k) v_k v_k^dagger` for a complex-valued `f`.
    pub fn map_complex(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let v = self.eigenvectors.as_matrix();
        let mut scaled = v.clone();
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let fk = f(lambda);
            for z in scaled.column_mut(k).iter_mut() {
                *z *= fk;
            }
        }
        scaled * v.adjoint()
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.map_complex(|x| c(x, 0.0)))
    }
}

/// Spectrum from known eigenpairs; `eigenvalues` must be ascending and the
/// columns of `vectors` the matching eigenvectors.
pub(crate) fn spectrum_unchecked(eigenvalues: Vec<f64>, vectors: UnitaryMatrix) -> Spectrum {
    debug_assert!(eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    Spectrum { eigenvalues, eigenvectors: vectors }
}

pub fn eig_hermitian(h: &HermitianMatrix) -> Spectrum {
    let n = h.dim();
    let eig = SymmetricEigen::new(h.as_matrix().clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Spectrum { eigenvalues, eigenvectors: UnitaryMatrix::trusted(vectors) }
}

/// `sum_k f(lambda_k) v_k v_k^dagger`; fails if `f` is not finite somewhere on
/// the spectrum.
pub fn func_hermitian(h: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    func_spectrum(&eig_hermitian(h), f)
}

pub fn func_spectrum(spectrum: &Spectrum, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    let mut values = Vec::with_capacity(spectrum.dim());
    for &lambda in spectrum.eigenvalues() {
        let y = f(lambda);
        if !y.is_finite() {
            return Err(Error::DomainError { eigenvalue: lambda });
        }
        values.push(y);
    }
    let v = spectrum.eigenvectors().as_matrix();
    let mut scaled = v.clone();
    for (k, y) in values.into_iter().enumerate() {
        for z in scaled.column_mut(k).iter_mut() {
            *z *= y;
        }
    }
    Ok(HermitianMatrix::symmetrized(scaled * v.adjoint()))
}

/// Hilbert-Schmidt inner product `Tr(A^dagger B)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: b.len() });
    }
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}

/// Argument on the branch `(-pi, pi]`.
pub fn principal_arg(z: Complex64) -> Result<f64> {
    if z.norm() < ZERO_AMPLITUDE {
        return Err(Error::ZeroAmplitude { amplitude: z });
    }
    let arg = z.im.atan2(z.re);
    Ok(if arg <= -PI { PI } else { arg })
}

/// Exponential of an anti-Hermitian matrix through the spectrum of `iA`;
/// unitary to roundoff.
pub fn exp_anti_hermitian(a: &CMatrix) -> UnitaryMatrix {
    let h = HermitianMatrix::symmetrized(a * I);
    // A = -i h, so exp(A) = sum e^{-i lambda} v v^dagger.
    let spectrum = eig_hermitian(&h);
    UnitaryMatrix::trusted(spectrum.map_complex(|x| Complex64::from_polar(1.0, -x)))
}

/// Wraps an angle difference into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

pub fn pauli_x() -> HermitianMatrix {
    HermitianMatrix(CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]))
}

pub fn pauli_y() -> HermitianMatrix {
    HermitianMatrix(CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]))
}

pub fn pauli_z() -> HermitianMatrix {
    HermitianMatrix::from_real_diagonal(&[1.0, -1.0])
}
