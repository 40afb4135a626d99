//! Density matrices, Gibbs states and purifications `W = sqrt(rho) V`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, func_spectrum, hs_inner, max_abs, spectrum_unchecked, CMatrix, HermitianMatrix,
    Spectrum, UnitaryMatrix,
};

pub const TRACE_TOL: f64 = 1e-12;
/// Smallest eigenvalue still treated as full rank.
pub const MIN_EIGENVALUE: f64 = 1e-300;
/// `beta * spread(H)` beyond which Gibbs weights cannot stay full rank.
pub const MAX_GIBBS_EXPONENT: f64 = 1400.0;

/// Full-rank, unit-trace density matrix with its cached spectrum.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: HermitianMatrix,
    spectrum: Spectrum,
    beta: Option<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: HermitianMatrix) -> Result<Self> {
        let spectrum = eig_hermitian(&matrix);
        Self::from_parts(matrix, spectrum, None)
    }

    fn from_parts(matrix: HermitianMatrix, spectrum: Spectrum, beta: Option<f64>) -> Result<Self> {
        let trace: f64 = spectrum.eigenvalues().iter().sum();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized { trace });
        }
        let min_eigenvalue = spectrum.eigenvalues()[0];
        if min_eigenvalue <= MIN_EIGENVALUE {
            return Err(Error::RankDeficient { min_eigenvalue });
        }
        Ok(Self { matrix, spectrum, beta })
    }

    /// `I / N`.
    pub fn maximally_mixed(n: usize) -> Self {
        let matrix = HermitianMatrix::from_real_diagonal(&vec![1.0 / n as f64; n]);
        let spectrum = eig_hermitian(&matrix);
        Self { matrix, spectrum, beta: Some(0.0) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &HermitianMatrix {
        &self.matrix
    }

    pub fn as_matrix(&self) -> &CMatrix {
        self.matrix.as_matrix()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.spectrum.eigenvalues()
    }

    /// Inverse temperature, when built by [`gibbs_state`].
    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    pub fn sqrt(&self) -> HermitianMatrix {
        func_spectrum(&self.spectrum, f64::sqrt).expect("full-rank spectrum is positive")
    }

    /// `U rho U^dagger`; keeps `beta`.
    pub fn conjugate_by(&self, u: &UnitaryMatrix) -> Self {
        let matrix = self.matrix.conjugate_by(u);
        let vectors = u.compose(self.spectrum.eigenvectors());
        let spectrum = spectrum_unchecked(self.spectrum.eigenvalues().to_vec(), vectors);
        Self { matrix, spectrum, beta: self.beta }
    }

    /// `Tr(rho X)`.
    pub fn expectation(&self, x: &CMatrix) -> Complex64 {
        (self.as_matrix() * x).trace()
    }
}

/// `rho = e^{-beta H} / Tr e^{-beta H}`, exponentiated in the eigenbasis of
/// `H` with the ground energy subtracted first.
pub fn gibbs_state(h: &HermitianMatrix, beta: f64) -> Result<DensityMatrix> {
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::InvalidArgument(format!("beta must be finite and >= 0, got {beta}")));
    }
    if h.as_matrix().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidArgument("Hamiltonian has non-finite entries".into()));
    }
    let spectrum = eig_hermitian(h);
    let energies = spectrum.eigenvalues();
    let ground = energies[0];
    let spread = energies[energies.len() - 1] - ground;
    let exponent = beta * spread;
    if exponent > MAX_GIBBS_EXPONENT {
        return Err(Error::Overflow { exponent });
    }
    let boltzmann: Vec<f64> = energies.iter().map(|e| (-beta * (e - ground)).exp()).collect();
    let z: f64 = boltzmann.iter().sum();
    let weights: Vec<f64> = boltzmann.iter().map(|w| w / z).collect();
    if weights.iter().any(|&w| w <= MIN_EIGENVALUE) {
        return Err(Error::Overflow { exponent });
    }
    let n = weights.len();
    let ascending: Vec<f64> = weights.iter().rev().copied().collect();
    let vectors = spectrum.eigenvectors().as_matrix();
    let reversed = CMatrix::from_fn(n, n, |i, j| vectors[(i, n - 1 - j)]);
    let rho_spectrum = spectrum_unchecked(ascending, UnitaryMatrix::trusted(reversed));
    let matrix = rho_spectrum.reconstruct();
    DensityMatrix::from_parts(matrix, rho_spectrum, Some(beta))
}

/// Purification `W = sqrt(rho) V` with its phase factor kept alongside.
#[derive(Debug, Clone)]
pub struct Amplitude {
    w: CMatrix,
    v: UnitaryMatrix,
}

impl Amplitude {
    pub fn w(&self) -> &CMatrix {
        &self.w
    }

    pub fn v(&self) -> &UnitaryMatrix {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.w.nrows()
    }

    /// Amplitude given directly as `W` with a claimed phase factor `V`;
    /// checks `W = sqrt(W W^dagger) V` and `Tr(W W^dagger) = 1`.
    pub fn from_parts(w: CMatrix, v: UnitaryMatrix) -> Result<Self> {
        if w.shape() != (v.dim(), v.dim()) {
            return Err(Error::DimensionMismatch { expected: v.dim(), found: w.nrows() });
        }
        let norm = hs_inner(&w, &w)?.re;
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized { trace: norm });
        }
        let rho = HermitianMatrix::symmetrized(&w * w.adjoint());
        let sqrt_rho = func_spectrum(&eig_hermitian(&rho), |x| x.max(0.0).sqrt())?;
        let defect = max_abs(&(sqrt_rho.as_matrix() * v.as_matrix() - &w));
        if defect > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "W is not sqrt(W W^dagger) V (defect {defect:e})"
            )));
        }
        Ok(Self { w, v })
    }

    /// The `N^2`-component purified state `|W> = sum_ij W_ij |i>_s |j>_a`.
    pub fn purified_vector(&self) -> Vec<Complex64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.w[(i, j)]);
            }
        }
        out
    }
}

pub fn purify(rho: &DensityMatrix, v: &UnitaryMatrix) -> Result<Amplitude> {
    if rho.dim() != v.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: v.dim() });
    }
    let w = rho.sqrt().as_matrix() * v.as_matrix();
    Ok(Amplitude { w, v: v.clone() })
}

/// Amplitude from a precomputed `sqrt(rho)`; the caller vouches for it.
pub(crate) fn purify_with_sqrt(sqrt_rho: &HermitianMatrix, v: &UnitaryMatrix) -> Amplitude {
    Amplitude { w: sqrt_rho.as_matrix() * v.as_matrix(), v: v.clone() }
}

/// `rho = W W^dagger` (the partial trace over the ancilla).
pub fn reconstruct(w: &Amplitude) -> Result<DensityMatrix> {
    let rho = HermitianMatrix::symmetrized(w.w() * w.w().adjoint());
    DensityMatrix::new(rho)
}

/// `<W1|W2> = Tr(W1^dagger W2)`.
pub fn purified_overlap(w1: &Amplitude, w2: &Amplitude) -> Result<Complex64> {
    hs_inner(w1.w(), w2.w())
}
