//! Parameter-to-Hamiltonian maps and labeled eigenvector paths along loops.

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, CVector, HermitianMatrix};
use crate::loops::{ParameterLoop, SpherePoint};

/// Energies and eigenvectors with a fixed labeling.
#[derive(Debug, Clone)]
pub struct Eigenpairs {
    pub energies: Vec<f64>,
    pub vectors: Vec<CVector>,
}

/// A smooth map from the parameter sphere to Hamiltonians.
pub trait HamiltonianFamily: Sync {
    fn dim(&self) -> usize;

    fn hamiltonian(&self, p: SpherePoint) -> HermitianMatrix;

    /// Eigenpairs labeled continuously along any loop, when known in closed
    /// form. Required for families with degenerate levels.
    fn analytic_eigenpairs(&self, _p: SpherePoint) -> Option<Eigenpairs> {
        None
    }
}

/// Eigenpairs at every node of a loop; the last frame is the first one
/// again, so phases accumulated around the loop are gauge invariant.
#[derive(Debug, Clone)]
pub struct EigenPaths {
    frames: Vec<Eigenpairs>,
}

impl EigenPaths {
    /// Builds paths from explicit frames, replacing the last by the first.
    pub fn from_frames(mut frames: Vec<Eigenpairs>) -> Result<Self> {
        if frames.len() < 2 {
            return Err(Error::NonClosedLoop("eigenvector path needs at least two frames".into()));
        }
        let n = frames[0].vectors.len();
        if let Some(f) = frames.iter().find(|f| f.vectors.len() != n || f.energies.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: f.vectors.len() });
        }
        let last = frames.len() - 1;
        frames[last] = frames[0].clone();
        Ok(Self { frames })
    }

    pub fn frames(&self) -> &[Eigenpairs] {
        &self.frames
    }

    pub fn n_levels(&self) -> usize {
        self.frames[0].vectors.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.frames.len()
    }

    pub fn vector(&self, k: usize, level: usize) -> &CVector {
        &self.frames[k].vectors[level]
    }

    /// `<n(t_k)|n(t_{k+1})>` for every segment.
    pub fn overlaps(&self, level: usize) -> Vec<num_complex::Complex64> {
        self.frames
            .windows(2)
            .map(|w| w[0].vectors[level].dotc(&w[1].vectors[level]))
            .collect()
    }
}

/// Relative gap below which two numerically computed levels are degenerate.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Eigenpairs of `family` at every node of `lp`.
///
/// Uses the family's analytic eigenvectors when available; otherwise the
/// numerical spectrum, labeled by energy order, which requires every level
/// to stay non-degenerate along the loop.
pub fn eigen_paths(family: &dyn HamiltonianFamily, lp: &ParameterLoop) -> Result<EigenPaths> {
    let frames = lp
        .points()
        .iter()
        .map(|&p| match family.analytic_eigenpairs(p) {
            Some(pairs) => Ok(pairs),
            None => numerical_eigenpairs(&family.hamiltonian(p)),
        })
        .collect::<Result<Vec<_>>>()?;
    EigenPaths::from_frames(frames)
}

fn numerical_eigenpairs(h: &HermitianMatrix) -> Result<Eigenpairs> {
    let spectrum = eig_hermitian(h);
    let energies = spectrum.eigenvalues().to_vec();
    let spread = energies[energies.len() - 1] - energies[0];
    for (level, w) in energies.windows(2).enumerate() {
        let gap = w[1] - w[0];
        if gap <= DEGENERACY_TOL * spread {
            return Err(Error::DegenerateLevel { level, gap });
        }
    }
    let vectors = (0..energies.len()).map(|k| spectrum.vector(k)).collect();
    Ok(Eigenpairs { energies, vectors })
}

/// A family whose Hamiltonian does not depend on the parameters.
#[derive(Debug, Clone)]
pub struct ConstantFamily(pub HermitianMatrix);

impl HamiltonianFamily for ConstantFamily {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn hamiltonian(&self, _p: SpherePoint) -> HermitianMatrix {
        self.0.clone()
    }
}
