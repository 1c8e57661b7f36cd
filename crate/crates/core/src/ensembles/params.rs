use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Law of the entries of a triangular Wigner-type matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryLaw {
    StandardComplexGaussian,
    UniformPhaseUnitModulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum EnsembleKind {
    /// Every entry on and below the diagonal is i.i.d. with the given law.
    TriangularWigner { entry_law: EntryLaw },
    /// Gaussian below the diagonal; `|X_kk|^2 ~ Gamma(theta (k-1) + b)`.
    ThetaB { theta: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleParams {
    pub n: usize,
    pub kind: EnsembleKind,
}

impl EnsembleParams {
    pub fn wigner(n: usize, entry_law: EntryLaw) -> Self {
        Self {
            n,
            kind: EnsembleKind::TriangularWigner { entry_law },
        }
    }

    pub fn theta_b(n: usize, theta: f64, b: f64) -> Self {
        Self {
            n,
            kind: EnsembleKind::ThetaB { theta, b },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Input("matrix size n must be at least 1".into()));
        }
        if let EnsembleKind::ThetaB { theta, b } = self.kind {
            if !(theta.is_finite() && theta >= 0.0) {
                return Err(Error::Input(format!("theta must be finite and >= 0, got {theta}")));
            }
            if !(b.is_finite() && b > 0.0) {
                return Err(Error::Input(format!("b must be finite and > 0, got {b}")));
            }
        }
        Ok(())
    }

    /// Gamma shape of diagonal entry `k` (1-based) for the theta-b kind.
    pub fn diagonal_shape(&self, k: usize) -> Option<f64> {
        match self.kind {
            EnsembleKind::ThetaB { theta, b } => Some(theta * (k as f64 - 1.0) + b),
            EnsembleKind::TriangularWigner { .. } => None,
        }
    }
}
