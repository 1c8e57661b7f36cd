use serde::{Deserialize, Serialize};

use super::linalg::LuFactors;
use super::stirling::stirling_unsigned;
use crate::error::{Error, Result};
use crate::numerics::{integrate, Domain, QuadratureRule};

/// Largest size of the moment matrix and kernel; `G` loses about a digit per step in n.
pub const MAX_KERNEL_N: usize = 8;

const G_ABS_TOL: f64 = 1e-12;
const G_REL_TOL: f64 = 1e-13;

/// `g_{j,k} = int_0^inf x^{j+b-1} (log x)^k e^{-x} dx`.
pub fn g_entry(j: usize, k: usize, b: f64) -> Result<f64> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::Input(format!("b must be > 0, got {b}")));
    }
    let p = j as f64 + b - 1.0;
    let kk = k as i32;
    let f = move |x: f64| {
        if x == 0.0 {
            return 0.0;
        }
        let l = x.ln();
        (p * l - x).exp() * l.powi(kk)
    };
    integrate(f, Domain::HalfLine, &QuadratureRule::half_line(G_ABS_TOL, G_REL_TOL))
}

/// The `n x n` log-moment matrix `(g_{j,k})_{0 <= j,k < n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentMatrixG {
    pub n: usize,
    pub b: f64,
    /// Row-major, row index `j` (power of x), column index `k` (power of log x).
    pub entries: Vec<f64>,
}

impl MomentMatrixG {
    pub fn new(n: usize, b: f64) -> Result<Self> {
        if n == 0 || n > MAX_KERNEL_N {
            return Err(Error::Range(format!("moment matrix size must be in 1..={MAX_KERNEL_N}, got {n}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                entries.push(g_entry(j, k, b)?);
            }
        }
        Ok(Self { n, b, entries })
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.entries[j * self.n + k]
    }

    pub fn lu(&self) -> Result<LuFactors> {
        LuFactors::new(self.n, &self.entries)
    }

    pub fn determinant(&self) -> Result<f64> {
        Ok(self.lu()?.determinant())
    }
}

/// `det G^{(n)}` for weight parameter `b`.
pub fn det_g(n: usize, b: f64) -> Result<f64> {
    MomentMatrixG::new(n, b)?.determinant()
}

/// Falling factorial `(k)_r`, with `(0)_r = 1`.
fn falling(k: usize, r: usize) -> f64 {
    if k == 0 {
        return 1.0;
    }
    (0..r).map(|i| (k - i) as f64).product()
}

/// `|g_{j,k} - sum_r |s(j+1, r+1)| (k)_r g_{0,k-r}|` at `b = 1`.
pub fn lu_identity_residual(j: usize, k: usize) -> Result<f64> {
    let lhs = g_entry(j, k, 1.0)?;
    let mut rhs = 0.0;
    for r in 0..=j.min(k) {
        let s = stirling_unsigned(j + 1, r + 1)? as f64;
        rhs += s * falling(k, r) * g_entry(0, k - r, 1.0)?;
    }
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_entries() {
        assert!((g_entry(0, 0, 1.0).unwrap() - 1.0).abs() < 1e-13);
        assert!((g_entry(1, 0, 1.0).unwrap() - 1.0).abs() < 1e-13);
        assert!((g_entry(0, 1, 1.0).unwrap() + 0.577_215_664_901_532_9).abs() < 1e-12);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(MomentMatrixG::new(9, 1.0), Err(Error::Range(_))));
        assert!(matches!(MomentMatrixG::new(0, 1.0), Err(Error::Range(_))));
    }

    #[test]
    fn falling_factorial_convention() {
        assert_eq!(falling(0, 3), 1.0);
        assert_eq!(falling(5, 2), 20.0);
        assert_eq!(falling(3, 0), 1.0);
    }
}
