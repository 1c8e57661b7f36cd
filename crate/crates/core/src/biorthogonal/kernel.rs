use serde::{Deserialize, Serialize};

use super::linalg::LuFactors;
use super::moments::MomentMatrixG;
use crate::error::{Error, Result};

/// Coefficients `C = G^{-1}` of the determinantal kernel for the theta = 0 ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelCoeffs {
    pub n: usize,
    pub b: f64,
    /// Row-major `c_{j,k}`.
    pub c: Vec<f64>,
}

impl KernelCoeffs {
    pub fn new(n: usize, b: f64) -> Result<Self> {
        Self::from_moments(&MomentMatrixG::new(n, b)?)
    }

    pub fn from_moments(g: &MomentMatrixG) -> Result<Self> {
        let c = g.lu()?.inverse();
        Ok(Self { n: g.n, b: g.b, c })
    }

    pub fn get(&self, j: usize, k: usize) -> f64 {
        self.c[j * self.n + k]
    }
}

/// `K_n(x, y) = e^{-(x+y)/2} (xy)^{(b-1)/2} sum_{j,k} c_{j,k} (log y)^j x^k`.
pub fn kernel_eval(x: f64, y: f64, coeffs: &KernelCoeffs) -> f64 {
    let n = coeffs.n;
    let ly = y.ln();
    let mut total = 0.0;
    let mut ly_pow = 1.0;
    for j in 0..n {
        // Horner in x for row j.
        let mut row = 0.0;
        for k in (0..n).rev() {
            row = row * x + coeffs.get(j, k);
        }
        total += row * ly_pow;
        ly_pow *= ly;
    }
    let weight = (-(x + y) / 2.0 + (coeffs.b - 1.0) / 2.0 * (x.ln() + ly)).exp();
    weight * total
}

/// Correlation function `det[K_n(x_i, x_j)]` of the points.
pub fn correlation(points: &[f64], coeffs: &KernelCoeffs) -> Result<f64> {
    let m = points.len();
    if m == 0 || m > coeffs.n {
        return Err(Error::Input(format!("need between 1 and {} points, got {m}", coeffs.n)));
    }
    if points.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
        return Err(Error::Input("points must be finite and positive".into()));
    }
    let mut k = Vec::with_capacity(m * m);
    for &xi in points {
        for &xj in points {
            k.push(kernel_eval(xi, xj, coeffs));
        }
    }
    match LuFactors::new(m, &k) {
        Ok(lu) => Ok(lu.determinant()),
        Err(Error::Degeneracy(_)) => Ok(0.0),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_kernel() {
        let c = KernelCoeffs::new(1, 1.0).unwrap();
        assert!((kernel_eval(1.0, 1.0, &c) - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn coincident_points_repel() {
        let c = KernelCoeffs::new(3, 1.0).unwrap();
        assert_eq!(correlation(&[1.3, 1.3], &c).unwrap(), 0.0);
    }
}
