use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// QR factorisation `m = Q R` of a square matrix with `Q` unitary and `R`
/// upper triangular with strictly positive real diagonal.
///
/// With that normalisation the factor `Q` of a matrix of i.i.d. standard
/// complex Gaussians is Haar distributed on the unitary group.
pub fn qr_unitary(m: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::Input(format!(
            "QR needs a non-empty square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::Input("matrix has a non-finite entry".into()));
    }
    let n = m.rows();
    let tol = (n as f64) * f64::EPSILON * m.frobenius_norm_sqr().sqrt();
    let mut r = m.clone();
    let mut q = ComplexMatrix::identity(n);
    let mut diag = vec![Complex64::new(0.0, 0.0); n];

    for k in 0..n {
        let mut v: Vec<Complex64> = r.column(k)[k..].to_vec();
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm <= tol {
            return Err(Error::Degeneracy(format!(
                "column {k} is numerically dependent (|R_kk| = {norm:e})"
            )));
        }
        let phase = if v[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        let beta = -phase * norm;
        v[0] -= beta;
        let tau = 2.0 / v.iter().map(Complex64::norm_sqr).sum::<f64>();

        for j in k..n {
            let col = &mut r.column_mut(j)[k..];
            let s: Complex64 = v.iter().zip(col.iter()).map(|(vi, a)| vi.conj() * a).sum();
            let coef = s * tau;
            for (a, vi) in col.iter_mut().zip(&v) {
                *a -= vi * coef;
            }
        }
        // Q <- Q H, touching columns k.. only.
        let mut qv = vec![Complex64::new(0.0, 0.0); n];
        for (idx, vi) in v.iter().enumerate() {
            for (acc, qij) in qv.iter_mut().zip(q.column(k + idx)) {
                *acc += qij * vi;
            }
        }
        for (idx, vi) in v.iter().enumerate() {
            let coef = vi.conj() * tau;
            for (qij, acc) in q.column_mut(k + idx).iter_mut().zip(&qv) {
                *qij -= acc * coef;
            }
        }
        diag[k] = beta;
        for i in k + 1..n {
            r[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }

    // Rotate phases so that diag(R) is real positive: Q <- Q D, R <- D* R.
    for (k, beta) in diag.iter().enumerate() {
        let ph = beta / beta.norm();
        for qik in q.column_mut(k) {
            *qik *= ph;
        }
        let phc = ph.conj();
        for j in k..n {
            r[(k, j)] *= phc;
        }
        r[(k, k)] = Complex64::new(beta.norm(), 0.0);
    }
    Ok((q, r))
}
