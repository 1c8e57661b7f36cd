//! Singular values of dense complex matrices.
//!
//! The matrix is reduced to real upper-bidiagonal form with Householder
//! reflectors applied alternately from the left and the right, then the
//! bidiagonal is diagonalised with the Golub-Kahan implicit-shift QR sweep.
//! Only singular values are produced, so no reflector is ever stored.
//!
//! The reduction makes a single pass over the trailing block per step: the
//! right reflector of step `k` is applied to a column immediately before the
//! left reflector of step `k + 1` touches it.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Sweep budget per superdiagonal element of the bidiagonal.
pub const SWEEPS_PER_ELEMENT: usize = 75;

/// Singular values of `m` in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::Input("singular values of an empty matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::Input("matrix has a non-finite entry".into()));
    }
    let work = if m.rows() >= m.cols() {
        m.clone()
    } else {
        m.adjoint()
    };
    let (mut d, mut e) = bidiagonalize(work);
    bidiagonal_qr(&mut d, &mut e)?;
    d.sort_by(|a, b| b.total_cmp(a));
    Ok(d)
}

/// Householder vector `v` (with `v[0]` free) such that `(I - tau v v*) x = beta e1`.
/// Returns `(tau, beta)` and overwrites `x` with `v`; `None` when `x` is zero.
fn householder(x: &mut [Complex64]) -> Option<(f64, Complex64)> {
    let norm = x.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    if norm == 0.0 {
        return None;
    }
    let x0 = x[0];
    let phase = if x0.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        x0 / x0.norm()
    };
    let beta = -phase * norm;
    x[0] -= beta;
    let vnorm_sqr: f64 = x.iter().map(Complex64::norm_sqr).sum();
    if vnorm_sqr == 0.0 {
        return None;
    }
    Some((2.0 / vnorm_sqr, beta))
}

struct PendingRight {
    /// `A u` over rows `k+1..`.
    t: Vec<Complex64>,
    /// Right reflector over columns `k+1..`.
    u: Vec<Complex64>,
    tau: f64,
}

impl PendingRight {
    /// Applies `A <- A - tau t u*` to one column whose first row is `row0`.
    fn apply(&self, col: &mut [Complex64], local_j: usize) {
        let coef = self.u[local_j].conj() * self.tau;
        if coef.re == 0.0 && coef.im == 0.0 {
            return;
        }
        for (a, t) in col.iter_mut().zip(&self.t) {
            *a -= t * coef;
        }
    }
}

/// Reduces a tall (rows >= cols) matrix to bidiagonal form and returns the
/// moduli of the diagonal and superdiagonal.
fn bidiagonalize(mut a: ComplexMatrix) -> (Vec<f64>, Vec<f64>) {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = vec![0.0; cols];
    let mut e = vec![0.0; cols.saturating_sub(1)];
    let mut pending: Option<PendingRight> = None;
    let mut v: Vec<Complex64> = Vec::with_capacity(rows);

    for k in 0..cols {
        // Column k now carries every earlier reflector except the pending right one.
        if let Some(p) = &pending {
            p.apply(&mut a.column_mut(k)[k..], 0);
        }
        v.clear();
        v.extend_from_slice(&a.column(k)[k..]);
        let left = householder(&mut v);
        d[k] = left.map_or(0.0, |(_, beta)| beta.norm());

        let tail_rows = rows - k - 1;
        let mut t_acc = vec![Complex64::new(0.0, 0.0); tail_rows];
        let mut y = Vec::with_capacity(cols - k - 1);
        for j in k + 1..cols {
            let col = &mut a.column_mut(j)[k..];
            if let Some(p) = &pending {
                p.apply(col, j - k);
            }
            if let Some((tau, _)) = left {
                let s: Complex64 = v.iter().zip(col.iter()).map(|(vi, ai)| vi.conj() * ai).sum();
                let coef = s * tau;
                for (ai, vi) in col.iter_mut().zip(&v) {
                    *ai -= vi * coef;
                }
            }
            let yj = col[0];
            y.push(yj);
            let yc = yj.conj();
            for (t, ai) in t_acc.iter_mut().zip(&col[1..]) {
                *t += ai * yc;
            }
        }

        pending = None;
        if k + 1 < cols {
            // Reflect w = conj(y) onto delta e1; then row k times H is conj(delta) e1.
            let mut u: Vec<Complex64> = y.iter().map(Complex64::conj).collect();
            if let Some((tau, delta)) = householder(&mut u) {
                e[k] = delta.norm();
                // A u = A conj(y) - delta A[:, k+1]
                let first = &a.column(k + 1)[k + 1..];
                for (t, ai) in t_acc.iter_mut().zip(first) {
                    *t -= ai * delta;
                }
                pending = Some(PendingRight { t: t_acc, u, tau });
            } else {
                e[k] = 0.0;
            }
        }
    }
    (d, e)
}

/// Diagonalises the real upper-bidiagonal matrix with diagonal `d` and
/// superdiagonal `e` in place; on return `d` holds the singular values.
pub(crate) fn bidiagonal_qr(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    // rv[i] couples d[i-1] and d[i]; rv[0] is always zero.
    let mut rv = vec![0.0; n];
    rv[1..].copy_from_slice(&e[..n - 1]);
    let anorm = d
        .iter()
        .zip(&rv)
        .map(|(a, b)| a.abs() + b.abs())
        .fold(0.0, f64::max);
    let negligible = |x: f64| x.abs() <= f64::EPSILON * anorm;
    let budget = SWEEPS_PER_ELEMENT * n.saturating_sub(1).max(1);
    let mut sweeps = 0usize;

    for k in (0..n).rev() {
        loop {
            // Find the top l of the unreduced block ending at k.
            let mut l = k;
            let mut cancel = false;
            loop {
                if l == 0 || negligible(rv[l]) {
                    break;
                }
                if negligible(d[l - 1]) {
                    cancel = true;
                    break;
                }
                l -= 1;
            }
            if cancel {
                // d[l-1] is zero: rotate rv[l] out of the block.
                let mut c = 0.0;
                let mut s = 1.0;
                for i in l..=k {
                    let f = s * rv[i];
                    rv[i] *= c;
                    if negligible(f) {
                        break;
                    }
                    let g = d[i];
                    let h = f.hypot(g);
                    d[i] = h;
                    c = g / h;
                    s = -f / h;
                }
            }
            if l == k {
                d[k] = d[k].abs();
                break;
            }
            if sweeps >= budget {
                return Err(Error::Convergence {
                    method: "bidiagonal QR",
                    iterations: sweeps,
                    residual: rv[k].abs(),
                    last_iterate: None,
                });
            }
            sweeps += 1;

            // Wilkinson-type shift from the trailing 2x2 block.
            let z = d[k];
            let mut x = d[l];
            let mut y = d[k - 1];
            let mut g = rv[k - 1];
            let mut h = rv[k];
            let mut f = ((y - z) * (y + z) + (g - h) * (g + h)) / (2.0 * h * y);
            g = f.hypot(1.0);
            f = ((x - z) * (x + z) + h * ((y / (f + g.copysign(f))) - h)) / x;

            let mut c = 1.0;
            let mut s = 1.0;
            for j in l..k {
                let i = j + 1;
                g = rv[i];
                y = d[i];
                h = s * g;
                g *= c;
                let mut zz = f.hypot(h);
                rv[j] = zz;
                c = f / zz;
                s = h / zz;
                f = x * c + g * s;
                g = g * c - x * s;
                h = y * s;
                y *= c;
                zz = f.hypot(h);
                d[j] = zz;
                if zz != 0.0 {
                    c = f / zz;
                    s = h / zz;
                }
                f = c * g + s * y;
                x = c * y - s * g;
            }
            rv[l] = 0.0;
            rv[k] = f;
            d[k] = x;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_unit_singular_values() {
        let s = singular_values(&ComplexMatrix::identity(3)).unwrap();
        for v in s {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn complex_diagonal_gives_moduli() {
        let m = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(0.0, 4.0)]);
        let s = singular_values(&m).unwrap();
        assert!((s[0] - 4.0).abs() < 1e-14);
        assert!((s[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn lower_triangular_two_by_two() {
        // m m* = [[1,1],[1,2]] with eigenvalues (3 +- sqrt 5)/2
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]])
            .unwrap();
        let s = singular_values(&m).unwrap();
        let r5 = 5f64.sqrt();
        assert!((s[0] * s[0] - (3.0 + r5) / 2.0).abs() < 1e-14);
        assert!((s[1] * s[1] - (3.0 - r5) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn wide_and_tall_agree() {
        let m = ComplexMatrix::from_fn(3, 5, |i, j| c((i + 2 * j) as f64 * 0.3 - 1.0, (i * j) as f64 * 0.1));
        let a = singular_values(&m).unwrap();
        let b = singular_values(&m.adjoint()).unwrap();
        assert_eq!(a.len(), 3);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_deficient_matrix_has_zero_value() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| c((i + 1) as f64 * (j + 1) as f64, 0.0));
        let s = singular_values(&m).unwrap();
        assert!((s[0] - 30.0).abs() < 1e-12);
        for v in &s[1..] {
            assert!(v.abs() < 1e-12);
        }
    }

    #[test]
    fn non_finite_entry_is_rejected() {
        let mut m = ComplexMatrix::identity(2);
        m[(1, 0)] = c(f64::NAN, 0.0);
        assert!(matches!(singular_values(&m), Err(Error::Input(_))));
    }

    #[test]
    fn zero_diagonal_in_bidiagonal_is_handled() {
        let mut d = vec![1.0, 0.0, 2.0];
        let mut e = vec![1.0, 1.0];
        bidiagonal_qr(&mut d, &mut e).unwrap();
        // B^T B has trace equal to the squared Frobenius norm.
        let sum: f64 = d.iter().map(|x| x * x).sum();
        assert!((sum - 7.0).abs() < 1e-13);
        let prod: f64 = d.iter().product();
        assert!(prod.abs() < 1e-13);
    }
}
