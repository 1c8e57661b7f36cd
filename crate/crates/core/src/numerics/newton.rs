use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum number of step halvings in one damped Newton step.
pub const MAX_HALVINGS: usize = 30;

/// Damped Newton iteration for a root of an analytic `f`.
///
/// A full step is tried first and halved while it fails to decrease `|f|`.
/// Stops once `|f(z)| <= tol`.
pub fn newton_complex<F, D>(f: F, df: D, z0: Complex64, tol: f64, max_iter: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
    D: Fn(Complex64) -> Complex64,
{
    let mut z = z0;
    let mut fz = f(z);
    let mut res = fz.norm();
    if !res.is_finite() {
        return Err(Error::Input(format!("function not finite at starting point {z0}")));
    }
    for iter in 0..max_iter {
        if res <= tol {
            return Ok(z);
        }
        let dz = fz / df(z);
        if !(dz.re.is_finite() && dz.im.is_finite()) {
            return Err(stalled(iter, res, z));
        }
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let cand = z - dz * lambda;
            let fc = f(cand);
            let rc = fc.norm();
            if rc.is_finite() && rc < res {
                z = cand;
                fz = fc;
                res = rc;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(stalled(iter + 1, res, z));
        }
    }
    if res <= tol {
        Ok(z)
    } else {
        Err(stalled(max_iter, res, z))
    }
}

fn stalled(iterations: usize, residual: f64, z: Complex64) -> Error {
    Error::Convergence {
        method: "damped Newton",
        iterations,
        residual,
        last_iterate: Some(z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_root_of_one() {
        let z = newton_complex(|z| z * z - 1.0, |z| 2.0 * z, c(2.0, 0.0), 1e-14, 50).unwrap();
        assert!((z - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn picks_root_of_the_basin() {
        let z = newton_complex(|z| z * z + 1.0, |z| 2.0 * z, c(0.5, 0.5), 1e-14, 50).unwrap();
        assert!((z - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn double_root_at_lambert_branch_point() {
        let f = |z: Complex64| z * z.exp() + (-1.0f64).exp();
        let df = |z: Complex64| (z + 1.0) * z.exp();
        let z = newton_complex(f, df, c(-0.9, 0.0), 1e-15, 200).unwrap();
        // Double root: |f| ~ (z+1)^2 / (2e), so z is accurate to ~sqrt(tol).
        assert!((z - c(-1.0, 0.0)).norm() < 1e-7);
        assert!(f(z).norm() <= 1e-15);
    }

    #[test]
    fn reports_last_iterate_when_budget_runs_out() {
        let err = newton_complex(|z| z * z * z - 8.0, |z| 3.0 * z * z, c(100.0, 1.0), 1e-14, 3).unwrap_err();
        match err {
            Error::Convergence { iterations, last_iterate, .. } => {
                assert_eq!(iterations, 3);
                assert!(last_iterate.is_some());
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
