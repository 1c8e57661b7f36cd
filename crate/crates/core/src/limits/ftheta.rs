//! Limit law of the theta-b ensemble for `theta > 1`, `b = 1`.
//!
//! With `J(z) = theta (z+1) ((z+1)/z)^{1/theta}`, the density at `x` is
//! `theta / (pi x) Im I(x)` where `I(x)` is the root of `J(z) = x` in the
//! upper half plane on the branch that meets the real critical point
//! `z = 1/theta` at the right edge.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::newton_complex;

const NEWTON_TOL: f64 = 1e-14;
const NEWTON_MAX_ITER: usize = 60;
const SEED_OFFSET: f64 = 0.2;

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { function: "ftheta", value: theta })
    }
}

/// Right end of the support, `(1 + theta)^{1 + 1/theta}`.
pub fn ftheta_edge(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok((1.0 + theta).powf(1.0 + 1.0 / theta))
}

/// `J(z)` with principal powers.
pub fn ftheta_j(z: Complex64, theta: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    theta * (z + one) * ((z + one) / z).powf(1.0 / theta)
}

/// `log J - log(x)` and its derivative in the shifted variable `w = z + 1`,
/// which keeps full relative precision as the root approaches `z = -1`.
fn log_equation(theta: f64, log_x: f64) -> (impl Fn(Complex64) -> Complex64, impl Fn(Complex64) -> Complex64) {
    let k = 1.0 / theta;
    let shift = log_x - theta.ln();
    let f = move |w: Complex64| (1.0 + k) * w.ln() - k * (w - 1.0).ln() - shift;
    let df = move |w: Complex64| (1.0 + k) / w - k / (w - 1.0);
    (f, df)
}

/// Newton tolerance on `log J - log x`, above the rounding floor of the log terms.
fn newton_tol(theta: f64, log_x: f64) -> f64 {
    NEWTON_TOL * (2.0 + (log_x - theta.ln()).abs())
}

/// Newton root of `J(z) = e^{log_x}` started from `seed`, in either half plane.
pub fn ftheta_root_from(x: f64, theta: f64, seed: Complex64) -> Result<Complex64> {
    check_theta(theta)?;
    let (f, df) = log_equation(theta, x.ln());
    let w = newton_complex(f, df, seed + 1.0, newton_tol(theta, x.ln()), NEWTON_MAX_ITER)?;
    Ok(w - 1.0)
}

/// Tracks the root branch, in `w = z + 1`, as `ln x` moves from `u0` to `u1`.
fn continue_root(theta: f64, mut z: Complex64, u0: f64, u1: f64) -> Result<Complex64> {
    let mut u = u0;
    let mut h = (u1 - u0).clamp(-0.25, 0.25);
    let mut steps = 0usize;
    while u != u1 {
        steps += 1;
        if steps > 100_000 || h.abs() < 1e-15 {
            return Err(Error::Convergence {
                method: "root continuation",
                iterations: steps,
                residual: (u1 - u).abs(),
                last_iterate: Some(z),
            });
        }
        let target = if (u1 - u).abs() <= h.abs() { u1 } else { u + h };
        let (_, df) = log_equation(theta, target);
        let predicted = z + (target - u) / df(z);
        // Stay well inside the upper half plane; near the edge Im z is small.
        let accepted = if (predicted - z).norm() <= 0.3 * z.im {
            let (f, df) = log_equation(theta, target);
            newton_complex(f, df, predicted, newton_tol(theta, target), NEWTON_MAX_ITER)
                .ok()
                .filter(|r| r.im > 0.0 && (r - predicted).norm() <= 0.25 * (predicted - z).norm())
        } else {
            None
        };
        match accepted {
            Some(r) => {
                z = r;
                u = target;
                h *= 1.5;
                h = h.clamp(-0.25, 0.25);
            }
            None => h *= 0.5,
        }
    }
    Ok(z)
}

/// The upper root `I(x)` for `0 < x < edge`.
///
/// Newton is seeded at `1/theta + 0.2i`, where `J` is nearly real, and the
/// root is then continued in `ln x` to the requested point.
pub fn ftheta_root(x: f64, theta: f64) -> Result<Complex64> {
    root_w(x, theta).map(|w| w - 1.0)
}

/// `I(x) + 1`.
fn root_w(x: f64, theta: f64) -> Result<Complex64> {
    let edge = ftheta_edge(theta)?;
    if !(x > 0.0 && x < edge) {
        return Err(Error::Domain { function: "ftheta_root", value: x });
    }
    let seed = Complex64::new(1.0 / theta, SEED_OFFSET);
    let x_seed = ftheta_j(seed, theta).norm();
    let z0 = ftheta_root_from(x_seed, theta, seed)? + 1.0;
    if z0.im <= 0.0 {
        return Err(Error::Branch(format!("seed root {} is not in the upper half plane", z0 - 1.0)));
    }
    let z = continue_root(theta, z0, x_seed.ln(), x.ln())?;
    if z.im <= 0.0 {
        return Err(Error::Branch(format!("root {} at x = {x} is not in the upper half plane", z - 1.0)));
    }
    Ok(z)
}

/// Roots along a descending sweep of `xs` (each in `(0, edge)`), reusing the
/// previous root as the start of the next continuation.
pub fn ftheta_roots_descending(xs: &[f64], theta: f64) -> Result<Vec<Complex64>> {
    Ok(roots_w_descending(xs, theta)?.into_iter().map(|w| w - 1.0).collect())
}

fn roots_w_descending(xs: &[f64], theta: f64) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(xs.len());
    let mut prev: Option<(f64, Complex64)> = None;
    for &x in xs {
        let z = match prev {
            Some((px, pz)) if x <= px => continue_root(theta, pz, px.ln(), x.ln())?,
            _ => root_w(x, theta)?,
        };
        if z.im <= 0.0 {
            return Err(Error::Branch(format!("root {} at x = {x} is not in the upper half plane", z - 1.0)));
        }
        out.push(z);
        prev = Some((x, z));
    }
    Ok(out)
}

/// Density from a known upper root `w = I + 1`.
fn density_from_root(x: f64, theta: f64, w: Complex64) -> f64 {
    theta * w.im / (PI * x)
}

/// Distribution function `1 + Im[theta I - (theta+1) Log(1+I)] / pi` from `w = I + 1`.
fn cdf_from_root(theta: f64, w: Complex64) -> f64 {
    let v = theta * w.im - (theta + 1.0) * w.arg();
    (1.0 + v / PI).clamp(0.0, 1.0)
}

/// Density of the limit law; zero off the open support.
pub fn ftheta_density(x: f64, theta: f64) -> Result<f64> {
    let edge = ftheta_edge(theta)?;
    if !(x > 0.0 && x < edge) {
        return Ok(0.0);
    }
    Ok(density_from_root(x, theta, root_w(x, theta)?))
}

/// Distribution function of the limit law.
pub fn ftheta_cdf(x: f64, theta: f64) -> Result<f64> {
    let edge = ftheta_edge(theta)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x >= edge {
        return Ok(1.0);
    }
    Ok(cdf_from_root(theta, root_w(x, theta)?))
}

/// Density and distribution function at ascending points, computed by a
/// single sweep from the edge inward.
pub fn ftheta_density_and_cdf(xs: &[f64], theta: f64) -> Result<Vec<(f64, f64)>> {
    let edge = ftheta_edge(theta)?;
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[j].total_cmp(&xs[i]));
    let inside: Vec<usize> = order.iter().copied().filter(|&i| xs[i] > 0.0 && xs[i] < edge).collect();
    let pts: Vec<f64> = inside.iter().map(|&i| xs[i]).collect();
    let roots = roots_w_descending(&pts, theta)?;
    let mut out: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| if x >= edge { (0.0, 1.0) } else { (0.0, 0.0) })
        .collect();
    for (&i, z) in inside.iter().zip(&roots) {
        out[i] = (density_from_root(xs[i], theta, *z), cdf_from_root(theta, *z));
    }
    Ok(out)
}
