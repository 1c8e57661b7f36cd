use libm::lgamma;

use crate::error::{Error, Result};

fn check_configuration(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::Input("empty eigenvalue vector".into()));
    }
    if x.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::Input("eigenvalues must be finite and positive".into()));
    }
    if x.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Input("eigenvalues must be strictly decreasing".into()));
    }
    Ok(())
}

fn ln_superfactorial(n: usize) -> f64 {
    // ln prod_{j=1}^{n-1} j!
    (1..n).map(|j| lgamma(j as f64 + 1.0)).sum()
}

/// `ln(x_i^theta - x_j^theta)` for `x_i > x_j > 0`, without cancellation.
fn ln_power_gap(xi: f64, xj: f64, theta: f64) -> f64 {
    let ratio_ln = ((xi - xj) / xj).ln_1p();
    theta * xj.ln() + (theta * ratio_ln).exp_m1().ln()
}

/// Log of the ordered joint eigenvalue density of `X X*` for the theta-b ensemble.
pub fn log_joint_density(x: &[f64], theta: f64, b: f64) -> Result<f64> {
    check_configuration(x)?;
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(Error::Input(format!("theta must be >= 0, got {theta}")));
    }
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::Input(format!("b must be > 0, got {b}")));
    }
    let n = x.len();
    let mut acc = -ln_superfactorial(n);
    if theta > 0.0 {
        acc -= (n * (n - 1) / 2) as f64 * theta.ln();
        acc -= (0..n).map(|k| lgamma(theta * k as f64 + b)).sum::<f64>();
    } else {
        acc -= n as f64 * lgamma(b);
    }
    acc -= x.iter().sum::<f64>();
    acc += (b - 1.0) * x.iter().map(|v| v.ln()).sum::<f64>();
    for i in 0..n {
        for j in i + 1..n {
            acc += (x[i] - x[j]).ln();
            acc += if theta > 0.0 {
                ln_power_gap(x[i], x[j], theta)
            } else {
                ((x[i] - x[j]) / x[j]).ln_1p().ln()
            };
        }
    }
    Ok(acc)
}

/// Ordered joint density on `x_1 > ... > x_n > 0`, including all constants.
pub fn joint_density(x: &[f64], theta: f64, b: f64) -> Result<f64> {
    log_joint_density(x, theta, b).map(f64::exp)
}

/// Ordered eigenvalue density of `W W*` for an `n x m` (`n <= m`) matrix `W`
/// of standard complex Gaussians: the Laguerre unitary ensemble.
pub fn complex_wishart_density(x: &[f64], m: usize) -> Result<f64> {
    check_configuration(x)?;
    let n = x.len();
    if m < n {
        return Err(Error::Input(format!("need m >= n, got m = {m}, n = {}", n)));
    }
    let mut acc = 0.0;
    for k in 1..=n {
        acc -= lgamma((m - n + k) as f64) + lgamma(k as f64);
    }
    acc -= x.iter().sum::<f64>();
    acc += (m - n) as f64 * x.iter().map(|v| v.ln()).sum::<f64>();
    for i in 0..n {
        for j in i + 1..n {
            acc += 2.0 * (x[i] - x[j]).ln();
        }
    }
    Ok(acc.exp())
}
