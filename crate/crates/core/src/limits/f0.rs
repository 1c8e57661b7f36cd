//! The limiting singular-value law of triangular Wigner matrices: density,
//! distribution function, moments and transforms.

use std::f64::consts::{E, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::lambert::{lambert_w0, lambert_w_cut, lambert_w_cut_log};
use crate::error::{Error, Result};

/// Right end of the support.
pub const F0_EDGE: f64 = E;

/// `b / (pi (a^2 + b^2))`: the density in the variable `t = -ln x`.
pub fn f0_log_density(t: f64) -> f64 {
    match lambert_w_cut_log(t) {
        Ok((a, b)) if b > 0.0 => b / (PI * (a * a + b * b)),
        _ => 0.0,
    }
}

/// Density of the limit law on `(0, e)`; zero elsewhere, including both end points.
pub fn f0_density(x: f64) -> f64 {
    if !(x > 0.0 && x < F0_EDGE) {
        return 0.0;
    }
    let (a, b) = if x < 1.0 {
        match lambert_w_cut_log(-x.ln()) {
            Ok(ab) => ab,
            Err(_) => return 0.0,
        }
    } else {
        match lambert_w_cut(-1.0 / x) {
            Ok(c) => (c.a, c.b),
            Err(_) => return 0.0,
        }
    };
    b / (PI * x * (a * a + b * b))
}

/// Distribution function `(1/pi) (b / (a^2 + b^2) + arg W)` with `W = a + ib = W(-1/x)`.
pub fn f0_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 {
        return 0.0;
    }
    if x >= F0_EDGE {
        return 1.0;
    }
    let (a, b) = if x < 1.0 {
        lambert_w_cut_log(-x.ln()).unwrap_or((-1.0, 0.0))
    } else {
        lambert_w_cut(-1.0 / x).map_or((-1.0, 0.0), |c| (c.a, c.b))
    };
    if b == 0.0 {
        return 1.0;
    }
    ((b / (a * a + b * b) + b.atan2(a)) / PI).clamp(0.0, 1.0)
}

/// `k^k / (k+1)!`, with `0^0 = 1`.
pub fn mu0_moment(k: u32) -> f64 {
    let kf = k as f64;
    (1..=k).fold(1.0 / (kf + 1.0), |acc, i| acc * kf / i as f64)
}

/// Stieltjes transform `S(z) = int (x - z)^{-1} dmu(x) = -1 + exp(W(-1/z))`.
///
/// Defined off the support; real `z` in `[0, e]` is a domain error.
pub fn stieltjes_s(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain { function: "stieltjes_s", value: z.re });
    }
    if z.im == 0.0 && (0.0..=F0_EDGE).contains(&z.re) {
        return Err(Error::Domain { function: "stieltjes_s", value: z.re });
    }
    let w = lambert_w0(-1.0 / z)?;
    Ok(exp_m1(w))
}

/// `e^w - 1` without cancellation for small `w`.
fn exp_m1(w: Complex64) -> Complex64 {
    let half_sin = (0.5 * w.im).sin();
    let re = w.re.exp_m1() * w.im.cos() - 2.0 * half_sin * half_sin;
    let im = w.re.exp() * w.im.sin();
    Complex64::new(re, im)
}

const R_SERIES_TERMS: usize = 40;
const R_SERIES_RADIUS: f64 = 0.1;

/// Taylor coefficients of `R` at 0.
fn r_series() -> &'static [f64; R_SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; R_SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        // (1-z) log(1-z) = -z p(z), p = 1 - sum_{n>=1} z^n / (n (n+1)); R = (1/p - 1) / z.
        let mut q = [0.0; R_SERIES_TERMS + 1];
        q[0] = 1.0;
        for n in 1..=R_SERIES_TERMS {
            q[n] = (1..=n).map(|m| q[n - m] / (m * (m + 1)) as f64).sum();
        }
        let mut out = [0.0; R_SERIES_TERMS];
        out.copy_from_slice(&q[1..]);
        out
    })
}

/// R-transform `-1 / ((1-z) log(1-z)) - 1/z` on the unit disc, `1/2` at `0`.
pub fn r_transform(z: Complex64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain { function: "r_transform", value: z.norm() });
    }
    if z.norm() < R_SERIES_RADIUS {
        let c = r_series();
        let mut acc = Complex64::new(0.0, 0.0);
        for &ck in c.iter().rev() {
            acc = acc * z + ck;
        }
        return Ok(acc);
    }
    let one_minus = Complex64::new(1.0, 0.0) - z;
    Ok(-1.0 / (one_minus * one_minus.ln()) - 1.0 / z)
}
