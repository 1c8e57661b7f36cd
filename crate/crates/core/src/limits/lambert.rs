//! Principal branch of the Lambert W function: real, on the upper edge of the
//! cut `(-inf, -1/e]`, and in the upper half plane.

use std::f64::consts::{E, FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `-1/e` rounded to the nearest double.
pub const BRANCH_POINT: f64 = -0.367_879_441_171_442_33;

/// `W = a + ib` on the upper edge of the cut at `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambertCutValue {
    pub a: f64,
    pub b: f64,
    pub z: f64,
}

impl LambertCutValue {
    pub fn w(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }
}

/// `1 + e x` for `x` near the branch point, without losing the low bits of `x`.
fn branch_offset(x: f64) -> f64 {
    // e = E_HI + E_LO exactly enough for the product to be correct to ~1 ulp.
    const E_LO: f64 = 1.445_646_891_729_250_2e-16;
    E.mul_add(x, 1.0) + E_LO * x
}

/// Real principal branch, `w >= -1` with `w e^w = x`.
pub fn lambert_w_real(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain { function: "lambert_w_real", value: x });
    }
    let p2 = 2.0 * branch_offset(x);
    if p2 < -8.0 * f64::EPSILON {
        return Err(Error::Domain { function: "lambert_w_real", value: x });
    }
    if p2 <= 0.0 {
        return Ok(-1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    let mut w = if x < -0.25 {
        let p = p2.sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0))
    } else if x < 3.0 {
        x.ln_1p()
    } else {
        let l1 = x.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    for _ in 0..64 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        if wp1 == 0.0 {
            break;
        }
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        if !step.is_finite() {
            break;
        }
        w -= step;
        if step.abs() <= 2.0 * f64::EPSILON * w.abs().max(1e-300) {
            break;
        }
    }
    Ok(w.max(-1.0))
}

/// The map `b -> -b cot b + ln(b / sin b)`, i.e. `ln(-z)` as a function of
/// `b = Im W(z)` on the cut. Increasing from `-1` at `0+` to `+inf` at `pi-`.
pub fn cut_log_map(b: f64) -> f64 {
    cut_log_map_p1(b) - 1.0
}

/// `cut_log_map(b) + 1`, accurate for small `b`.
fn cut_log_map_p1(b: f64) -> f64 {
    if b < 1e-3 {
        let b2 = b * b;
        b2 * (0.5 + b2 * (1.0 / 36.0 + b2 * (1.0 / 405.0 + b2 * (1.0 / 4200.0))))
    } else if b <= FRAC_PI_2 {
        1.0 - b / b.tan() + (b / b.sin()).ln()
    } else {
        reflected_log_map(PI - b) + 1.0
    }
}

/// The same map written in `eps = pi - b`, accurate as `b -> pi`.
fn reflected_log_map(eps: f64) -> f64 {
    let b = PI - eps;
    b / eps.tan() + (b / eps.sin()).ln()
}

/// The parametric map `b -> e^{-b cot b} b / sin b` equal to `-z`.
pub fn cut_map(b: f64) -> f64 {
    cut_log_map(b).exp()
}

/// Upper-edge value of W at `z = -e^t`, for `t >= -1`.
///
/// Works directly with `t`, so `z` may be far outside the range of a double.
pub fn lambert_w_cut_log(t: f64) -> Result<(f64, f64)> {
    if t.is_nan() || t < -1.0 - 4.0 * f64::EPSILON {
        return Err(Error::Domain { function: "lambert_w_cut", value: -t.exp() });
    }
    Ok(solve_cut(t + 1.0))
}

/// `(a, b)` from `s = ln(-z) + 1 >= 0`.
fn solve_cut(s: f64) -> (f64, f64) {
    if s <= 0.0 {
        return (-1.0, 0.0);
    }
    if s == f64::INFINITY {
        return (f64::INFINITY, PI);
    }
    if s <= cut_log_map_p1(FRAC_PI_2) {
        let b = bisect(0.0, FRAC_PI_2, |b| cut_log_map_p1(b) < s);
        let a = if b < 1e-3 {
            let b2 = b * b;
            -1.0 + b2 * (1.0 / 3.0 + b2 * (1.0 / 45.0 + b2 * (2.0 / 945.0)))
        } else {
            -b / b.tan()
        };
        (a, b)
    } else {
        // The map decreases in eps = pi - b.
        let t = s - 1.0;
        let eps = bisect(0.0, FRAC_PI_2, |e| e > 0.0 && reflected_log_map(e) > t);
        let b = PI - eps;
        (b / eps.tan(), b)
    }
}

/// Largest point of `[lo, hi]` where `below` still holds, by bisection to full precision.
fn bisect(mut lo: f64, mut hi: f64, below: impl Fn(f64) -> bool) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Upper-edge value of W on the cut, `z <= -1/e`.
pub fn lambert_w_cut(z: f64) -> Result<LambertCutValue> {
    if z.is_nan() || branch_offset(z) > 8.0 * f64::EPSILON {
        return Err(Error::Domain { function: "lambert_w_cut", value: z });
    }
    let offset = branch_offset(z);
    let (a, b) = if z == BRANCH_POINT || offset >= 0.0 {
        (-1.0, 0.0)
    } else if z > -1.0 {
        solve_cut((-offset).ln_1p())
    } else {
        solve_cut((-z).ln() + 1.0)
    };
    Ok(LambertCutValue { a, b, z })
}

/// Principal branch of W for complex arguments.
///
/// On the cut the value from the upper half plane is returned; below the
/// real axis the conjugate of the upper value.
pub fn lambert_w0(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain { function: "lambert_w0", value: z.re });
    }
    if z.im == 0.0 {
        return if z.re >= BRANCH_POINT {
            lambert_w_real(z.re).map(|w| Complex64::new(w, 0.0))
        } else {
            lambert_w_cut(z.re).map(|c| c.w())
        };
    }
    if z.im < 0.0 {
        return lambert_w0(z.conj()).map(|w| w.conj());
    }
    let q = Complex64::new(branch_offset(z.re), E * z.im);
    let mut w = if q.norm() < 0.6 {
        let p = (2.0 * q).sqrt();
        -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * 11.0 / 72.0))
    } else if z.norm() < 1.5 {
        (1.0 + z).ln()
    } else {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    };
    let mut last_step = f64::INFINITY;
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        if !(step.re.is_finite() && step.im.is_finite()) {
            break;
        }
        w -= step;
        last_step = step.norm();
        if last_step <= 4.0 * f64::EPSILON * w.norm().max(1e-300) {
            return Ok(w);
        }
    }
    let residual = (w * w.exp() - z).norm();
    if residual <= 1e-13 * z.norm().max(1.0) {
        return Ok(w);
    }
    Err(Error::Convergence {
        method: "complex Halley for Lambert W",
        iterations: 100,
        residual: last_step,
        last_iterate: Some(w),
    })
}
