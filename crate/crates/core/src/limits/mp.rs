//! Marchenko-Pastur law with ratio `c`, used as a reference density.

use std::f64::consts::PI;

/// Support `[(1 - sqrt c)^2, (1 + sqrt c)^2]` of the continuous part.
pub fn mp_support(c: f64) -> (f64, f64) {
    let r = c.sqrt();
    ((1.0 - r).powi(2), (1.0 + r).powi(2))
}

/// Mass of the atom at zero, `max(0, 1 - 1/c)`.
pub fn mp_atom(c: f64) -> f64 {
    (1.0 - 1.0 / c).max(0.0)
}

/// Density of the continuous part, `sqrt((b - x)(x - a)) / (2 pi x c)`.
pub fn mp_density(x: f64, c: f64) -> f64 {
    assert!(c > 0.0, "Marchenko-Pastur ratio must be positive, got {c}");
    let (a, b) = mp_support(c);
    if !(x > a && x < b) || x <= 0.0 {
        return 0.0;
    }
    ((b - x) * (x - a)).sqrt() / (2.0 * PI * x * c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_case() {
        assert_eq!(mp_support(1.0), (0.0, 4.0));
        assert!((mp_density(2.0, 1.0) - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(mp_density(4.5, 1.0), 0.0);
        assert_eq!(mp_atom(1.0), 0.0);
        assert_eq!(mp_atom(2.0), 0.5);
    }
}
