use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::params::{EnsembleKind, EnsembleParams, EntryLaw};
use super::rng::StreamRng;
use crate::error::Result;
use crate::numerics::{qr_unitary, ComplexMatrix};

/// Standard complex normal: independent real and imaginary parts with variance 1/2.
pub fn sample_standard_complex_gaussian(rng: &mut StreamRng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
}

/// Uniform point on the unit circle with modulus exactly 1 in floating point.
///
/// About 1.4% of angles give `hypot(cos, sin) != 1` after rounding; those are
/// redrawn, which thins the angle grid uniformly.
pub fn sample_uniform_phase(rng: &mut StreamRng) -> Complex64 {
    loop {
        let t: f64 = rng.gen::<f64>() * TAU;
        let (s, c) = t.sin_cos();
        let z = Complex64::new(c, s);
        if z.norm() == 1.0 {
            return z;
        }
    }
}

pub fn sample_entry(law: EntryLaw, rng: &mut StreamRng) -> Complex64 {
    match law {
        EntryLaw::StandardComplexGaussian => sample_standard_complex_gaussian(rng),
        EntryLaw::UniformPhaseUnitModulus => sample_uniform_phase(rng),
    }
}

/// Gamma(c, 1) variate.
///
/// Marsaglia-Tsang squeeze for `c >= 1`; for `c < 1` a Gamma(c + 1) draw is
/// scaled by `U^(1/c)`.
pub fn sample_gamma(c: f64, rng: &mut StreamRng) -> f64 {
    assert!(c > 0.0 && c.is_finite(), "gamma shape must be positive, got {c}");
    if c < 1.0 {
        let u: f64 = open01(rng);
        return sample_gamma(c + 1.0, rng) * u.powf(1.0 / c);
    }
    let d = c - 1.0 / 3.0;
    let s = 1.0 / (9.0 * d).sqrt();
    loop {
        let mut x: f64;
        let mut v: f64;
        loop {
            x = rng.sample(StandardNormal);
            v = 1.0 + s * x;
            if v > 0.0 {
                break;
            }
        }
        v = v * v * v;
        let u = open01(rng);
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Uniform on (0, 1].
fn open01(rng: &mut StreamRng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// One lower-triangular draw of the ensemble.
///
/// Entries are generated column by column, top to bottom, diagonal first.
pub fn sample_matrix(params: &EnsembleParams, rng: &mut StreamRng) -> Result<ComplexMatrix> {
    params.validate()?;
    let n = params.n;
    let mut m = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let col = m.column_mut(j);
        match params.kind {
            EnsembleKind::TriangularWigner { entry_law } => {
                for z in &mut col[j..] {
                    *z = sample_entry(entry_law, rng);
                }
            }
            EnsembleKind::ThetaB { theta, b } => {
                let shape = theta * j as f64 + b;
                let modulus = sample_gamma(shape, rng).sqrt();
                col[j] = sample_uniform_phase(rng) * modulus;
                for z in &mut col[j + 1..] {
                    *z = sample_standard_complex_gaussian(rng);
                }
            }
        }
    }
    Ok(m)
}

/// Haar unitary: the Q factor of a Ginibre matrix with positive diag(R).
pub fn sample_haar_unitary(n: usize, rng: &mut StreamRng) -> Result<ComplexMatrix> {
    let g = ComplexMatrix::from_fn(n, n, |_, _| sample_standard_complex_gaussian(rng));
    Ok(qr_unitary(&g)?.0)
}
