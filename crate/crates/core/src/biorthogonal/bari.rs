use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::ensembles::{sample_haar_unitary, RngState, StreamRng};
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// Below this theta, [`bari_k`] uses the logarithmic (theta = 0) formula.
pub const BARI_LOG_BRANCH_THETA: f64 = 1e-8;

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
}

impl McEstimate {
    /// `|mean - target|` in units of the standard error.
    pub fn z_score(&self, target: f64) -> f64 {
        (self.mean - target).abs() / self.std_error
    }
}

fn check_nonincreasing(x: &[f64]) -> Result<()> {
    if x.is_empty() {
        return Err(Error::Input("empty vector".into()));
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Input("non-finite entry".into()));
    }
    if x.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Input("vector must be sorted in decreasing order".into()));
    }
    Ok(())
}

/// Volume of the Gelfand-Tsetlin polytope below `x`: `prod_{i<j} (x_i - x_j)/(j - i)`.
pub fn gt_volume(x: &[f64]) -> Result<f64> {
    check_nonincreasing(x)?;
    let mut v = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v *= (x[i] - x[j]) / (j - i) as f64;
        }
    }
    Ok(v)
}

/// Rejection estimate of the same volume. Level `m` coordinate `i` is drawn
/// uniformly from `[x_{i+k-m}, x_i]`, which contains every interlacing value.
pub fn gt_volume_mc(x: &[f64], proposals: usize, rng: &mut StreamRng) -> Result<McEstimate> {
    check_nonincreasing(x)?;
    if proposals == 0 {
        return Err(Error::Input("need at least one proposal".into()));
    }
    let k = x.len();
    let mut boxes = Vec::new();
    for m in (1..k).rev() {
        for i in 0..m {
            boxes.push((x[i + k - m], x[i]));
        }
    }
    let box_volume: f64 = boxes.iter().map(|(lo, hi)| hi - lo).product();
    if box_volume == 0.0 {
        return Ok(McEstimate { mean: 0.0, std_error: 0.0 });
    }
    let mut levels: Vec<Vec<f64>> = (0..k).map(|m| vec![0.0; m]).collect();
    let mut hits = 0usize;
    for _ in 0..proposals {
        let mut it = boxes.iter();
        for m in (1..k).rev() {
            for i in 0..m {
                let (lo, hi) = it.next().copied().unwrap_or((0.0, 0.0));
                levels[m][i] = rng.gen_range(lo..=hi);
            }
        }
        if interlaces(x, &levels) {
            hits += 1;
        }
    }
    let p = hits as f64 / proposals as f64;
    Ok(McEstimate {
        mean: box_volume * p,
        std_error: box_volume * (p * (1.0 - p) / proposals as f64).sqrt(),
    })
}

fn interlaces(x: &[f64], levels: &[Vec<f64>]) -> bool {
    let k = x.len();
    let mut upper: &[f64] = x;
    for m in (1..k).rev() {
        let lower = &levels[m];
        for i in 0..m {
            if !(upper[i] >= lower[i] && lower[i] >= upper[i + 1]) {
                return false;
            }
        }
        upper = lower;
    }
    true
}

/// Closed form of the unitary integral
/// `prod_{i<j} int_{l_j}^{l_i} x^{-theta-1} dx / prod_{i<j} (l_i - l_j)`.
pub fn bari_k(lambda: &[f64], theta: f64) -> Result<f64> {
    check_nonincreasing(lambda)?;
    if lambda.iter().any(|l| *l <= 0.0) {
        return Err(Error::Input("lambda must be positive".into()));
    }
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(Error::Input(format!("theta must be >= 0, got {theta}")));
    }
    let n = lambda.len();
    let mut k = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            let (li, lj) = (lambda[i], lambda[j]);
            if li == lj {
                return Err(Error::Degeneracy(format!("tied eigenvalues {li} at positions {i} and {j}")));
            }
            let log_ratio = (li / lj).ln();
            let integral = if theta < BARI_LOG_BRANCH_THETA {
                log_ratio
            } else {
                // (l_j^{-t} - l_i^{-t})/t = l_j^{-t} (1 - e^{-t log(l_i/l_j)})/t
                lj.powf(-theta) * -(-theta * log_ratio).exp_m1() / theta
            };
            k *= integral / (li - lj);
        }
    }
    Ok(k)
}

/// Haar average of `prod_{i<n} det(a_i)^{-theta-1}`, where `a_i` is the
/// leading `i x i` block of `H diag(lambda) H*`.
pub fn bari_haar_mc(lambda: &[f64], theta: f64, reps: usize, state: RngState) -> Result<McEstimate> {
    check_nonincreasing(lambda)?;
    let n = lambda.len();
    if !(2..=3).contains(&n) {
        return Err(Error::Input(format!("Haar Monte Carlo supports n in {{2, 3}}, got {n}")));
    }
    if lambda.iter().any(|l| *l <= 0.0) {
        return Err(Error::Input("lambda must be positive".into()));
    }
    if !theta.is_finite() {
        return Err(Error::Input("theta must be finite".into()));
    }
    if reps < 2 {
        return Err(Error::Input("need at least two replicas".into()));
    }
    let mut rng = state.generator();
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..reps {
        let h = sample_haar_unitary(n, &mut rng)?;
        let a = ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| h[(i, k)] * h[(j, k)].conj() * lambda[k])
                .sum::<Complex64>()
        });
        let mut v = 1.0;
        for m in 1..n {
            let d = a.leading_minor(m).determinant()?.re;
            v *= d.powf(-theta - 1.0);
        }
        sum += v;
        sum_sq += v * v;
    }
    let r = reps as f64;
    let mean = sum / r;
    let var = ((sum_sq - r * mean * mean) / (r - 1.0)).max(0.0);
    Ok(McEstimate {
        mean,
        std_error: (var / r).sqrt(),
    })
}
