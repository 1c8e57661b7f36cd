use serde::{Deserialize, Serialize};

use super::f0::{f0_cdf, f0_density};
use super::ftheta::{ftheta_density_and_cdf, ftheta_edge};
use super::mp::{mp_atom, mp_density, mp_support};
use crate::error::{Error, Result};
use crate::numerics::{integrate, Domain, QuadratureRule};

/// Which limit law a grid samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "law")]
pub enum LawId {
    F0,
    Ftheta { theta: f64 },
    Mp { c: f64 },
}

impl LawId {
    /// Support of the continuous part.
    pub fn support(&self) -> Result<(f64, f64)> {
        match *self {
            LawId::F0 => Ok((0.0, std::f64::consts::E)),
            LawId::Ftheta { theta } => Ok((0.0, ftheta_edge(theta)?)),
            LawId::Mp { c } => {
                if !(c.is_finite() && c > 0.0) {
                    return Err(Error::Domain { function: "mp_density", value: c });
                }
                Ok(mp_support(c))
            }
        }
    }

    pub fn atom(&self) -> f64 {
        match *self {
            LawId::Mp { c } => mp_atom(c),
            _ => 0.0,
        }
    }

    /// Mass of the continuous part on `[lo, hi]`.
    fn mass_between(&self, lo: f64, hi: f64) -> Result<f64> {
        match *self {
            LawId::F0 => Ok(f0_cdf(hi) - f0_cdf(lo)),
            LawId::Ftheta { theta } => {
                let v = ftheta_density_and_cdf(&[lo, hi], theta)?;
                Ok(v[1].1 - v[0].1)
            }
            LawId::Mp { c } => {
                let (a, b) = mp_support(c);
                let (l, h) = (lo.max(a), hi.min(b));
                if l >= h {
                    return Ok(0.0);
                }
                integrate(|x| mp_density(x, c), Domain::Finite(l, h), &QuadratureRule::finite(1e-10, 1e-9))
            }
        }
    }
}

/// Number of grid steps next to the origin integrated exactly by [`DensityGrid::mass`].
pub const SINGULAR_LAYER: usize = 10;

/// A limit density tabulated on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub law: LawId,
    pub abscissae: Vec<f64>,
    pub values: Vec<f64>,
    /// Distribution function at the abscissae, when the law has one in closed form.
    pub cdf: Option<Vec<f64>>,
}

impl DensityGrid {
    /// Tabulates `law` at `points` equally spaced abscissae from `lo` to `hi`.
    pub fn evaluate(law: LawId, lo: f64, hi: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::Input("a density grid needs at least 2 points".into()));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::Input(format!("grid bounds must satisfy lo < hi, got [{lo}, {hi}]")));
        }
        law.support()?;
        let step = (hi - lo) / (points - 1) as f64;
        let xs: Vec<f64> = (0..points)
            .map(|i| if i + 1 == points { hi } else { lo + step * i as f64 })
            .collect();
        let (values, cdf) = match law {
            LawId::F0 => (xs.iter().map(|&x| f0_density(x)).collect(), Some(xs.iter().map(|&x| f0_cdf(x)).collect())),
            LawId::Ftheta { theta } => {
                let both = ftheta_density_and_cdf(&xs, theta)?;
                (both.iter().map(|p| p.0).collect(), Some(both.iter().map(|p| p.1).collect()))
            }
            LawId::Mp { c } => (xs.iter().map(|&x| mp_density(x, c)).collect(), None),
        };
        Ok(Self { law, abscissae: xs, values, cdf })
    }

    /// Trapezoid mass plus any atom inside the grid range.
    ///
    /// All three laws blow up at `x = 0`, where the trapezoid rule misses a
    /// large share of the mass (for `f0` about `1/|log x_1|` in the first
    /// panel and a further `~1e-3` over the next few). The panels within
    /// [`SINGULAR_LAYER`] steps of the origin are replaced by their exact mass.
    pub fn mass(&self) -> Result<f64> {
        let xs = &self.abscissae;
        let ys = &self.values;
        let step = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        let layer_end = SINGULAR_LAYER as f64 * step;
        let mut total = 0.0;
        let mut i = 0;
        while i + 1 < xs.len() {
            let (x0, x1) = (xs[i], xs[i + 1]);
            if x1 > 0.0 && x0 < layer_end {
                let mut j = i + 1;
                while j + 1 < xs.len() && xs[j] < layer_end {
                    j += 1;
                }
                total += self.law.mass_between(x0, xs[j])?;
                i = j;
            } else {
                total += 0.5 * (x1 - x0) * (ys[i] + ys[i + 1]);
                i += 1;
            }
        }
        if xs[0] <= 0.0 && *xs.last().unwrap() >= 0.0 {
            total += self.law.atom();
        }
        Ok(total)
    }

    /// Plain trapezoid sum of the tabulated values.
    pub fn trapezoid(&self) -> f64 {
        self.abscissae
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
            .sum()
    }
}
