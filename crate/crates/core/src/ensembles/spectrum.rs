use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::params::EnsembleParams;
use super::rng::RngState;
use super::sampling::sample_matrix;
use crate::error::{Error, Result};
use crate::numerics::singular_values;

/// Eigenvalues of `X X* / n` for one draw, largest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSample {
    pub params: EnsembleParams,
    pub values: Vec<f64>,
    pub seed_used: RngState,
}

/// Draws one matrix from the stream `state` and returns its scaled squared singular values.
pub fn spectrum(params: &EnsembleParams, state: RngState) -> Result<SpectrumSample> {
    let mut rng = state.generator();
    let x = sample_matrix(params, &mut rng)?;
    let n = params.n as f64;
    let values = singular_values(&x)?.into_iter().map(|s| s * s / n).collect();
    Ok(SpectrumSample {
        params: *params,
        values,
        seed_used: state,
    })
}

/// Monte Carlo estimate of `E (1/n) tr (X X*/n)^k`.
pub fn mc_moment(params: &EnsembleParams, k: u32, reps: usize, state: RngState) -> Result<f64> {
    Ok(mc_moments(params, &[k], reps, state)?[0])
}

/// Several moments from the same replicas. Replica `r` uses `state.replica(r)`;
/// replicas may run in parallel but are summed in replica order.
pub fn mc_moments(params: &EnsembleParams, ks: &[u32], reps: usize, state: RngState) -> Result<Vec<f64>> {
    if reps == 0 {
        return Err(Error::Input("reps must be at least 1".into()));
    }
    if ks.iter().any(|&k| k == 0) {
        return Err(Error::Input("moment order k must be at least 1".into()));
    }
    params.validate()?;
    let per_replica: Vec<Vec<f64>> = (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let s = spectrum(params, state.replica(r))?;
            let n = s.values.len() as f64;
            Ok(ks.iter().map(|&k| s.values.iter().map(|v| v.powi(k as i32)).sum::<f64>() / n).collect())
        })
        .collect::<Result<_>>()?;
    let mut totals = vec![0.0; ks.len()];
    for row in &per_replica {
        for (t, m) in totals.iter_mut().zip(row) {
            *t += m;
        }
    }
    Ok(totals.into_iter().map(|t| t / reps as f64).collect())
}
