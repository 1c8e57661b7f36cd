//! Seeded sampling of triangular ensembles and empirical spectral statistics.

mod empirical;
mod params;
mod rng;
mod sampling;
mod spectrum;

pub use empirical::{ks_statistic, EmpiricalDistribution};
pub use params::{EnsembleKind, EnsembleParams, EntryLaw};
pub use rng::{RngState, StreamRng};
pub use sampling::{
    sample_entry, sample_gamma, sample_haar_unitary, sample_matrix, sample_standard_complex_gaussian,
    sample_uniform_phase,
};
pub use spectrum::{mc_moment, mc_moments, spectrum, SpectrumSample};
