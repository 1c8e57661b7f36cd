//! Limiting spectral laws and the special functions behind them.

mod f0;
mod ftheta;
mod grid;
mod lambert;
mod mp;

pub use f0::{f0_cdf, f0_density, f0_log_density, mu0_moment, r_transform, stieltjes_s, F0_EDGE};
pub use ftheta::{
    ftheta_cdf, ftheta_density, ftheta_density_and_cdf, ftheta_edge, ftheta_j, ftheta_root, ftheta_root_from,
    ftheta_roots_descending,
};
pub use grid::{DensityGrid, LawId};
pub use lambert::{
    cut_log_map, cut_map, lambert_w0, lambert_w_cut, lambert_w_cut_log, lambert_w_real, LambertCutValue,
    BRANCH_POINT,
};
pub use mp::{mp_atom, mp_density, mp_support};
