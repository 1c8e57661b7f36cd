//! Exact finite-n objects of the theta-b ensemble: joint eigenvalue
//! densities, the log-moment matrix with its Stirling LU structure, the
//! determinantal kernel, Gelfand-Tsetlin volumes and the unitary integral
//! behind the density formula.

mod bari;
mod density;
mod kernel;
mod linalg;
mod moments;
mod stirling;

pub use bari::{bari_haar_mc, bari_k, gt_volume, gt_volume_mc, McEstimate, BARI_LOG_BRANCH_THETA};
pub use density::{complex_wishart_density, joint_density, log_joint_density};
pub use kernel::{correlation, kernel_eval, KernelCoeffs};
pub use linalg::{dot2, LuFactors};
pub use moments::{det_g, g_entry, lu_identity_residual, MomentMatrixG, MAX_KERNEL_N};
pub use stirling::{stirling_unsigned, StirlingTable, STIRLING_CAP};
