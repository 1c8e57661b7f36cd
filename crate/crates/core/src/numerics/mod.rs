//! Dense complex linear algebra, quadrature and root finding shared by the
//! rest of the crate.

mod matrix;
mod newton;
mod qr;
mod quadrature;
mod svd;

pub use matrix::ComplexMatrix;
pub use newton::{newton_complex, MAX_HALVINGS};
pub use num_complex::Complex64;
pub use qr::qr_unitary;
pub use quadrature::{integrate, integrate_with_error, Domain, Estimate, QuadratureRule, RuleKind};
pub use svd::{singular_values, SWEEPS_PER_ELEMENT};
