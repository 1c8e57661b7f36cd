//! Triangular random matrices and the objects attached to them: limiting
//! spectral laws built on the Lambert W function, exact finite-size
//! biorthogonal Laguerre densities with their determinantal kernel, and the
//! alternating-tree enumeration behind the moment method.

pub mod biorthogonal;
pub mod combinatorics;
pub mod ensembles;
pub mod error;
pub mod limits;
pub mod numerics;
pub mod verify;

pub use error::{Error, Result};
