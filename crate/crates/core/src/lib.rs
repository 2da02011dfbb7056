//! Exact computation in topological full groups of odometers and in their
//! Koopman-representation image inside the crossed product.
//!
//! Everything algebraic is carried out over exact scalars (integers,
//! rationals, Gaussian rationals, Laurent polynomials); floating point
//! appears only when sampling the circle at a generic point.

pub mod algebra_closure;
pub mod dihedral;
pub mod error;
pub mod exact_matrix;
pub mod full_group;
pub mod induction;
pub mod koopman;
pub mod laurent;
pub mod odometer;
pub mod perm;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use exact_matrix::{ExactMatrix, VectorSpan};
pub use full_group::FullGroupElement;
pub use koopman::LaurentMatrix;
pub use laurent::LaurentPoly;
pub use odometer::{ClopenSet, OdometerType};
pub use perm::Perm;
pub use scalar::GaussRational;
