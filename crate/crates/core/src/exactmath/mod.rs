//! Exact scalars, dense and sparse linear algebra, and polynomials.

pub mod matrix;
pub mod modular;
pub mod poly;
pub mod scalar;
pub mod sparse;

pub use matrix::{kernel_basis, rank, solve_linear, solve_with_ranks, Matrix, Vector};
pub use poly::{poly_is_zero, MultiPoly, RatFunc};
pub use scalar::Scalar;
