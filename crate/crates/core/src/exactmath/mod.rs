//! Exact rational scalars, matrices and linear-system solving.

mod linsolve;
mod matrix;
mod poly;
mod rational;

pub use linsolve::{rref, rref_parametric, rref_parametric_named, AffineSolution, Inconsistent, ReducedRow};
pub use matrix::RatMatrix;
pub use poly::{char_poly, char_poly_roots, CharPolyError, Polynomial, MAX_CHAR_POLY_DIM};
pub use rational::{ParseRationalError, Rational};
