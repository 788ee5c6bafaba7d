//! Exact-arithmetic toolkit for derivation-based noncommutative geometry on
//! transformation groupoids `U × G × G`.
//!
//! Everything except spectral norms is computed exactly over the Gaussian
//! rationals or rational functions with Gaussian-rational coefficients.

pub mod conv;
pub mod domain;
pub mod error;
pub mod geometry;
pub mod group;
pub mod groupoid;
pub mod lie;
pub mod random;
pub mod representation;
pub mod spectral;
pub mod linalg;
pub mod scalars;
pub mod sheaf;

pub use error::{Error, Result};
