//! Groupoid convolution algebras: matrix fields over a finite fibre group,
//! finitely supported kernels on the pair groupoid `ℤ × ℤ`, and their centres.

mod center;
mod kernel;
mod matrix_field;

pub use center::center_basis;
pub use kernel::{center_witness, kernel_commutant_dimension, CenterWitness, FinSuppKernel};
pub use matrix_field::{MatrixField, SimpleTensor};

use crate::domain::OpenBox;
use crate::error::Result;

/// An associative algebra under convolution.
pub trait Convolution: Sized {
    fn convolve(&self, other: &Self) -> Result<Self>;
    fn sub(&self, other: &Self) -> Result<Self>;
}

/// `ad(a)(b) = a∗b − b∗a`.
pub fn commutator<A: Convolution>(a: &A, b: &A) -> Result<A> {
    a.convolve(b)?.sub(&b.convolve(a)?)
}

pub fn convolve(a: &MatrixField, b: &MatrixField) -> Result<MatrixField> {
    a.convolve(b)
}

pub fn convolve_kernels(a: &FinSuppKernel, b: &FinSuppKernel) -> FinSuppKernel {
    a.convolve(b)
}

pub fn restrict(a: &MatrixField, to: &OpenBox) -> Result<MatrixField> {
    a.restrict(to)
}
