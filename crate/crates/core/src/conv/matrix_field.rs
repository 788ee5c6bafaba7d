use std::fmt;

use num_traits::Zero;

use super::Convolution;
use crate::domain::OpenBox;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, QMatrix};
use crate::scalars::{BaseDerivation, GaussianRational, RationalField};

/// An element of `𝒜(U) = M_n(C^∞(U))`: an `n×n` matrix of rational functions,
/// optionally tagged with the open box it lives on. `a(x, gᵢ, gⱼ)` is entry
/// `(i, j)`; convolution over the fibre is the pointwise matrix product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixField {
    matrix: Matrix<RationalField>,
    domain: Option<OpenBox>,
}

impl MatrixField {
    pub fn new(matrix: Matrix<RationalField>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "matrix field must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix, domain: None })
    }

    /// Row-major entries.
    pub fn from_entries(n: usize, entries: Vec<RationalField>) -> Result<Self> {
        Self::new(Matrix::from_vec(n, n, entries)?)
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> RationalField) -> Self {
        Self { matrix: Matrix::from_fn(n, n, f), domain: None }
    }

    pub fn zero(n: usize) -> Self {
        Self { matrix: Matrix::zeros(n, n), domain: None }
    }

    /// `𝟙`, the kernel supported on units.
    pub fn identity(n: usize) -> Self {
        Self { matrix: Matrix::identity(n), domain: None }
    }

    /// `f·𝟙`, an element of the centre.
    pub fn scalar(n: usize, f: RationalField) -> Self {
        Self::identity(n).scale(&f)
    }

    pub fn matrix_unit(n: usize, i: usize, j: usize) -> Self {
        Self { matrix: Matrix::unit(n, i, j), domain: None }
    }

    pub fn from_constant(m: &QMatrix) -> Result<Self> {
        Self::new(m.map(|c| RationalField::constant(c.clone())))
    }

    pub fn with_domain(mut self, domain: OpenBox) -> Self {
        self.domain = Some(domain);
        self
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<RationalField> {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalField {
        &self.matrix[(i, j)]
    }

    pub fn domain(&self) -> Option<&OpenBox> {
        self.domain.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn num_vars(&self) -> usize {
        self.matrix.entries().iter().map(RationalField::num_vars).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Self) -> Result<Option<OpenBox>> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "fibre dimensions {} and {}",
                self.n(),
                other.n()
            )));
        }
        match (&self.domain, &other.domain) {
            (Some(a), Some(b)) if a != b => Err(Error::DomainMismatch(a.to_string(), b.to_string())),
            (a, b) => Ok(a.clone().or_else(|| b.clone())),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let domain = self.check_compatible(other)?;
        Ok(Self { matrix: self.matrix.try_add(&other.matrix)?, domain })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let domain = self.check_compatible(other)?;
        Ok(Self { matrix: self.matrix.try_sub(&other.matrix)?, domain })
    }

    /// Multiplication by a base function (the `Z`-module action).
    pub fn scale(&self, f: &RationalField) -> Self {
        Self { matrix: self.matrix.map(|e| e * f), domain: self.domain.clone() }
    }

    /// `(a ∗ b)(x, gᵢ, gⱼ) = Σ_k a(x, gᵢ, g_k) b(x, g_k, gⱼ)` with counting
    /// measure on the fibre.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let domain = self.check_compatible(other)?;
        Ok(Self { matrix: self.matrix.try_mul(&other.matrix)?, domain })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.convolve(other)?.sub(&other.convolve(self)?)
    }

    /// Entrywise action of a vector field on the base.
    pub fn apply_base(&self, x: &BaseDerivation) -> Self {
        Self { matrix: self.matrix.map(|e| x.apply(e)), domain: self.domain.clone() }
    }

    /// Restriction to a sub-box: the same entries on a smaller domain.
    pub fn restrict(&self, to: &OpenBox) -> Result<Self> {
        if let Some(d) = &self.domain {
            d.require_subset(to)?;
        }
        Ok(Self { matrix: self.matrix.clone(), domain: Some(to.clone()) })
    }

    /// The matrix `A(x)`.
    pub fn eval(&self, point: &[GaussianRational]) -> Result<QMatrix> {
        let data = self.matrix.entries().iter().map(|e| e.eval(point)).collect::<Result<Vec<_>>>()?;
        QMatrix::from_vec(self.n(), self.n(), data)
    }

    /// Whether the field is `f·𝟙` for some base function `f`.
    pub fn is_scalar(&self) -> bool {
        let n = self.n();
        let d = self.entry(0, 0);
        (0..n).all(|i| (0..n).all(|j| if i == j { self.entry(i, j) == d } else { self.entry(i, j).is_zero() }))
    }
}

impl Convolution for MatrixField {
    fn convolve(&self, other: &Self) -> Result<Self> {
        MatrixField::convolve(self, other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        MatrixField::sub(self, other)
    }
}

impl fmt::Display for MatrixField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)?;
        if let Some(d) = &self.domain {
            write!(f, " on {d}")?;
        }
        Ok(())
    }
}

/// A simple tensor `f ⊗ A` with `f` a base function and `A` a constant
/// operator on `ℂⁿ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleTensor {
    pub scalar: RationalField,
    pub operator: QMatrix,
}

impl SimpleTensor {
    pub fn new(scalar: RationalField, operator: QMatrix) -> Result<Self> {
        if !operator.is_square() {
            return Err(Error::DimensionMismatch("tensor operator must be square".into()));
        }
        Ok(Self { scalar, operator })
    }

    /// `f ⊗ A ↦ f·A` entrywise.
    pub fn to_field(&self) -> MatrixField {
        MatrixField {
            matrix: self.operator.map(|c| self.scalar.scale(c)),
            domain: None,
        }
    }

    /// `(f⊗A)∘(g⊗B) = fg ⊗ AB`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Ok(Self { scalar: &self.scalar * &other.scalar, operator: self.operator.try_mul(&other.operator)? })
    }

    /// `(f⊗A) + (g⊗A) = (f+g)⊗A`; fails unless the operators agree.
    pub fn add_same_operator(&self, other: &Self) -> Result<Self> {
        if self.operator != other.operator {
            return Err(Error::DimensionMismatch("operators differ".into()));
        }
        Ok(Self { scalar: &self.scalar + &other.scalar, operator: self.operator.clone() })
    }

    /// `(f⊗A) + (f⊗B) = f⊗(A+B)`; fails unless the scalars agree.
    pub fn add_same_scalar(&self, other: &Self) -> Result<Self> {
        if self.scalar != other.scalar {
            return Err(Error::DimensionMismatch("scalar factors differ".into()));
        }
        Ok(Self { scalar: self.scalar.clone(), operator: self.operator.try_add(&other.operator)? })
    }

    /// `ρ(f ⊗ A) = (f|_V) ⊗ A`.
    pub fn restrict(&self, from: &OpenBox, to: &OpenBox) -> Result<MatrixField> {
        self.to_field().with_domain(from.clone()).restrict(to)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_field;

    fn mf(n: usize, e: &[&str]) -> MatrixField {
        MatrixField::from_entries(n, e.iter().map(|s| parse_field(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn convolution_is_matrix_product() {
        let a = mf(2, &["x1", "0", "0", "1"]);
        let b = mf(2, &["0", "1", "1", "0"]);
        assert_eq!(a.convolve(&b).unwrap(), mf(2, &["0", "x1", "1", "0"]));
        assert_eq!(a.convolve(&MatrixField::identity(2)).unwrap(), a);
        assert!(a.convolve(&MatrixField::zero(2)).unwrap().is_zero());
        assert!(matches!(a.convolve(&MatrixField::identity(3)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn commutator_of_matrix_units() {
        let e12 = MatrixField::matrix_unit(2, 0, 1);
        let e21 = MatrixField::matrix_unit(2, 1, 0);
        assert_eq!(e12.commutator(&e21).unwrap(), mf(2, &["1", "0", "0", "-1"]));
        assert!(e12.commutator(&e12).unwrap().is_zero());
        let f = MatrixField::scalar(2, parse_field("x1^2 + 1").unwrap());
        assert!(f.commutator(&mf(2, &["x1", "x2", "3", "1/x1"])).unwrap().is_zero());
    }

    #[test]
    fn restriction_requires_subset() {
        let u = OpenBox::from_ints(&[(0, 4)]).unwrap();
        let v = OpenBox::from_ints(&[(1, 2)]).unwrap();
        let a = mf(1, &["x1"]).with_domain(v.clone());
        assert!(matches!(a.restrict(&u), Err(Error::NotASubset(..))));
        let b = mf(1, &["x1"]).with_domain(u.clone());
        assert_eq!(b.restrict(&u).unwrap(), b);
        assert!(matches!(a.convolve(&b), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn simple_tensor_embedding() {
        let f = parse_field("x1").unwrap();
        let a = QMatrix::unit(2, 0, 1);
        let t = SimpleTensor::new(f, a).unwrap();
        assert_eq!(t.to_field(), mf(2, &["0", "x1", "0", "0"]));
    }
}
