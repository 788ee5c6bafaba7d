use std::fmt;

use num_traits::Zero;

use super::field::RationalField;

/// A vector field `Σ fᵢ ∂/∂xᵢ` on the base, acting on rational functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaseDerivation {
    coefficients: Vec<RationalField>,
}

impl BaseDerivation {
    pub fn new(coefficients: Vec<RationalField>) -> Self {
        Self { coefficients }
    }

    pub fn zero(dim: usize) -> Self {
        Self { coefficients: vec![RationalField::zero(); dim] }
    }

    /// The coordinate field `∂/∂x_{var+1}` in `dim` variables.
    pub fn coordinate(dim: usize, var: usize) -> Self {
        let mut c = vec![RationalField::zero(); dim];
        c[var] = num_traits::One::one();
        Self { coefficients: c }
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[RationalField] {
        &self.coefficients
    }

    pub fn component(&self, i: usize) -> &RationalField {
        &self.coefficients[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn apply(&self, f: &RationalField) -> RationalField {
        let mut acc = RationalField::zero();
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(i);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    /// `[X, Y]` with components `X(Yⱼ) − Y(Xⱼ)`.
    pub fn bracket(&self, other: &Self) -> Self {
        let n = self.dim().max(other.dim());
        let a = self.padded(n);
        let b = other.padded(n);
        let coefficients = (0..n)
            .map(|j| &a.apply(&b.coefficients[j]) - &b.apply(&a.coefficients[j]))
            .collect();
        Self { coefficients }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.dim().max(other.dim());
        let a = self.padded(n);
        let b = other.padded(n);
        Self {
            coefficients: a.coefficients.iter().zip(&b.coefficients).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-RationalField::from_int(1)))
    }

    /// Multiplication by a base function (the module action).
    pub fn scale(&self, f: &RationalField) -> Self {
        Self { coefficients: self.coefficients.iter().map(|c| c * f).collect() }
    }

    fn padded(&self, n: usize) -> Self {
        let mut c = self.coefficients.clone();
        c.resize(n, RationalField::zero());
        Self { coefficients: c }
    }
}

impl fmt::Display for BaseDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*d{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> RationalField {
        RationalField::var(i)
    }

    #[test]
    fn power_rule() {
        let d1 = BaseDerivation::coordinate(1, 0);
        assert_eq!(d1.apply(&(&x(0) * &x(0))), &RationalField::from_int(2) * &x(0));
        assert!(d1.apply(&RationalField::from_int(7)).is_zero());
    }

    #[test]
    fn quotient_rule_example() {
        // x1 ∂/∂x2 applied to x2/x1 is 1
        let d = BaseDerivation::new(vec![RationalField::zero(), x(0)]);
        let f = &x(1) / &x(0);
        assert_eq!(d.apply(&f), RationalField::from_int(1));
    }

    #[test]
    fn brackets() {
        let d1 = BaseDerivation::coordinate(2, 0);
        let d2 = BaseDerivation::coordinate(2, 1);
        assert!(d1.bracket(&d2).is_zero());
        let y = BaseDerivation::new(vec![RationalField::zero(), x(0)]);
        assert_eq!(d1.bracket(&y), d2);
        assert!(y.bracket(&y).is_zero());
    }
}
