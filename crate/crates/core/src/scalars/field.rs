use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;
use super::poly::{gcd, Poly};
use crate::error::{Error, Result};

/// Rational function with Gaussian-rational coefficients, kept in canonical
/// form: numerator and denominator coprime, denominator monic. Two values are
/// equal as functions exactly when they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalField {
    num: Poly,
    den: Poly,
}

impl RationalField {
    /// Builds `num / den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        Self::normalized(num, den)
    }

    /// Makes an already reduced quotient's denominator monic.
    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            return Self { num, den };
        }
        let inv = lc.inv().expect("denominator is nonzero");
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    /// Re-runs canonicalization; idempotent.
    pub fn canonicalize(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussianRational::ratio(num, den))
    }

    /// The coordinate function `x_{var+1}`.
    pub fn var(var: usize) -> Self {
        Self::from_poly(Poly::var(var))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars().max(self.den.num_vars())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::canonical(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Coefficient-wise complex conjugate, which agrees with the pointwise
    /// conjugate at real points.
    pub fn conj(&self) -> Self {
        Self::canonical(self.num.conj(), self.den.conj())
    }

    /// `∂/∂x_{var+1}` by the quotient rule.
    pub fn partial(&self, var: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.partial(var));
        }
        let dn = self.num.partial(var);
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return Self::canonical(dn, self.den.clone());
        }
        // With g = gcd(d, d'), the quotient (n'(d/g) - n(d'/g)) / ((d/g) d)
        // is already coprime at every factor of d that involves `var`, so
        // only d's content in `var` can still cancel.
        let g = gcd(&self.den, &dd);
        let (e, dd) = if g.is_one() {
            (self.den.clone(), dd)
        } else {
            (self.den.div_exact(&g).expect("gcd divides"), dd.div_exact(&g).expect("gcd divides"))
        };
        let num = &(&dn * &e) - &(&self.num * &dd);
        let den = &e * &self.den;
        let content = self.den.content_in(var);
        if content.as_constant().is_some() || num.is_zero() {
            return Self::normalized(num, den);
        }
        let h = gcd(&num, &content);
        if h.is_one() {
            return Self::normalized(num, den);
        }
        Self::normalized(num.div_exact(&h).expect("gcd divides"), den.div_exact(&h).expect("gcd divides"))
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        let needed = self.num_vars();
        let num = self.num.eval(point).ok_or(Error::PointDimension { needed, got: point.len() })?;
        let den = self.den.eval(point).ok_or(Error::PointDimension { needed, got: point.len() })?;
        if den.is_zero() {
            return Err(Error::DenominatorZeroAtPoint { point: point.iter().map(|p| p.to_string()).collect() });
        }
        Ok(&num / &den)
    }

    /// Equality by cross-multiplication, independent of canonical form.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Default for RationalField {
    fn default() -> Self {
        Self::zero()
    }
}

impl Zero for RationalField {
    fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalField {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl From<GaussianRational> for RationalField {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<Poly> for RationalField {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RationalField> for &RationalField {
    type Output = RationalField;
    fn add(self, rhs: &RationalField) -> RationalField {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalField::from_poly(num);
            }
            return RationalField::canonical(num, self.den.clone());
        }
        // only factors of gcd(den, den') can cancel
        let g = gcd(&self.den, &rhs.den);
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d2) + &(&rhs.num * &d1);
        if num.is_zero() {
            return RationalField::zero();
        }
        let h = gcd(&num, &g);
        let num = num.div_exact(&h).expect("gcd divides");
        let den = (&self.den * &d2).div_exact(&h).expect("gcd divides");
        RationalField::normalized(num, den)
    }
}

impl Sub<&RationalField> for &RationalField {
    type Output = RationalField;
    fn sub(self, rhs: &RationalField) -> RationalField {
        self + &(-rhs)
    }
}

impl Mul<&RationalField> for &RationalField {
    type Output = RationalField;
    fn mul(self, rhs: &RationalField) -> RationalField {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalField::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return RationalField::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // cancel crosswise first to keep intermediate degrees small
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = rhs.den.div_exact(&g1).unwrap();
        let c = rhs.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        RationalField::canonical(&a * &c, &b * &d)
    }
}

impl Div<&RationalField> for &RationalField {
    type Output = RationalField;
    /// Panics on division by the zero function.
    fn div(self, rhs: &RationalField) -> RationalField {
        self * &rhs.inv().expect("division by the zero rational function")
    }
}

impl Neg for &RationalField {
    type Output = RationalField;
    fn neg(self) -> RationalField {
        RationalField { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalField {
    type Output = RationalField;
    fn neg(self) -> RationalField {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RationalField> for RationalField {
            type Output = RationalField;
            fn $m(self, rhs: RationalField) -> RationalField {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalField> for RationalField {
            type Output = RationalField;
            fn $m(self, rhs: &RationalField) -> RationalField {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for RationalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        // a leading minus is harmless in the numerator since negation
        // commutes with division
        let wrap = |p: &Poly, signed: bool| {
            let c = p.leading_coefficient();
            if p.num_terms() == 1 && c.is_integer_real() && (signed || c >= GaussianRational::zero()) {
                p.to_string()
            } else {
                format!("({p})")
            }
        };
        write!(f, "{}/{}", wrap(&self.num, true), wrap(&self.den, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> RationalField {
        RationalField::var(i)
    }

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn eval_polynomial() {
        let f = &x(0) * &x(0);
        assert_eq!(f.eval(&[q(3)]).unwrap(), q(9));
    }

    #[test]
    fn eval_pole() {
        let f = x(1).inv().unwrap();
        assert!(matches!(f.eval(&[q(1), q(0)]), Err(Error::DenominatorZeroAtPoint { .. })));
    }

    #[test]
    fn eval_quotient() {
        let f = &(&x(0) + &x(1)) / &(&x(0) - &x(1));
        assert_eq!(f.eval(&[q(3), q(1)]).unwrap(), q(2));
    }

    #[test]
    fn cancellation_gives_canonical_form() {
        // (x1^2 - x2^2)/(2x1 - 2x2) = (x1 + x2)/2
        let num = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let den = &(&x(0) - &x(1)) * &RationalField::from_int(2);
        let f = &num / &den;
        assert!(f.is_polynomial());
        assert_eq!(f, &(&x(0) + &x(1)) * &RationalField::ratio(1, 2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(RationalField::new(Poly::one(), Poly::zero()), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn quotient_rule() {
        // d/dx1 (1/x1) = -1/x1^2
        let f = x(0).inv().unwrap();
        assert_eq!(f.partial(0), -(&x(0) * &x(0)).inv().unwrap());
    }
}
