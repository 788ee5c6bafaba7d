//! Random instances for property checks: small exact scalars, polynomials,
//! rational functions, matrix fields, kernels and Lie vectors.

use num_rational::BigRational;
use rand::Rng;

use crate::conv::{FinSuppKernel, MatrixField};
use crate::domain::OpenBox;
use crate::lie::LieVector;
use crate::linalg::QMatrix;
use crate::scalars::{BaseDerivation, GaussianRational, Monomial, Poly, RationalField};

/// Small integer or fraction, occasionally with an imaginary part.
pub fn scalar(rng: &mut impl Rng) -> GaussianRational {
    let num = rng.random_range(-4i64..=4);
    let den = if rng.random_bool(0.3) { rng.random_range(2i64..=5) } else { 1 };
    let re = GaussianRational::ratio(num, den);
    if rng.random_bool(0.2) {
        re + GaussianRational::from_ints(0, rng.random_range(-3i64..=3))
    } else {
        re
    }
}

/// Small real rational.
pub fn real_scalar(rng: &mut impl Rng) -> GaussianRational {
    let num = rng.random_range(-4i64..=4);
    let den = if rng.random_bool(0.3) { rng.random_range(2i64..=5) } else { 1 };
    GaussianRational::ratio(num, den)
}

/// Polynomial in `vars` variables with at most `terms` terms of total degree
/// at most `degree`.
pub fn poly(rng: &mut impl Rng, vars: usize, degree: u32, terms: usize) -> Poly {
    Poly::from_terms((0..terms).map(|_| {
        let mut exps = vec![0u32; vars];
        let mut left = rng.random_range(0..=degree);
        while left > 0 && vars > 0 {
            exps[rng.random_range(0..vars)] += 1;
            left -= 1;
        }
        (Monomial::new(exps), scalar(rng))
    }))
}

/// A denominator with no real zeros: `c + Σ x_k²` or a constant.
pub fn positive_denominator(rng: &mut impl Rng, vars: usize) -> Poly {
    let mut d = Poly::constant(GaussianRational::from_int(rng.random_range(1i64..=3)));
    for k in 0..vars {
        if rng.random_bool(0.5) {
            d = &d + &Poly::var(k).pow(2);
        }
    }
    d
}

/// A polynomial, or with probability `p_rational` a quotient by a
/// denominator without real zeros.
pub fn field(rng: &mut impl Rng, vars: usize, degree: u32, p_rational: f64) -> RationalField {
    let num = poly(rng, vars, degree, 3);
    if rng.random_bool(p_rational) {
        RationalField::new(num, positive_denominator(rng, vars)).expect("nonzero denominator")
    } else {
        RationalField::from_poly(num)
    }
}

/// Mostly sparse `n×n` matrix field.
pub fn matrix_field(rng: &mut impl Rng, n: usize, vars: usize, degree: u32, p_rational: f64) -> MatrixField {
    MatrixField::from_fn(n, |_, _| {
        if rng.random_bool(0.35) { RationalField::from_int(0) } else { field(rng, vars, degree, p_rational) }
    })
}

pub fn qmatrix(rng: &mut impl Rng, rows: usize, cols: usize) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| scalar(rng))
}

pub fn vector(rng: &mut impl Rng, len: usize) -> Vec<GaussianRational> {
    (0..len).map(|_| scalar(rng)).collect()
}

/// Nonzero kernel with up to `max_terms` entries in `[-range, range]²`.
pub fn kernel(rng: &mut impl Rng, max_terms: usize, range: i64) -> FinSuppKernel {
    loop {
        let terms = rng.random_range(1..=max_terms);
        let k = FinSuppKernel::from_entries((0..terms).map(|_| {
            ((rng.random_range(-range..=range), rng.random_range(-range..=range)), scalar(rng))
        }));
        if !k.is_zero() {
            return k;
        }
    }
}

pub fn lie_vector(rng: &mut impl Rng, dim: usize) -> LieVector {
    LieVector(vector(rng, dim))
}

pub fn base_derivation(rng: &mut impl Rng, vars: usize, degree: u32) -> BaseDerivation {
    BaseDerivation::new((0..vars).map(|_| field(rng, vars, degree, 0.2)).collect())
}

/// A bounded box with integer corners inside `[-range, range]^dim`.
pub fn open_box(rng: &mut impl Rng, dim: usize, range: i64) -> OpenBox {
    let bounds = (0..dim)
        .map(|_| {
            let lo = rng.random_range(-range..range);
            let hi = rng.random_range(lo + 1..=range);
            (BigRational::from_integer(lo.into()), BigRational::from_integer(hi.into()))
        })
        .collect();
    OpenBox::new(bounds).expect("nonempty sides")
}

/// A box strictly inside `outer` (which must be bounded).
pub fn sub_box(rng: &mut impl Rng, outer: &OpenBox) -> OpenBox {
    let bounds = outer
        .bounds()
        .iter()
        .map(|(lo, hi)| {
            let (lo, hi) = (lo.clone().expect("bounded"), hi.clone().expect("bounded"));
            let width = &hi - &lo;
            let a = BigRational::new(rng.random_range(0i64..4).into(), 8.into());
            let b = BigRational::new(rng.random_range(5i64..=8).into(), 8.into());
            (&lo + &width * a, &lo + &width * b)
        })
        .collect();
    OpenBox::new(bounds).expect("nonempty sides")
}

/// Fraction in `(0, 1)` with a small denominator.
pub fn unit_fraction(rng: &mut impl Rng) -> BigRational {
    let d = rng.random_range(2i64..=9);
    let n = rng.random_range(1..d);
    BigRational::new(n.into(), d.into())
}
