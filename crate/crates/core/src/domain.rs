//! Open boxes in the base `U ⊂ ℝ^m`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::GaussianRational;

/// `Π (loᵢ, hiᵢ)`; a missing bound is infinite.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OpenBox {
    bounds: Vec<(Option<BigRational>, Option<BigRational>)>,
}

fn le(a: &Option<BigRational>, b: &Option<BigRational>, lower: bool) -> bool {
    // is bound `a` at least as tight as `b`?
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => {
            if lower {
                a >= b
            } else {
                a <= b
            }
        }
    }
}

impl OpenBox {
    pub fn new(bounds: Vec<(BigRational, BigRational)>) -> Result<Self> {
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            if lo >= hi {
                return Err(Error::DimensionMismatch(format!("box side {} is empty: ({lo}, {hi})", i + 1)));
            }
        }
        Ok(Self { bounds: bounds.into_iter().map(|(l, h)| (Some(l), Some(h))).collect() })
    }

    /// Box from integer corner pairs, e.g. `[(0, 1), (-1, 2)]`.
    pub fn from_ints(bounds: &[(i64, i64)]) -> Result<Self> {
        Self::new(
            bounds
                .iter()
                .map(|&(l, h)| (BigRational::from_integer(l.into()), BigRational::from_integer(h.into())))
                .collect(),
        )
    }

    /// All of `ℝ^m`.
    pub fn whole(dim: usize) -> Self {
        Self { bounds: vec![(None, None); dim] }
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(Option<BigRational>, Option<BigRational>)] {
        &self.bounds
    }

    pub fn contains_box(&self, other: &OpenBox) -> bool {
        self.dim() == other.dim()
            && self
                .bounds
                .iter()
                .zip(&other.bounds)
                .all(|((l, h), (ol, oh))| le(ol, l, true) && le(oh, h, false))
    }

    /// Strict containment of a real point.
    pub fn contains_point(&self, p: &[GaussianRational]) -> bool {
        p.len() == self.dim()
            && p.iter().zip(&self.bounds).all(|(x, (l, h))| {
                x.im.is_zero()
                    && l.as_ref().is_none_or(|l| &x.re > l)
                    && h.as_ref().is_none_or(|h| &x.re < h)
            })
    }

    pub fn intersect(&self, other: &OpenBox) -> Option<OpenBox> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut bounds = Vec::with_capacity(self.dim());
        for ((l1, h1), (l2, h2)) in self.bounds.iter().zip(&other.bounds) {
            let lo = match (l1, l2) {
                (Some(a), Some(b)) => Some(a.max(b).clone()),
                (a, b) => a.clone().or_else(|| b.clone()),
            };
            let hi = match (h1, h2) {
                (Some(a), Some(b)) => Some(a.min(b).clone()),
                (a, b) => a.clone().or_else(|| b.clone()),
            };
            if let (Some(l), Some(h)) = (&lo, &hi) {
                if l >= h {
                    return None;
                }
            }
            bounds.push((lo, hi));
        }
        Some(OpenBox { bounds })
    }

    pub fn overlaps(&self, other: &OpenBox) -> bool {
        self.intersect(other).is_some()
    }

    /// A rational point strictly inside the box.
    pub fn interior_point(&self) -> Vec<GaussianRational> {
        self.bounds
            .iter()
            .map(|(l, h)| {
                let v = match (l, h) {
                    (Some(l), Some(h)) => (l + h) / BigRational::from_integer(2.into()),
                    (Some(l), None) => l + BigRational::from_integer(1.into()),
                    (None, Some(h)) => h - BigRational::from_integer(1.into()),
                    (None, None) => BigRational::zero(),
                };
                GaussianRational::real(v)
            })
            .collect()
    }

    pub(crate) fn require_subset(&self, sub: &OpenBox) -> Result<()> {
        if self.contains_box(sub) {
            Ok(())
        } else {
            Err(Error::NotASubset(sub.to_string(), self.to_string()))
        }
    }
}

impl fmt::Display for OpenBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, h)) in self.bounds.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            let l = l.as_ref().map_or("-inf".to_string(), ToString::to_string);
            let h = h.as_ref().map_or("inf".to_string(), ToString::to_string);
            write!(f, "({l}, {h})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn containment_and_intersection() {
        let u = OpenBox::from_ints(&[(0, 4), (0, 4)]).unwrap();
        let v = OpenBox::from_ints(&[(1, 2), (0, 3)]).unwrap();
        assert!(u.contains_box(&v));
        assert!(!v.contains_box(&u));
        assert!(OpenBox::whole(2).contains_box(&u));
        let w = OpenBox::from_ints(&[(3, 5), (1, 2)]).unwrap();
        assert_eq!(u.intersect(&w).unwrap(), OpenBox::from_ints(&[(3, 4), (1, 2)]).unwrap());
        let far = OpenBox::from_ints(&[(4, 5), (0, 1)]).unwrap();
        assert!(!u.overlaps(&far));
        assert!(u.contains_point(&u.interior_point()));
    }

    #[test]
    fn empty_side_rejected() {
        assert!(OpenBox::from_ints(&[(1, 1)]).is_err());
    }
}
