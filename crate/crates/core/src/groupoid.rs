//! The transformation groupoid `Γ_U = U × G × G` in local trivialization and
//! the pair groupoid it is isomorphic to.
//!
//! An arrow `(x; g₁, g₂)` has range `(x, g₁)` and source `(x, g₂)`; arrows
//! compose as in a pair groupoid, `(x; a, b) ∘ (x; b, c) = (x; a, c)`. This is
//! the convention under which convolution over the fibre is matrix
//! multiplication.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalars::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupoidElement {
    pub base_point: Vec<GaussianRational>,
    pub left: usize,
    pub right: usize,
}

/// An object of `Γ_U`: a base point with a group element over it.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FibrePoint {
    pub base_point: Vec<GaussianRational>,
    pub element: usize,
}

impl GroupoidElement {
    pub fn new(base_point: Vec<GaussianRational>, left: usize, right: usize) -> Self {
        Self { base_point, left, right }
    }

    pub fn unit(base_point: Vec<GaussianRational>, g: usize) -> Self {
        Self { base_point, left: g, right: g }
    }

    pub fn is_unit(&self) -> bool {
        self.left == self.right
    }

    /// Source.
    pub fn d(&self) -> FibrePoint {
        FibrePoint { base_point: self.base_point.clone(), element: self.right }
    }

    /// Range.
    pub fn r(&self) -> FibrePoint {
        FibrePoint { base_point: self.base_point.clone(), element: self.left }
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.base_point != other.base_point || self.right != other.left {
            return Err(Error::NotComposable(self.to_string(), other.to_string()));
        }
        Ok(Self { base_point: self.base_point.clone(), left: self.left, right: other.right })
    }

    pub fn invert(&self) -> Self {
        Self { base_point: self.base_point.clone(), left: self.right, right: self.left }
    }
}

impl fmt::Display for GroupoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.base_point.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "; g_{}, g_{})", self.left, self.right)
    }
}

pub fn compose(a: &GroupoidElement, b: &GroupoidElement) -> Result<GroupoidElement> {
    a.compose(b)
}

pub fn invert(a: &GroupoidElement) -> GroupoidElement {
    a.invert()
}

/// An arrow of the pair groupoid `ℤ × ℤ`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DiscretePairElement {
    pub first: i64,
    pub second: i64,
}

impl DiscretePairElement {
    pub fn new(first: i64, second: i64) -> Self {
        Self { first, second }
    }

    pub fn compose(&self, other: &Self) -> Option<Self> {
        (self.second == other.first).then_some(Self { first: self.first, second: other.second })
    }

    pub fn invert(&self) -> Self {
        Self { first: self.second, second: self.first }
    }
}

/// An arrow `(p, g)` of the action groupoid `G ⋊ G` of `G` acting on itself
/// from the right: it goes from `p·g` to `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ActionArrow {
    pub point: usize,
    pub element: usize,
}

impl ActionArrow {
    /// `(p, g) ∘ (p·g, h) = (p, g·h)`.
    pub fn compose(&self, other: &Self, group: &FiniteGroup) -> Option<Self> {
        (group.mul(self.point, self.element) == other.point)
            .then(|| Self { point: self.point, element: group.mul(self.element, other.element) })
    }
}

/// `j(p, g) = (p, p·g)` on a single fibre `E_x ≅ G`.
pub fn to_pair(group: &FiniteGroup, p: usize, g: usize) -> Result<(usize, usize)> {
    if !group.contains(p) || !group.contains(g) {
        return Err(Error::InvalidGroup(format!("({p}, {g}) are not elements of a group of order {}", group.order())));
    }
    Ok((p, group.mul(p, g)))
}
