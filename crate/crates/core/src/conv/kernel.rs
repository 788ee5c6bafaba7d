use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use super::Convolution;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::scalars::GaussianRational;

/// A finitely supported function on the pair groupoid `ℤ × ℤ`. Zero values
/// are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FinSuppKernel {
    support: BTreeMap<(i64, i64), GaussianRational>,
}

impl FinSuppKernel {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn delta(i: i64, j: i64) -> Self {
        Self::from_entries([((i, j), GaussianRational::from_int(1))])
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((i64, i64), GaussianRational)>) -> Self {
        let mut k = Self::zero();
        for (ij, v) in entries {
            k.add_at(ij, &v);
        }
        k
    }

    fn add_at(&mut self, ij: (i64, i64), v: &GaussianRational) {
        if v.is_zero() {
            return;
        }
        let slot = self.support.entry(ij).or_insert_with(GaussianRational::zero);
        *slot += v;
        if slot.is_zero() {
            self.support.remove(&ij);
        }
    }

    pub fn get(&self, i: i64, j: i64) -> GaussianRational {
        self.support.get(&(i, j)).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &GaussianRational)> {
        self.support.iter()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// `pr₂(supp a)`.
    pub fn columns(&self) -> BTreeSet<i64> {
        self.support.keys().map(|&(_, j)| j).collect()
    }

    pub fn rows(&self) -> BTreeSet<i64> {
        self.support.keys().map(|&(i, _)| i).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&ij, v) in &other.support {
            out.add_at(ij, v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&ij, v) in &other.support {
            out.add_at(ij, &-v);
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_entries(self.support.iter().map(|(&ij, v)| (ij, v * c)))
    }

    /// `(a∗b)(x, y) = Σ_z a(x, z) b(z, y)` over the joint support.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut by_row: BTreeMap<i64, Vec<(i64, &GaussianRational)>> = BTreeMap::new();
        for (&(z, y), v) in &other.support {
            by_row.entry(z).or_default().push((y, v));
        }
        let mut out = Self::zero();
        for (&(x, z), a) in &self.support {
            if let Some(row) = by_row.get(&z) {
                for &(y, b) in row {
                    out.add_at((x, y), &(a * b));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.convolve(other).sub(&other.convolve(self))
    }
}

impl Convolution for FinSuppKernel {
    fn convolve(&self, other: &Self) -> Result<Self> {
        Ok(FinSuppKernel::convolve(self, other))
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        Ok(FinSuppKernel::sub(self, other))
    }
}

impl fmt::Display for FinSuppKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        for (n, ((i, j), v)) in self.support.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({v})δ({i},{j})")?;
        }
        Ok(())
    }
}

/// The element `b` that commutes badly with `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterWitness {
    pub b: FinSuppKernel,
    /// The point `x₀` where `b₁` is supported.
    pub x0: i64,
    pub y0: i64,
    /// `(b∗a)(x₀, y₀) = Σ_z |a(z, y₀)|²`.
    pub value: GaussianRational,
}

/// Builds `b(z, y) = b₁(z)·conj(a(y, y₀))` where `b₁` is the indicator of the
/// first integer above `pr₂(supp a)`. Then `a∗b = 0` while
/// `(b∗a)(x₀, y₀) = Σ_z |a(z, y₀)|² ≠ 0`, so `a` is not central.
pub fn center_witness(a: &FinSuppKernel, y0: i64) -> Result<CenterWitness> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let column: Vec<(i64, GaussianRational)> = a
        .support
        .iter()
        .filter(|(&(_, j), _)| j == y0)
        .map(|(&(i, _), v)| (i, v.clone()))
        .collect();
    if column.is_empty() {
        return Err(Error::BadColumn(y0));
    }
    let x0 = a.columns().last().copied().expect("nonzero kernel") + 1;
    let b = FinSuppKernel::from_entries(column.iter().map(|(y, v)| ((x0, *y), v.conj())));
    let value = b.convolve(a).get(x0, y0);
    Ok(CenterWitness { b, x0, y0, value })
}

/// Dimension of the space of kernels supported in `[0, window)²` that commute
/// with every `δ_{(i,j)}`, `i, j ∈ [0, window]`. Solved exactly as a linear
/// system; the answer is 0 for every window.
pub fn kernel_commutant_dimension(window: usize) -> usize {
    let w = window as i64;
    let unknowns: Vec<(i64, i64)> = (0..w).flat_map(|x| (0..w).map(move |y| (x, y))).collect();
    let index = |ij: (i64, i64)| unknowns.iter().position(|&u| u == ij);
    let mut rows: Vec<Vec<GaussianRational>> = Vec::new();
    for i in 0..=w {
        for j in 0..=w {
            // [c, δ_ij](x, y) = c(x, i)[y = j] − [x = i] c(j, y)
            let mut eqs: BTreeMap<(i64, i64), Vec<GaussianRational>> = BTreeMap::new();
            for &(x, y) in &unknowns {
                let mut touch = |p: (i64, i64), u: (i64, i64), s: i64| {
                    if let Some(k) = index(u) {
                        let row = eqs.entry(p).or_insert_with(|| vec![GaussianRational::zero(); unknowns.len()]);
                        row[k] += &GaussianRational::from_int(s);
                    }
                };
                if y == i {
                    touch((x, j), (x, y), 1);
                }
                if x == j {
                    touch((i, y), (x, y), -1);
                }
            }
            rows.extend(eqs.into_values());
        }
    }
    if rows.is_empty() {
        return unknowns.len();
    }
    let m = QMatrix::from_rows(rows).expect("rectangular system");
    unknowns.len() - m.rank()
}
