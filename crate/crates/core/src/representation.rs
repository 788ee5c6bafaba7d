//! The regular representation of `𝒜(U)` as a field of operators over
//! sampled base points.
//!
//! The direct integral `∫⊕ L²(G)` is replaced by a finite weighted grid of
//! base points. Evaluation is exact; only [`ess_sup_norm`] uses floating point.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::conv::MatrixField;
use crate::domain::OpenBox;
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::scalars::{GaussianRational, RationalField};
use crate::spectral::spectral_norm;

/// Finite stand-in for the base measure space: distinct real points with
/// positive quadrature weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SampleGrid {
    points: Vec<Vec<GaussianRational>>,
    weights: Vec<BigRational>,
    /// Per-axis coordinates when the grid is a full tensor product.
    axes: Option<Vec<Vec<GaussianRational>>>,
}

impl SampleGrid {
    pub fn new(points: Vec<Vec<GaussianRational>>, weights: Vec<BigRational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        if weights.len() != points.len() {
            return Err(Error::InvalidGrid(format!("{} points but {} weights", points.len(), weights.len())));
        }
        let dim = points[0].len();
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidGrid("points have different dimensions".into()));
        }
        if points.iter().flatten().any(|c| !c.is_real()) {
            return Err(Error::InvalidGrid("points must be real".into()));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::InvalidGrid("weights must be positive".into()));
        }
        let distinct: BTreeSet<String> = points.iter().map(|p| format!("{p:?}")).collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidGrid("points must be distinct".into()));
        }
        Ok(Self { points, weights, axes: None })
    }

    /// Unit weights.
    pub fn from_points(points: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = points.len();
        Self::new(points, vec![BigRational::one(); n])
    }

    /// Tensor grid of the interior nodes `lo + k(hi − lo)/N`, `k = 1..N−1`, on
    /// each side of a bounded box, with weight equal to the cell volume.
    pub fn from_box(domain: &OpenBox, subdivisions: &[usize]) -> Result<Self> {
        if subdivisions.len() != domain.dim() {
            return Err(Error::InvalidGrid("one subdivision count per side".into()));
        }
        let mut axes = Vec::new();
        let mut cell = BigRational::one();
        for ((lo, hi), &n) in domain.bounds().iter().zip(subdivisions) {
            let (Some(lo), Some(hi)) = (lo, hi) else {
                return Err(Error::InvalidGrid("box must be bounded".into()));
            };
            if n < 2 {
                return Err(Error::InvalidGrid("need at least 2 subdivisions per side".into()));
            }
            let step = (hi - lo) / BigRational::from_integer(n.into());
            axes.push(
                (1..n)
                    .map(|k| GaussianRational::real(lo + &step * BigRational::from_integer(k.into())))
                    .collect::<Vec<_>>(),
            );
            cell *= step;
        }
        Self::tensor(axes, cell)
    }

    /// Full tensor product of the given axis coordinates with a common weight.
    pub fn tensor(axes: Vec<Vec<GaussianRational>>, weight: BigRational) -> Result<Self> {
        let mut points: Vec<Vec<GaussianRational>> = vec![vec![]];
        for axis in &axes {
            points = points
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |c| {
                        let mut q = p.clone();
                        q.push(c.clone());
                        q
                    })
                })
                .collect();
        }
        let n = points.len();
        let mut g = Self::new(points, vec![weight; n])?;
        g.axes = Some(axes);
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<GaussianRational>] {
        &self.points
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn axes(&self) -> Option<&[Vec<GaussianRational>]> {
        self.axes.as_deref()
    }

    /// Whether every point of `self` is also a point of `finer`.
    pub fn is_refined_by(&self, finer: &SampleGrid) -> bool {
        self.points.iter().all(|p| finer.points.contains(p))
    }
}

/// A vector of `L²(U, ℂⁿ)` sampled on a grid: one `ℂⁿ` vector per point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GridVector {
    pub values: Vec<Vec<GaussianRational>>,
}

impl GridVector {
    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Zero::is_zero)
    }
}

/// `r_a = (π_x(a))_x` on a grid.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RandomOperatorField {
    source: MatrixField,
    grid: SampleGrid,
    values: Vec<QMatrix>,
}

impl RandomOperatorField {
    pub fn source(&self) -> &MatrixField {
        &self.source
    }

    pub fn grid(&self) -> &SampleGrid {
        &self.grid
    }

    pub fn values(&self) -> &[QMatrix] {
        &self.values
    }

    pub fn at(&self, k: usize) -> &QMatrix {
        &self.values[k]
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(QMatrix::is_zero)
    }

    fn same_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::InvalidGrid("operator fields sampled on different grids".into()));
        }
        Ok(())
    }

    /// Pointwise composition `π_x(a)·π_x(b)`.
    pub fn compose(&self, other: &Self) -> Result<Vec<QMatrix>> {
        self.same_grid(other)?;
        self.values.iter().zip(&other.values).map(|(a, b)| a.try_mul(b)).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Vec<QMatrix>> {
        self.same_grid(other)?;
        self.values.iter().zip(&other.values).map(|(a, b)| a.try_add(b)).collect()
    }

    /// `(π_x(a)ψ)(x) = A(x)ψ(x)`.
    pub fn apply(&self, psi: &GridVector) -> Result<GridVector> {
        if psi.values.len() != self.values.len() {
            return Err(Error::DimensionMismatch("grid vector length".into()));
        }
        let values = self.values.iter().zip(&psi.values).map(|(a, v)| a.mul_vec(v)).collect::<Result<_>>()?;
        Ok(GridVector { values })
    }
}

/// Evaluates every entry of `a` at every grid point.
pub fn represent(a: &MatrixField, grid: &SampleGrid) -> Result<RandomOperatorField> {
    if let Some(d) = a.domain() {
        if let Some(p) = grid.points.iter().find(|p| !d.contains_point(p)) {
            return Err(Error::InvalidGrid(format!(
                "point ({}) lies outside the domain {d}",
                p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            )));
        }
    }
    let values = grid
        .points
        .iter()
        .map(|p| {
            a.eval(p).map_err(|e| match e {
                Error::DenominatorZeroAtPoint { point } => Error::PoleOnGrid { point },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RandomOperatorField { source: a.clone(), grid: grid.clone(), values })
}

/// `max_x ‖π_x(a)‖` over the grid.
pub fn ess_sup_norm(r: &RandomOperatorField) -> f64 {
    r.values.iter().map(spectral_norm).fold(0.0, f64::max)
}

/// Per-point spectral norms, in grid order.
pub fn pointwise_norms(r: &RandomOperatorField) -> Vec<f64> {
    r.values.iter().map(spectral_norm).collect()
}

/// The two conditions making `r_a` a random operator: matrix coefficients
/// are rational functions without poles on the grid (the decidable form of
/// measurability), and the grid supremum of the norm.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomOperatorConditions {
    pub measurable: bool,
    pub ess_sup: f64,
}

pub fn random_operator_conditions(a: &MatrixField, grid: &SampleGrid) -> Result<RandomOperatorConditions> {
    let r = represent(a, grid)?;
    Ok(RandomOperatorConditions { measurable: true, ess_sup: ess_sup_norm(&r) })
}

/// Whether vanishing of `represent(a)` on `grid` forces `a = 0`: the grid is
/// a tensor product with more nodes on each axis than the degree of every
/// numerator in that variable.
pub fn grid_determines(a: &MatrixField, grid: &SampleGrid) -> bool {
    let Some(axes) = grid.axes() else {
        return false;
    };
    a.matrix().entries().iter().all(|e| {
        let num = e.numerator();
        num.num_vars() <= axes.len() && axes.iter().enumerate().all(|(v, ax)| ax.len() > num.degree_in(v) as usize)
    })
}

/// Weighted inner product `Σ_k w_k ⟨u_k, v_k⟩`, conjugate-linear in `u`.
pub fn grid_inner(grid: &SampleGrid, u: &GridVector, v: &GridVector) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for ((w, a), b) in grid.weights.iter().zip(&u.values).zip(&v.values) {
        let dot = a.iter().zip(b).fold(GaussianRational::zero(), |s, (x, y)| s + &x.conj() * y);
        acc += &(&dot * &GaussianRational::real(w.clone()));
    }
    acc
}

/// A simple tensor `ψ ⊗ φ ∈ L²(U) ⊗ ℂⁿ`, with `ψ` sampled on the grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    pub psi: Vec<GaussianRational>,
    pub phi: Vec<GaussianRational>,
}

impl TensorVector {
    /// `⟨ψ⊗φ, ψ′⊗φ′⟩ = ⟨ψ, ψ′⟩_w · ⟨φ, φ′⟩`.
    pub fn inner(&self, grid: &SampleGrid, other: &Self) -> GaussianRational {
        let base = grid
            .weights
            .iter()
            .zip(&self.psi)
            .zip(&other.psi)
            .fold(GaussianRational::zero(), |s, ((w, a), b)| s + &(&a.conj() * b) * &GaussianRational::real(w.clone()));
        let fibre = self.phi.iter().zip(&other.phi).fold(GaussianRational::zero(), |s, (a, b)| s + &a.conj() * b);
        &base * &fibre
    }

    /// `(f ⊗ B)(ψ ⊗ φ) = (fψ) ⊗ (Bφ)`.
    pub fn apply_tensor(&self, grid: &SampleGrid, f: &RationalField, b: &QMatrix) -> Result<Self> {
        let fvals = eval_on_grid(f, grid)?;
        Ok(Self {
            psi: fvals.iter().zip(&self.psi).map(|(a, p)| a * p).collect(),
            phi: b.mul_vec(&self.phi)?,
        })
    }

    /// `[I(ψ⊗φ)](x) = ψ(x)φ`.
    pub fn embed(&self) -> GridVector {
        GridVector { values: self.psi.iter().map(|p| self.phi.iter().map(|c| p * c).collect()).collect() }
    }
}

fn eval_on_grid(f: &RationalField, grid: &SampleGrid) -> Result<Vec<GaussianRational>> {
    grid.points
        .iter()
        .map(|p| {
            f.eval(p).map_err(|e| match e {
                Error::DenominatorZeroAtPoint { point } => Error::PoleOnGrid { point },
                other => other,
            })
        })
        .collect()
}

/// Outcome of [`tensor_vs_field_intertwiner`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntertwinerReport {
    /// Grid indices where `I((f⊗B)(ψ⊗φ)) ≠ J(f⊗B)(I(ψ⊗φ))`.
    pub action_mismatches: Vec<usize>,
    pub inner_tensor: GaussianRational,
    pub inner_field: GaussianRational,
}

impl IntertwinerReport {
    pub fn passed(&self) -> bool {
        self.action_mismatches.is_empty() && self.inner_tensor == self.inner_field
    }
}

impl fmt::Display for IntertwinerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "pass (inner product {})", self.inner_tensor)
        } else {
            write!(
                f,
                "mismatch at grid points {:?}; inner products {} vs {}",
                self.action_mismatches, self.inner_tensor, self.inner_field
            )
        }
    }
}

/// Checks that `I : L²(U) ⊗ ℂⁿ → L²(U, ℂⁿ)` intertwines `f ⊗ B` with the
/// multiplication field `J(f ⊗ B) = x ↦ f(x)B`, and preserves the weighted
/// inner product between `v` and `w`.
pub fn tensor_vs_field_intertwiner(
    f: &RationalField,
    b: &QMatrix,
    grid: &SampleGrid,
    v: &TensorVector,
    w: &TensorVector,
) -> Result<IntertwinerReport> {
    if v.psi.len() != grid.len() || w.psi.len() != grid.len() {
        return Err(Error::DimensionMismatch("ψ must have one value per grid point".into()));
    }
    if v.phi.len() != b.cols() || w.phi.len() != b.cols() {
        return Err(Error::DimensionMismatch("φ must match the operator size".into()));
    }
    let lhs = v.apply_tensor(grid, f, b)?.embed();
    let field = MatrixField::from_constant(b)?.scale(f);
    let rhs = represent(&field, grid)?.apply(&v.embed())?;
    let action_mismatches = (0..grid.len()).filter(|&k| lhs.values[k] != rhs.values[k]).collect();
    Ok(IntertwinerReport {
        action_mismatches,
        inner_tensor: v.inner(grid, w),
        inner_field: grid_inner(grid, &v.embed(), &w.embed()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_field;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    fn mf(n: usize, e: &[&str]) -> MatrixField {
        MatrixField::from_entries(n, e.iter().map(|s| parse_field(s).unwrap()).collect()).unwrap()
    }

    fn eighths() -> SampleGrid {
        SampleGrid::from_box(&OpenBox::from_ints(&[(0, 1)]).unwrap(), &[8]).unwrap()
    }

    #[test]
    fn represent_applies_pointwise() {
        let a = mf(2, &["x1", "0", "0", "1"]);
        let grid = SampleGrid::from_points(vec![vec![GaussianRational::ratio(1, 2)]]).unwrap();
        let r = represent(&a, &grid).unwrap();
        let psi = GridVector { values: vec![vec![q(1), q(1)]] };
        assert_eq!(r.apply(&psi).unwrap().values[0], vec![GaussianRational::ratio(1, 2), q(1)]);
    }

    #[test]
    fn identity_represents_identity() {
        let r = represent(&MatrixField::identity(3), &eighths()).unwrap();
        assert!(r.values().iter().all(|m| *m == QMatrix::identity(3)));
    }

    #[test]
    fn pole_on_grid() {
        let a = mf(1, &["1/(x1 - 1/2)"]);
        assert!(matches!(represent(&a, &eighths()), Err(Error::PoleOnGrid { .. })));
    }

    #[test]
    fn norm_of_diagonal_field() {
        let a = mf(2, &["x1", "0", "0", "0"]);
        let r = represent(&a, &eighths()).unwrap();
        assert!((ess_sup_norm(&r) - 0.875).abs() < 1e-12);
        assert_eq!(ess_sup_norm(&represent(&MatrixField::zero(2), &eighths()).unwrap()), 0.0);
    }

    #[test]
    fn grid_validation() {
        assert!(SampleGrid::from_points(vec![]).is_err());
        assert!(SampleGrid::from_points(vec![vec![q(1)], vec![q(1)]]).is_err());
        assert!(SampleGrid::new(vec![vec![q(1)]], vec![BigRational::zero()]).is_err());
        assert!(SampleGrid::from_points(vec![vec![GaussianRational::i()]]).is_err());
        assert_eq!(eighths().len(), 7);
    }

    #[test]
    fn projector_kills_orthogonal_vector() {
        let grid = eighths();
        let p = QMatrix::unit(2, 0, 0);
        let psi: Vec<_> = (0..grid.len()).map(|k| q(k as i64 + 1)).collect();
        let v = TensorVector { psi: psi.clone(), phi: vec![q(0), q(1)] };
        let rep = tensor_vs_field_intertwiner(&parse_field("x1").unwrap(), &p, &grid, &v, &v).unwrap();
        assert!(rep.passed());
        assert!(v.apply_tensor(&grid, &parse_field("x1").unwrap(), &p).unwrap().embed().is_zero());
    }

    #[test]
    fn grid_determination() {
        let a = mf(1, &["x1^3"]);
        let coarse = SampleGrid::from_box(&OpenBox::from_ints(&[(0, 1)]).unwrap(), &[4]).unwrap();
        assert!(!grid_determines(&a, &coarse));
        assert!(grid_determines(&a, &eighths()));
    }
}
