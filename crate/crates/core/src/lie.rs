//! Finite-dimensional Lie algebras given by structure constants, with the
//! adjoint representation and the Killing form.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::scalars::GaussianRational;

/// A vector in the chosen basis of a Lie algebra.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct LieVector(pub Vec<GaussianRational>);

impl LieVector {
    pub fn zero(dim: usize) -> Self {
        Self(vec![GaussianRational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = GaussianRational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[GaussianRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `[eᵢ, eⱼ] = Σ_k c^k_{ij} e_k`, stored densely as `c[(i * d + j) * d + k]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    constants: Vec<GaussianRational>,
}

/// Result of [`LieAlgebra::killing_form`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KillingForm {
    pub matrix: QMatrix,
    pub nondegenerate: bool,
}

impl LieAlgebra {
    /// Builds the algebra from sparse entries `(i, j, k, c^k_{ij})`. Entries
    /// for `(j, i)` are filled in by antisymmetry; an explicit entry that
    /// contradicts antisymmetry, or a table that fails Jacobi, is rejected.
    pub fn new(name: impl Into<String>, dim: usize, entries: &[(usize, usize, usize, GaussianRational)]) -> Result<Self> {
        let alg = Self::unchecked(name, dim, entries)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Same as [`LieAlgebra::new`] but skips the Jacobi check. Used to build
    /// deliberately broken tables.
    pub fn unchecked(name: impl Into<String>, dim: usize, entries: &[(usize, usize, usize, GaussianRational)]) -> Result<Self> {
        let name = name.into();
        let mut constants = vec![GaussianRational::zero(); dim * dim * dim];
        let mut set = vec![false; dim * dim * dim];
        for (i, j, k, c) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidLieAlgebra(format!("{name}: index ({i}, {j}, {k}) out of range")));
            }
            let a = (i * dim + j) * dim + k;
            let b = (j * dim + i) * dim + k;
            if (set[a] && constants[a] != *c) || (set[b] && constants[b] != -c) || (i == j && !c.is_zero()) {
                return Err(Error::InvalidLieAlgebra(format!(
                    "{name}: entry ({i}, {j}, {k}) contradicts antisymmetry"
                )));
            }
            constants[a] = c.clone();
            constants[b] = -c;
            set[a] = true;
            set[b] = true;
        }
        Ok(Self { name, dim, constants })
    }

    fn validate(&self) -> Result<()> {
        if let Some((i, j, k)) = self.jacobi_violation() {
            return Err(Error::InvalidLieAlgebra(format!(
                "{}: Jacobi identity fails for (e{}, e{}, e{})",
                self.name,
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(())
    }

    /// First basis triple violating `[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0`.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (a, b, c) = (self.e(i), self.e(j), self.e(k));
                    let s = self
                        .bracket(&a, &self.bracket(&b, &c))
                        .add(&self.bracket(&b, &self.bracket(&c, &a)))
                        .add(&self.bracket(&c, &self.bracket(&a, &b)));
                    if !s.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Structure constants of the span of `basis` under the matrix commutator.
    /// Fails if the span is not closed or the matrices are dependent.
    pub fn from_matrix_basis(name: impl Into<String>, basis: &[QMatrix]) -> Result<Self> {
        let name = name.into();
        let d = basis.len();
        let n = basis.first().map_or(0, QMatrix::rows);
        let sq = n * n;
        // columns are the flattened basis matrices
        let coords = QMatrix::from_fn(sq, d, |r, c| basis[c].entries()[r].clone());
        if coords.rank() != d {
            return Err(Error::InvalidLieAlgebra(format!("{name}: basis matrices are dependent")));
        }
        let mut entries = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let ab = basis[i].try_mul(&basis[j])?;
                let ba = basis[j].try_mul(&basis[i])?;
                let comm = ab.try_sub(&ba)?;
                let rhs = QMatrix::from_vec(sq, 1, comm.entries().to_vec())?;
                let aug = QMatrix::from_fn(sq, d + 1, |r, c| {
                    if c < d { coords[(r, c)].clone() } else { rhs[(r, 0)].clone() }
                });
                let (red, pivots) = aug.rref();
                if pivots.contains(&d) {
                    return Err(Error::InvalidLieAlgebra(format!("{name}: span is not closed under the commutator")));
                }
                for (row, &p) in pivots.iter().enumerate() {
                    let c = red[(row, d)].clone();
                    if !c.is_zero() {
                        entries.push((i, j, p, c));
                    }
                }
            }
        }
        Self::new(name, d, &entries)
    }

    /// `su(2)` in the basis with `[e₁,e₂] = e₃` and cyclic permutations.
    pub fn su2() -> Self {
        let one = GaussianRational::one();
        Self::new("su2", 3, &[(0, 1, 2, one.clone()), (1, 2, 0, one.clone()), (2, 0, 1, one)])
            .expect("su(2) table is valid")
    }

    /// `sl(2)` in the basis `{h, e, f}`.
    pub fn sl2() -> Self {
        let q = GaussianRational::from_int;
        Self::new("sl2", 3, &[(0, 1, 1, q(2)), (0, 2, 2, q(-2)), (1, 2, 0, q(1))])
            .expect("sl(2) table is valid")
    }

    /// `so(3)` realized by the antisymmetric matrices `E₁₂−E₂₁, E₁₃−E₃₁, E₂₃−E₃₂`.
    pub fn so3() -> Self {
        let gen = |a: usize, b: usize| {
            let mut m = QMatrix::zeros(3, 3);
            m[(a, b)] = GaussianRational::one();
            m[(b, a)] = -GaussianRational::one();
            m
        };
        Self::from_matrix_basis("so3", &[gen(0, 1), gen(0, 2), gen(1, 2)]).expect("so(3) closes")
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(format!("abelian{dim}"), dim, &[]).expect("abelian table is valid")
    }

    /// Looks up one of the built-in algebras by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "su2" => Some(Self::su2()),
            "sl2" => Some(Self::sl2()),
            "so3" => Some(Self::so3()),
            _ => name.strip_prefix("abelian").and_then(|d| d.parse().ok()).map(Self::abelian),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{ij}`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &GaussianRational {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn e(&self, i: usize) -> LieVector {
        LieVector::basis(self.dim, i)
    }

    pub fn basis(&self) -> Vec<LieVector> {
        (0..self.dim).map(|i| self.e(i)).collect()
    }

    pub fn bracket(&self, u: &LieVector, v: &LieVector) -> LieVector {
        let d = self.dim;
        let mut out = vec![GaussianRational::zero(); d];
        for (i, ui) in u.0.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.0.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *slot += &(&uv * c);
                    }
                }
            }
        }
        LieVector(out)
    }

    /// Matrix of `w ↦ [v, w]`; column `j` holds `[v, eⱼ]`.
    pub fn ad_matrix(&self, v: &LieVector) -> Result<QMatrix> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a {}-dimensional algebra",
                v.dim(),
                self.dim
            )));
        }
        let d = self.dim;
        Ok(QMatrix::from_fn(d, d, |k, j| {
            v.0.iter()
                .enumerate()
                .fold(GaussianRational::zero(), |acc, (i, vi)| acc + vi * self.constant(i, j, k))
        }))
    }

    /// `𝔅ᵢⱼ = Tr(ad(eᵢ) ad(eⱼ))`, with Cartan's nondegeneracy test.
    pub fn killing_form(&self) -> KillingForm {
        let ads: Vec<QMatrix> = self.basis().iter().map(|e| self.ad_matrix(e).unwrap()).collect();
        let d = self.dim;
        let matrix = QMatrix::from_fn(d, d, |i, j| ads[i].try_mul(&ads[j]).unwrap().trace());
        let nondegenerate = !matrix.determinant().unwrap().is_zero();
        KillingForm { matrix, nondegenerate }
    }

    /// `𝔅(u, w)` for arbitrary vectors.
    pub fn killing(&self, u: &LieVector, w: &LieVector) -> GaussianRational {
        let k = self.killing_form().matrix;
        bilinear(&k, u, w)
    }
}

/// `uᵀ M w` without conjugation.
pub(crate) fn bilinear(m: &QMatrix, u: &LieVector, w: &LieVector) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (i, ui) in u.0.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, wj) in w.0.iter().enumerate() {
            if !wj.is_zero() {
                acc += &(&(ui * &m[(i, j)]) * wj);
            }
        }
    }
    acc
}

pub fn ad_matrix(l: &LieAlgebra, v: &LieVector) -> Result<QMatrix> {
    l.ad_matrix(v)
}

pub fn killing_form(l: &LieAlgebra) -> KillingForm {
    l.killing_form()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn su2_ad_e1() {
        let l = LieAlgebra::su2();
        let ad = l.ad_matrix(&l.e(0)).unwrap();
        // e2 ↦ e3, e3 ↦ −e2, e1 ↦ 0
        assert_eq!(ad.column(0), vec![q(0), q(0), q(0)]);
        assert_eq!(ad.column(1), vec![q(0), q(0), q(1)]);
        assert_eq!(ad.column(2), vec![q(0), q(-1), q(0)]);
    }

    #[test]
    fn abelian_ad_is_zero() {
        let l = LieAlgebra::abelian(2);
        let v = LieVector(vec![q(3), q(-1)]);
        assert!(l.ad_matrix(&v).unwrap().is_zero());
        assert!(LieAlgebra::su2().ad_matrix(&LieVector::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn killing_su2() {
        let k = LieAlgebra::su2().killing_form();
        assert_eq!(k.matrix, QMatrix::identity(3).scale(&q(-2)));
        assert!(k.nondegenerate);
    }

    #[test]
    fn killing_sl2() {
        let k = LieAlgebra::sl2().killing_form();
        let want = QMatrix::from_rows(vec![
            vec![q(8), q(0), q(0)],
            vec![q(0), q(0), q(4)],
            vec![q(0), q(4), q(0)],
        ])
        .unwrap();
        assert_eq!(k.matrix, want);
        assert!(k.nondegenerate);
    }

    #[test]
    fn killing_abelian_degenerate() {
        let k = LieAlgebra::abelian(3).killing_form();
        assert!(k.matrix.is_zero());
        assert!(!k.nondegenerate);
    }

    #[test]
    fn jacobi_violation_rejected() {
        // su(2) with one constant doubled
        let one = q(1);
        let bad = [(0, 1, 2, one.clone()), (1, 2, 0, q(2)), (2, 0, 1, one)];
        assert!(LieAlgebra::new("bad", 3, &bad).is_ok(), "scaled su(2) still satisfies Jacobi");
        // a genuinely non-Jacobi table on 3 generators
        let broken = [(0, 1, 0, q(1)), (1, 2, 1, q(1)), (0, 2, 2, q(1))];
        assert!(matches!(LieAlgebra::new("broken", 3, &broken), Err(Error::InvalidLieAlgebra(_))));
        assert!(LieAlgebra::unchecked("broken", 3, &broken).unwrap().jacobi_violation().is_some());
    }

    #[test]
    fn antisymmetry_contradiction_rejected() {
        let e = [(0, 1, 0, q(1)), (1, 0, 0, q(1))];
        assert!(LieAlgebra::new("x", 2, &e).is_err());
    }

    #[test]
    fn so3_from_matrices_is_semisimple() {
        let l = LieAlgebra::so3();
        assert_eq!(l.dim(), 3);
        assert!(l.killing_form().nondegenerate);
    }
}
