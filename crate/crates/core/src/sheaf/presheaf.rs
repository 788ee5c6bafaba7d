use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::topology::{fmt_set, members, FiniteTopology, OpenSet};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::scalars::GaussianRational;

/// A finite-dimensional algebra over `ℚ(i)` given by structure constants:
/// `e_a·e_b = Σ_c t[(a·d + b)·d + c] e_c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TabAlgebra {
    dim: usize,
    table: Vec<GaussianRational>,
}

impl TabAlgebra {
    pub fn new(dim: usize, table: Vec<GaussianRational>) -> Result<Self> {
        if table.len() != dim * dim * dim {
            return Err(Error::InvalidPresheaf(format!(
                "structure constants of a {dim}-dimensional algebra need {} entries, got {}",
                dim * dim * dim,
                table.len()
            )));
        }
        Ok(Self { dim, table })
    }

    pub fn zero() -> Self {
        Self { dim: 0, table: vec![] }
    }

    /// `ℚ(i)` itself.
    pub fn scalars() -> Self {
        Self::product(1)
    }

    /// `ℚ(i)^k` with pointwise multiplication.
    pub fn product(k: usize) -> Self {
        Self::power(&Self::matrices(1), k)
    }

    /// `M_n(ℚ(i))` on the matrix units `E_ij` (index `i·n + j`).
    pub fn matrices(n: usize) -> Self {
        let d = n * n;
        let mut table = vec![GaussianRational::zero(); d * d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    let (a, b, c) = (i * n + j, j * n + l, i * n + l);
                    table[(a * d + b) * d + c] = GaussianRational::one();
                }
            }
        }
        Self { dim: d, table }
    }

    /// `A^k` with componentwise multiplication.
    pub fn power(a: &Self, k: usize) -> Self {
        let d = a.dim * k;
        let mut table = vec![GaussianRational::zero(); d * d * d];
        for block in 0..k {
            let off = block * a.dim;
            for x in 0..a.dim {
                for y in 0..a.dim {
                    for z in 0..a.dim {
                        table[((off + x) * d + off + y) * d + off + z] = a.constant(x, y, z).clone();
                    }
                }
            }
        }
        Self { dim: d, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, a: usize, b: usize, c: usize) -> &GaussianRational {
        &self.table[(a * self.dim + b) * self.dim + c]
    }

    pub fn basis(&self, a: usize) -> Vec<GaussianRational> {
        let mut v = vec![GaussianRational::zero(); self.dim];
        v[a] = GaussianRational::one();
        v
    }

    pub fn mul(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vec<GaussianRational> {
        let d = self.dim;
        let mut out = vec![GaussianRational::zero(); d];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let xy = xa * yb;
                for (c, slot) in out.iter_mut().enumerate() {
                    let t = self.constant(a, b, c);
                    if !t.is_zero() {
                        *slot += &(&xy * t);
                    }
                }
            }
        }
        out
    }
}

/// A presheaf of finite-dimensional algebras on a finite space: one algebra
/// per open set and a restriction matrix for every inclusion `V ⊆ U`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presheaf {
    topology: FiniteTopology,
    sections: Vec<TabAlgebra>,
    /// Keyed by `(index of U, index of V)` with `V ⊆ U`; size `dim V × dim U`.
    restrictions: BTreeMap<(usize, usize), QMatrix>,
}

impl Presheaf {
    /// Checks that every inclusion has a restriction matrix of the right
    /// shape. Functoriality and multiplicativity are left to
    /// [`verify_presheaf`].
    pub fn from_parts(
        topology: FiniteTopology,
        sections: Vec<TabAlgebra>,
        restrictions: BTreeMap<(OpenSet, OpenSet), QMatrix>,
    ) -> Result<Self> {
        let opens = topology.opens().to_vec();
        if sections.len() != opens.len() {
            return Err(Error::InvalidPresheaf(format!(
                "{} open sets but {} section algebras",
                opens.len(),
                sections.len()
            )));
        }
        let mut by_index = BTreeMap::new();
        for (&(u, v), m) in &restrictions {
            let (iu, iv) = (topology.require_open(u)?, topology.require_open(v)?);
            if v & !u != 0 {
                return Err(Error::InvalidPresheaf(format!("restriction from {} to {} is not an inclusion", fmt_set(u), fmt_set(v))));
            }
            if m.rows() != sections[iv].dim() || m.cols() != sections[iu].dim() {
                return Err(Error::InvalidPresheaf(format!(
                    "restriction from {} to {} should be {}x{}",
                    fmt_set(u),
                    fmt_set(v),
                    sections[iv].dim(),
                    sections[iu].dim()
                )));
            }
            by_index.insert((iu, iv), m.clone());
        }
        for (iu, &u) in opens.iter().enumerate() {
            for (iv, &v) in opens.iter().enumerate() {
                if v & !u == 0 && !by_index.contains_key(&(iu, iv)) {
                    return Err(Error::InvalidPresheaf(format!("missing restriction from {} to {}", fmt_set(u), fmt_set(v))));
                }
            }
        }
        Ok(Self { topology, sections, restrictions: by_index })
    }

    fn build(topology: FiniteTopology, sections: Vec<TabAlgebra>, rho: impl Fn(OpenSet, OpenSet) -> QMatrix) -> Self {
        let opens = topology.opens().to_vec();
        let mut restrictions = BTreeMap::new();
        for (iu, &u) in opens.iter().enumerate() {
            for (iv, &v) in opens.iter().enumerate() {
                if v & !u == 0 {
                    restrictions.insert((iu, iv), rho(u, v));
                }
            }
        }
        Self { topology, sections, restrictions }
    }

    /// `F(U) = A` for nonempty `U`, `F(∅) = 0`, identity restrictions.
    pub fn constant(topology: FiniteTopology, algebra: TabAlgebra) -> Self {
        let d = algebra.dim();
        let sections =
            topology.opens().iter().map(|&u| if u == 0 { TabAlgebra::zero() } else { algebra.clone() }).collect();
        Self::build(topology, sections, |u, v| match (u, v) {
            (0, _) => QMatrix::zeros(0, 0),
            (_, 0) => QMatrix::zeros(0, d),
            _ => QMatrix::identity(d),
        })
    }

    /// `F(U) = A^U`, functions from `U` to `A`, restricted by forgetting
    /// points.
    pub fn functions(topology: FiniteTopology, algebra: TabAlgebra) -> Self {
        let d = algebra.dim();
        let sections =
            topology.opens().iter().map(|&u| TabAlgebra::power(&algebra, u.count_ones() as usize)).collect();
        Self::build(topology, sections, |u, v| {
            let pu = members(u);
            let pv = members(v);
            QMatrix::from_fn(pv.len() * d, pu.len() * d, |r, c| {
                let (bv, xv) = (r / d, r % d);
                let (bu, xu) = (c / d, c % d);
                if pv[bv] == pu[bu] && xv == xu { GaussianRational::one() } else { GaussianRational::zero() }
            })
        })
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn algebra(&self, u: OpenSet) -> Result<&TabAlgebra> {
        Ok(&self.sections[self.topology.require_open(u)?])
    }

    /// `ρ_U^V` for `V ⊆ U`.
    pub fn restriction(&self, u: OpenSet, v: OpenSet) -> Result<&QMatrix> {
        let iu = self.topology.require_open(u)?;
        let iv = self.topology.require_open(v)?;
        self.restrictions
            .get(&(iu, iv))
            .ok_or_else(|| Error::NotASubset(fmt_set(v), fmt_set(u)))
    }

    pub fn restrict(&self, u: OpenSet, v: OpenSet, section: &[GaussianRational]) -> Result<Vec<GaussianRational>> {
        self.restriction(u, v)?.mul_vec(section)
    }

    fn restriction_by_index(&self, iu: usize, iv: usize) -> &QMatrix {
        &self.restrictions[&(iu, iv)]
    }

}

/// The first failure found by [`verify_presheaf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresheafViolation {
    NotIdentity { open: String },
    NotFunctorial { outer: String, middle: String, inner: String },
    NotMultiplicative { from: String, to: String },
}

impl fmt::Display for PresheafViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresheafViolation::NotIdentity { open } => write!(f, "restriction from {open} to itself is not the identity"),
            PresheafViolation::NotFunctorial { outer, middle, inner } => {
                write!(f, "restriction {outer} → {inner} differs from {outer} → {middle} → {inner}")
            }
            PresheafViolation::NotMultiplicative { from, to } => {
                write!(f, "restriction from {from} to {to} is not multiplicative")
            }
        }
    }
}

/// Identity, composition over every chain `U ⊆ V ⊆ W`, and multiplicativity
/// of every restriction on basis pairs.
pub fn verify_presheaf(f: &Presheaf) -> Result<(), PresheafViolation> {
    let opens = f.topology.opens();
    for (iu, &u) in opens.iter().enumerate() {
        if *f.restriction_by_index(iu, iu) != QMatrix::identity(f.sections[iu].dim()) {
            return Err(PresheafViolation::NotIdentity { open: fmt_set(u) });
        }
    }
    for (iw, &w) in opens.iter().enumerate() {
        for (iv, &v) in opens.iter().enumerate() {
            if v & !w != 0 {
                continue;
            }
            let wv = f.restriction_by_index(iw, iv);
            for (iu, &u) in opens.iter().enumerate() {
                if u & !v != 0 {
                    continue;
                }
                let composed = f.restriction_by_index(iv, iu).try_mul(wv).expect("shapes checked on construction");
                if composed != *f.restriction_by_index(iw, iu) {
                    return Err(PresheafViolation::NotFunctorial {
                        outer: fmt_set(w),
                        middle: fmt_set(v),
                        inner: fmt_set(u),
                    });
                }
            }
        }
    }
    for (&(iu, iv), rho) in &f.restrictions {
        let (au, av) = (&f.sections[iu], &f.sections[iv]);
        let images: Vec<Vec<GaussianRational>> = (0..au.dim()).map(|a| rho.column(a)).collect();
        for a in 0..au.dim() {
            for b in 0..au.dim() {
                let lhs = rho.mul_vec(&au.mul(&au.basis(a), &au.basis(b))).expect("shape");
                if lhs != av.mul(&images[a], &images[b]) {
                    return Err(PresheafViolation::NotMultiplicative { from: fmt_set(opens[iu]), to: fmt_set(opens[iv]) });
                }
            }
        }
    }
    Ok(())
}

/// The class of `(U, f)` at a point `p ∈ U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub point: usize,
    pub open: OpenSet,
    pub section: Vec<GaussianRational>,
}

pub fn germ(f: &Presheaf, p: usize, open: OpenSet, section: Vec<GaussianRational>) -> Result<Germ> {
    f.topology.require_point(p)?;
    if open >> p & 1 == 0 {
        return Err(Error::NotASubset(format!("{{{p}}}"), fmt_set(open)));
    }
    if section.len() != f.algebra(open)?.dim() {
        return Err(Error::DimensionMismatch(format!("section over {} has the wrong length", fmt_set(open))));
    }
    Ok(Germ { point: p, open, section })
}

/// `(U,f) ~ (V,g)` at `p`: some open `W ∋ p` inside `U ∩ V` where the
/// restrictions agree. Every such `W` is scanned.
pub fn germs_equal(f: &Presheaf, a: &Germ, b: &Germ) -> Result<bool> {
    if a.point != b.point {
        return Err(Error::InvalidPresheaf("germs at different points".into()));
    }
    let common = a.open & b.open;
    for w in f.topology.opens_within(common).filter(|&w| w >> a.point & 1 == 1) {
        if f.restrict(a.open, w, &a.section)? == f.restrict(b.open, w, &b.section)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `[f]_p·[g]_p = [f|_W · g|_W]_p` with `W = U ∩ V`.
pub fn germ_mul(f: &Presheaf, a: &Germ, b: &Germ) -> Result<Germ> {
    if a.point != b.point {
        return Err(Error::InvalidPresheaf("germs at different points".into()));
    }
    let w = a.open & b.open;
    let x = f.restrict(a.open, w, &a.section)?;
    let y = f.restrict(b.open, w, &b.section)?;
    Ok(Germ { point: a.point, open: w, section: f.algebra(w)?.mul(&x, &y) })
}

/// The stalk at `p`: the sections over the minimal neighbourhood `U_p`,
/// which every open containing `p` contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stalk {
    pub point: usize,
    pub neighbourhood: OpenSet,
    pub algebra: TabAlgebra,
}

impl Stalk {
    /// Coordinates of a germ in the stalk.
    pub fn class_of(&self, f: &Presheaf, g: &Germ) -> Result<Vec<GaussianRational>> {
        f.restrict(g.open, self.neighbourhood, &g.section)
    }
}

pub fn stalk(f: &Presheaf, p: usize) -> Result<Stalk> {
    let u = f.topology.minimal_neighbourhood(p)?;
    Ok(Stalk { point: p, neighbourhood: u, algebra: f.algebra(u)?.clone() })
}
