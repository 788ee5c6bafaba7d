//! Derivations of `𝒜(U)`, the block metric `𝒢 = ḡ ⊕ k̄`, the Koszul
//! preconnection, connections, curvature, Ricci and scalar curvature.
//!
//! Three sectors: horizontal (lifted base vector fields), vertical (the Lie
//! algebra of the fibre group, tracked abstractly), inner (`ad(a)`).

use std::fmt;

use num_traits::{One, Zero};

use crate::conv::MatrixField;
use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, LieVector};
use crate::linalg::Matrix;
use crate::scalars::{BaseDerivation, GaussianRational, RationalField};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Sector {
    Horizontal,
    Vertical,
    Inner,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Horizontal => "horizontal",
            Sector::Vertical => "vertical",
            Sector::Inner => "inner",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Derivation {
    Horizontal(BaseDerivation),
    Vertical(LieVector),
    Inner(MatrixField),
}

impl Derivation {
    pub fn sector(&self) -> Sector {
        match self {
            Derivation::Horizontal(_) => Sector::Horizontal,
            Derivation::Vertical(_) => Sector::Vertical,
            Derivation::Inner(_) => Sector::Inner,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Derivation::Horizontal(x) => x.is_zero(),
            Derivation::Vertical(v) => v.is_zero(),
            Derivation::Inner(a) => a.is_zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Derivation::Horizontal(x), Derivation::Horizontal(y)) => Ok(Derivation::Horizontal(x.add(y))),
            (Derivation::Vertical(u), Derivation::Vertical(v)) => Ok(Derivation::Vertical(u.add(v))),
            (Derivation::Inner(a), Derivation::Inner(b)) => Ok(Derivation::Inner(a.add(b)?)),
            _ => Err(mixed(self, other)),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-GaussianRational::one()))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        match self {
            Derivation::Horizontal(x) => Derivation::Horizontal(x.scale(&RationalField::constant(c.clone()))),
            Derivation::Vertical(v) => Derivation::Vertical(v.scale(c)),
            Derivation::Inner(a) => Derivation::Inner(a.scale(&RationalField::constant(c.clone()))),
        }
    }

    /// The action on base functions. Vertical fields kill `Z`.
    pub fn apply_to_function(&self, f: &RationalField) -> Result<RationalField> {
        match self {
            Derivation::Horizontal(x) => Ok(x.apply(f)),
            Derivation::Vertical(_) => Ok(RationalField::zero()),
            Derivation::Inner(_) => Err(Error::SectorMismatch("inner derivations kill the centre".into())),
        }
    }

    /// Coefficients in the sector basis (coordinate fields or `e_k`).
    pub fn components(&self) -> Result<Vec<RationalField>> {
        match self {
            Derivation::Horizontal(x) => Ok(x.coefficients().to_vec()),
            Derivation::Vertical(v) => Ok(v.0.iter().cloned().map(RationalField::constant).collect()),
            Derivation::Inner(_) => Err(Error::SectorMismatch("inner derivations have no finite basis".into())),
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Derivation::Horizontal(x) => write!(f, "{x}"),
            Derivation::Vertical(v) => write!(f, "{v}"),
            Derivation::Inner(a) => write!(f, "ad({a})"),
        }
    }
}

fn mixed(u: &Derivation, v: &Derivation) -> Error {
    Error::MixedSectors(format!("{} and {}", u.sector(), v.sector()))
}

/// `D(a)`: entrywise differentiation for horizontal fields, `[b, a]` for
/// `ad(b)`.
pub fn apply_derivation(d: &Derivation, a: &MatrixField) -> Result<MatrixField> {
    match d {
        Derivation::Horizontal(x) => Ok(a.apply_base(x)),
        Derivation::Vertical(_) => Err(Error::UnsupportedAction(
            "vertical derivations act on the vertical module, not on matrix fields".into(),
        )),
        Derivation::Inner(b) => b.commutator(a),
    }
}

/// The commutator of two derivations of the same sector. `[ad a, ad b] = ad [a, b]`.
pub fn bracket(u: &Derivation, v: &Derivation, lie: Option<&LieAlgebra>) -> Result<Derivation> {
    match (u, v) {
        (Derivation::Horizontal(x), Derivation::Horizontal(y)) => Ok(Derivation::Horizontal(x.bracket(y))),
        (Derivation::Vertical(a), Derivation::Vertical(b)) => {
            let lie = lie.ok_or_else(|| Error::UnsupportedAction("vertical bracket needs a Lie algebra".into()))?;
            check_lie_dim(lie, a)?;
            check_lie_dim(lie, b)?;
            Ok(Derivation::Vertical(lie.bracket(a, b)))
        }
        (Derivation::Inner(a), Derivation::Inner(b)) => Ok(Derivation::Inner(a.commutator(b)?)),
        _ => Err(mixed(u, v)),
    }
}

fn check_lie_dim(lie: &LieAlgebra, v: &LieVector) -> Result<()> {
    if v.dim() != lie.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in the {}-dimensional algebra {}",
            v.dim(),
            lie.dim(),
            lie.name()
        )));
    }
    Ok(())
}

/// `𝒢 = ḡ ⊕ k̄`: the base metric on horizontal fields and the Killing form of
/// the fibre Lie algebra on vertical ones. Cross terms vanish.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockMetric {
    base: Matrix<RationalField>,
    lie: Option<LieAlgebra>,
    killing: Matrix<RationalField>,
}

impl BlockMetric {
    pub fn new(base: Matrix<RationalField>, lie: Option<LieAlgebra>) -> Result<Self> {
        if !base.is_square() {
            return Err(Error::InvalidMetric(format!("base metric is {}x{}", base.rows(), base.cols())));
        }
        if !base.is_symmetric() {
            return Err(Error::InvalidMetric("base metric is not symmetric".into()));
        }
        if base.rows() > 0 && base.determinant()?.is_zero() {
            return Err(Error::DegenerateMetric);
        }
        let killing = match &lie {
            Some(l) => l.killing_form().matrix.map(|c| RationalField::constant(c.clone())),
            None => Matrix::zeros(0, 0),
        };
        Ok(Self { base, lie, killing })
    }

    /// Diagonal base metric and no fibre algebra.
    pub fn diagonal(entries: Vec<RationalField>) -> Result<Self> {
        let m = entries.len();
        Self::new(
            Matrix::from_fn(m, m, |i, j| if i == j { entries[i].clone() } else { RationalField::zero() }),
            None,
        )
    }

    pub fn vertical(lie: LieAlgebra) -> Self {
        Self::new(Matrix::zeros(0, 0), Some(lie)).expect("empty base metric is valid")
    }

    pub fn with_lie(self, lie: LieAlgebra) -> Result<Self> {
        Self::new(self.base, Some(lie))
    }

    pub fn base(&self) -> &Matrix<RationalField> {
        &self.base
    }

    pub fn lie(&self) -> Option<&LieAlgebra> {
        self.lie.as_ref()
    }

    pub fn killing(&self) -> &Matrix<RationalField> {
        &self.killing
    }

    pub fn base_dim(&self) -> usize {
        self.base.rows()
    }

    /// The Gram matrix of the sector basis.
    pub fn sector_matrix(&self, sector: Sector) -> Result<&Matrix<RationalField>> {
        match sector {
            Sector::Horizontal => Ok(&self.base),
            Sector::Vertical if self.lie.is_some() => Ok(&self.killing),
            Sector::Vertical => Err(Error::SectorMismatch("metric has no vertical part".into())),
            Sector::Inner => Err(Error::SectorMismatch("no metric on inner derivations".into())),
        }
    }

    /// Coordinate fields `∂ᵢ` or Lie basis vectors `e_k`.
    pub fn sector_basis(&self, sector: Sector) -> Result<Vec<Derivation>> {
        match sector {
            Sector::Horizontal => {
                let m = self.base_dim();
                Ok((0..m).map(|i| Derivation::Horizontal(BaseDerivation::coordinate(m, i))).collect())
            }
            Sector::Vertical => {
                let lie = self.lie.as_ref().ok_or_else(|| Error::SectorMismatch("metric has no vertical part".into()))?;
                Ok(lie.basis().into_iter().map(Derivation::Vertical).collect())
            }
            Sector::Inner => Err(Error::SectorMismatch("inner derivations have no finite basis".into())),
        }
    }

    fn checked_components(&self, u: &Derivation) -> Result<Vec<RationalField>> {
        let c = u.components()?;
        let want = self.sector_matrix(u.sector())?.rows();
        if c.len() > want || (u.sector() == Sector::Vertical && c.len() != want) {
            return Err(Error::DimensionMismatch(format!(
                "{} derivation with {} components against a metric of size {want}",
                u.sector(),
                c.len()
            )));
        }
        let mut c = c;
        c.resize(want, RationalField::zero());
        Ok(c)
    }

    /// `𝒢(u, v)`; zero across sectors.
    pub fn value(&self, u: &Derivation, v: &Derivation) -> Result<RationalField> {
        if u.sector() != v.sector() {
            if u.sector() == Sector::Inner || v.sector() == Sector::Inner {
                return Err(Error::SectorMismatch("no metric on inner derivations".into()));
            }
            return Ok(RationalField::zero());
        }
        let g = self.sector_matrix(u.sector())?;
        let a = self.checked_components(u)?;
        let b = self.checked_components(v)?;
        let mut acc = RationalField::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() && !g[(i, j)].is_zero() {
                    acc = acc + &(ai * &g[(i, j)]) * bj;
                }
            }
        }
        Ok(acc)
    }

    fn bracket(&self, u: &Derivation, v: &Derivation) -> Result<Derivation> {
        bracket(u, v, self.lie.as_ref())
    }
}

/// The six-term Koszul expression, with `½` on the whole sum:
/// `½[u𝒢(v,w) + v𝒢(u,w) − w𝒢(u,v) + 𝒢(w,[u,v]) + 𝒢(v,[w,u]) − 𝒢(u,[v,w])]`.
pub fn koszul(g: &BlockMetric, u: &Derivation, v: &Derivation, w: &Derivation) -> Result<RationalField> {
    if u.sector() != v.sector() || v.sector() != w.sector() {
        return Err(Error::MixedSectors(format!("{}, {}, {}", u.sector(), v.sector(), w.sector())));
    }
    if u.sector() == Sector::Inner {
        return Err(Error::SectorMismatch("no metric on inner derivations".into()));
    }
    let sum = u.apply_to_function(&g.value(v, w)?)? + v.apply_to_function(&g.value(u, w)?)?
        - w.apply_to_function(&g.value(u, v)?)?
        + g.value(w, &g.bracket(u, v)?)?
        + g.value(v, &g.bracket(w, u)?)?
        - g.value(u, &g.bracket(v, w)?)?;
    Ok(sum.scale(&GaussianRational::ratio(1, 2)))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Connection {
    /// `Γ^k_{ij}` stored at `(k·m + i)·m + j`.
    LeviCivita { dim: usize, christoffel: Vec<RationalField> },
    /// `∇_u v = ½[u, v]` on the vertical module.
    VerticalHalfBracket(LieAlgebra),
    /// `∇_a b = ½[a, b]` on inner derivations.
    InnerHalfBracket,
}

impl Connection {
    /// `Γ^k_{ij} = Σ_l g^{kl} koszul(∂ᵢ, ∂ⱼ, ∂_l)`.
    pub fn levi_civita(g: &BlockMetric) -> Result<Self> {
        let m = g.base_dim();
        let inv = g.base.inverse().map_err(|_| Error::DegenerateMetric)?;
        let basis = g.sector_basis(Sector::Horizontal)?;
        let mut k_table = vec![RationalField::zero(); m * m * m];
        for i in 0..m {
            for j in i..m {
                for l in 0..m {
                    let val = koszul(g, &basis[i], &basis[j], &basis[l])?;
                    k_table[(i * m + j) * m + l] = val.clone();
                    k_table[(j * m + i) * m + l] = val;
                }
            }
        }
        let mut christoffel = vec![RationalField::zero(); m * m * m];
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let mut acc = RationalField::zero();
                    for l in 0..m {
                        let c = &k_table[(i * m + j) * m + l];
                        if !c.is_zero() && !inv[(k, l)].is_zero() {
                            acc = acc + &inv[(k, l)] * c;
                        }
                    }
                    christoffel[(k * m + i) * m + j] = acc;
                }
            }
        }
        Ok(Connection::LeviCivita { dim: m, christoffel })
    }

    /// The connection used for a sector of `g`.
    pub fn for_sector(g: &BlockMetric, sector: Sector) -> Result<Self> {
        match sector {
            Sector::Horizontal => Self::levi_civita(g),
            Sector::Vertical => g
                .lie
                .clone()
                .map(Connection::VerticalHalfBracket)
                .ok_or_else(|| Error::SectorMismatch("metric has no vertical part".into())),
            Sector::Inner => Ok(Connection::InnerHalfBracket),
        }
    }

    pub fn sector(&self) -> Sector {
        match self {
            Connection::LeviCivita { .. } => Sector::Horizontal,
            Connection::VerticalHalfBracket(_) => Sector::Vertical,
            Connection::InnerHalfBracket => Sector::Inner,
        }
    }

    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> Option<&RationalField> {
        match self {
            Connection::LeviCivita { dim, christoffel } => christoffel.get((k * dim + i) * dim + j),
            _ => None,
        }
    }

    fn lie(&self) -> Option<&LieAlgebra> {
        match self {
            Connection::VerticalHalfBracket(l) => Some(l),
            _ => None,
        }
    }

    fn check(&self, d: &Derivation) -> Result<()> {
        if d.sector() != self.sector() {
            return Err(Error::SectorMismatch(format!(
                "{} derivation given to a {} connection",
                d.sector(),
                self.sector()
            )));
        }
        Ok(())
    }

    pub fn bracket(&self, u: &Derivation, v: &Derivation) -> Result<Derivation> {
        self.check(u)?;
        self.check(v)?;
        bracket(u, v, self.lie())
    }
}

/// `∇_u v`.
pub fn connection_apply(conn: &Connection, u: &Derivation, v: &Derivation) -> Result<Derivation> {
    conn.check(u)?;
    conn.check(v)?;
    match (conn, u, v) {
        (Connection::LeviCivita { dim, christoffel }, Derivation::Horizontal(x), Derivation::Horizontal(y)) => {
            let m = *dim;
            if x.dim() > m || y.dim() > m {
                return Err(Error::DimensionMismatch(format!("vector field in more than {m} variables")));
            }
            let comp = |d: &BaseDerivation, i: usize| {
                if i < d.dim() { d.component(i).clone() } else { RationalField::zero() }
            };
            let out = (0..m)
                .map(|k| {
                    let mut acc = x.apply(&comp(y, k));
                    for i in 0..m {
                        let xi = comp(x, i);
                        if xi.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let c = &christoffel[(k * m + i) * m + j];
                            let yj = comp(y, j);
                            if !c.is_zero() && !yj.is_zero() {
                                acc = acc + &(&xi * &yj) * c;
                            }
                        }
                    }
                    acc
                })
                .collect();
            Ok(Derivation::Horizontal(BaseDerivation::new(out)))
        }
        _ => Ok(conn.bracket(u, v)?.scale(&GaussianRational::ratio(1, 2))),
    }
}

/// `R(u,v)w = ∇_u∇_v w − ∇_v∇_u w − ∇_{[u,v]}w`.
pub fn curvature(conn: &Connection, u: &Derivation, v: &Derivation, w: &Derivation) -> Result<Derivation> {
    let uvw = connection_apply(conn, u, &connection_apply(conn, v, w)?)?;
    let vuw = connection_apply(conn, v, &connection_apply(conn, u, w)?)?;
    let br = connection_apply(conn, &conn.bracket(u, v)?, w)?;
    uvw.sub(&vuw)?.sub(&br)
}

/// `−¼[[u,v],w]`, the closed form of the curvature of a half-bracket
/// connection.
pub fn half_bracket_curvature(conn: &Connection, u: &Derivation, v: &Derivation, w: &Derivation) -> Result<Derivation> {
    if conn.sector() == Sector::Horizontal {
        return Err(Error::SectorMismatch("closed form holds for half-bracket connections only".into()));
    }
    Ok(conn.bracket(&conn.bracket(u, v)?, w)?.scale(&GaussianRational::ratio(-1, 4)))
}

/// `∇_u v − ∇_v u − [u, v]`.
pub fn torsion(conn: &Connection, u: &Derivation, v: &Derivation) -> Result<Derivation> {
    connection_apply(conn, u, v)?.sub(&connection_apply(conn, v, u)?)?.sub(&conn.bracket(u, v)?)
}

/// `u𝒢(v,w) − 𝒢(∇_u v, w) − 𝒢(v, ∇_u w)`.
pub fn metric_defect(
    g: &BlockMetric,
    conn: &Connection,
    u: &Derivation,
    v: &Derivation,
    w: &Derivation,
) -> Result<RationalField> {
    Ok(u.apply_to_function(&g.value(v, w)?)?
        - g.value(&connection_apply(conn, u, v)?, w)?
        - g.value(v, &connection_apply(conn, u, w)?)?)
}

/// Trace of the curvature endomorphism over the sector basis.
///
/// On the vertical module the trace runs over the middle slot,
/// `ric(u,w) = Tr(v ↦ R(u,v)w)`, giving `ric = ¼k̄`. On the base the trace
/// runs over the first slot, `Ric(u,w) = Tr(v ↦ R(v,u)w)`, the classical
/// contraction under which the hyperbolic plane has scalar curvature −2.
pub fn ricci(g: &BlockMetric, sector: Sector, u: &Derivation, w: &Derivation) -> Result<RationalField> {
    let conn = Connection::for_sector(g, sector)?;
    ricci_with(g, &conn, u, w)
}

fn ricci_with(g: &BlockMetric, conn: &Connection, u: &Derivation, w: &Derivation) -> Result<RationalField> {
    let sector = conn.sector();
    let basis = g.sector_basis(sector)?;
    let mut acc = RationalField::zero();
    for (k, e) in basis.iter().enumerate() {
        let r = match sector {
            Sector::Vertical => curvature(conn, u, e, w)?,
            _ => curvature(conn, e, u, w)?,
        };
        let c = r.components()?;
        if let Some(ck) = c.get(k) {
            acc = acc + ck;
        }
    }
    Ok(acc)
}

/// `ric(eᵢ, eⱼ)` over the sector basis.
pub fn ricci_matrix(g: &BlockMetric, sector: Sector) -> Result<Matrix<RationalField>> {
    let conn = Connection::for_sector(g, sector)?;
    let basis = g.sector_basis(sector)?;
    let n = basis.len();
    let mut entries = Vec::with_capacity(n * n);
    for u in &basis {
        for w in &basis {
            entries.push(ricci_with(g, &conn, u, w)?);
        }
    }
    Matrix::from_vec(n, n, entries)
}

/// The matrix of `ℛ` with `𝒢(ℛ(u), w) = ric(u, w)`; column `i` holds `ℛ(eᵢ)`.
pub fn adjoint_ricci(g: &BlockMetric, sector: Sector) -> Result<Matrix<RationalField>> {
    let ric = ricci_matrix(g, sector)?;
    let gram = g.sector_matrix(sector)?;
    gram.solve(&ric.transpose()).map_err(|e| match e {
        Error::Singular => Error::DegenerateMetric,
        other => other,
    })
}

/// `r = Tr ℛ`.
pub fn scalar_curvature(g: &BlockMetric, sector: Sector) -> Result<RationalField> {
    Ok(adjoint_ricci(g, sector)?.trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_field;

    fn f(s: &str) -> RationalField {
        parse_field(s).unwrap()
    }

    fn mf(n: usize, e: &[&str]) -> MatrixField {
        MatrixField::from_entries(n, e.iter().map(|s| f(s)).collect()).unwrap()
    }

    fn d(m: usize, i: usize) -> Derivation {
        Derivation::Horizontal(BaseDerivation::coordinate(m, i))
    }

    fn e(l: &LieAlgebra, i: usize) -> Derivation {
        Derivation::Vertical(l.e(i))
    }

    fn polar() -> BlockMetric {
        BlockMetric::diagonal(vec![f("1"), f("x1^2")]).unwrap()
    }

    #[test]
    fn horizontal_action() {
        let a = mf(2, &["x1", "x1^2", "0", "1"]);
        assert_eq!(apply_derivation(&d(1, 0), &a).unwrap(), mf(2, &["1", "2*x1", "0", "0"]));
        let s = MatrixField::scalar(2, f("x1^3"));
        assert_eq!(apply_derivation(&d(1, 0), &s).unwrap(), MatrixField::scalar(2, f("3*x1^2")));
    }

    #[test]
    fn inner_and_vertical_action() {
        let a = mf(2, &["x1", "1", "x2", "0"]);
        assert!(apply_derivation(&Derivation::Inner(a.clone()), &a).unwrap().is_zero());
        let v = Derivation::Vertical(LieAlgebra::su2().e(0));
        assert!(matches!(apply_derivation(&v, &a), Err(Error::UnsupportedAction(_))));
    }

    #[test]
    fn koszul_examples() {
        let su2 = LieAlgebra::su2();
        let g = BlockMetric::vertical(su2.clone());
        let k = koszul(&g, &e(&su2, 0), &e(&su2, 1), &e(&su2, 2)).unwrap();
        assert_eq!(k, f("-1"));
        assert_eq!(koszul(&polar(), &d(2, 1), &d(2, 1), &d(2, 0)).unwrap(), f("-x1"));
        let flat = BlockMetric::diagonal(vec![f("1"), f("1")]).unwrap();
        assert!(koszul(&flat, &d(2, 0), &d(2, 1), &d(2, 1)).unwrap().is_zero());
        assert!(matches!(koszul(&g, &e(&su2, 0), &d(2, 0), &e(&su2, 0)), Err(Error::MixedSectors(_))));
    }

    #[test]
    fn connection_examples() {
        let su2 = LieAlgebra::su2();
        let conn = Connection::VerticalHalfBracket(su2.clone());
        let got = connection_apply(&conn, &e(&su2, 0), &e(&su2, 1)).unwrap();
        assert_eq!(got, Derivation::Vertical(su2.e(2).scale(&GaussianRational::ratio(1, 2))));
        let lc = Connection::levi_civita(&polar()).unwrap();
        let got = connection_apply(&lc, &d(2, 1), &d(2, 1)).unwrap();
        assert_eq!(got, Derivation::Horizontal(BaseDerivation::new(vec![f("-x1"), f("0")])));
        assert_eq!(lc.christoffel(1, 0, 1), Some(&f("1/x1")));
        let a = Derivation::Inner(mf(2, &["x1", "1", "0", "2"]));
        assert!(connection_apply(&Connection::InnerHalfBracket, &a, &a).unwrap().is_zero());
        assert!(matches!(connection_apply(&conn, &d(2, 0), &d(2, 0)), Err(Error::SectorMismatch(_))));
    }

    #[test]
    fn vertical_curvature() {
        let su2 = LieAlgebra::su2();
        let conn = Connection::VerticalHalfBracket(su2.clone());
        let r = curvature(&conn, &e(&su2, 0), &e(&su2, 1), &e(&su2, 0)).unwrap();
        assert_eq!(r, Derivation::Vertical(su2.e(1).scale(&GaussianRational::ratio(-1, 4))));
        assert!(curvature(&conn, &e(&su2, 2), &e(&su2, 2), &e(&su2, 0)).unwrap().is_zero());
    }

    #[test]
    fn su2_ricci_and_scalar() {
        let g = BlockMetric::vertical(LieAlgebra::su2());
        let ric = ricci_matrix(&g, Sector::Vertical).unwrap();
        assert_eq!(ric, Matrix::identity(3).scale(&f("-1/2")));
        assert_eq!(adjoint_ricci(&g, Sector::Vertical).unwrap(), Matrix::identity(3).scale(&f("1/4")));
        assert_eq!(scalar_curvature(&g, Sector::Vertical).unwrap(), f("3/4"));
    }

    #[test]
    fn flat_and_degenerate() {
        let flat = BlockMetric::diagonal(vec![f("1"), f("1")]).unwrap();
        assert!(scalar_curvature(&flat, Sector::Horizontal).unwrap().is_zero());
        let abelian = BlockMetric::vertical(LieAlgebra::abelian(2));
        assert_eq!(scalar_curvature(&abelian, Sector::Vertical), Err(Error::DegenerateMetric));
        assert_eq!(BlockMetric::diagonal(vec![f("1"), f("0")]), Err(Error::DegenerateMetric));
    }

    #[test]
    fn hyperbolic_scalar() {
        let g = BlockMetric::diagonal(vec![f("1/x2^2"), f("1/x2^2")]).unwrap();
        assert_eq!(scalar_curvature(&g, Sector::Horizontal).unwrap(), f("-2"));
    }
}
