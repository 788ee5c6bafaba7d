use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::presheaf::{stalk, Presheaf, TabAlgebra};
use super::topology::{fmt_set, members, OpenSet};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::scalars::GaussianRational;

type Section = Vec<GaussianRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlueOutcome {
    /// The unique section over the union restricting to the family.
    Glued(Section),
    /// Members `first` and `second` disagree on their overlap.
    Incompatible { first: usize, second: usize },
    /// The family is compatible but nothing over the union restricts to it.
    NoCandidate,
    /// Two distinct sections over the union restrict to the family.
    NotUnique { candidates: (Section, Section) },
}

impl fmt::Display for GlueOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &Section| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match self {
            GlueOutcome::Glued(s) => write!(f, "glued: ({})", show(s)),
            GlueOutcome::Incompatible { first, second } => {
                write!(f, "members {first} and {second} disagree on their overlap")
            }
            GlueOutcome::NoCandidate => write!(f, "compatible family with no global section"),
            GlueOutcome::NotUnique { candidates } => {
                write!(f, "two global sections: ({}) and ({})", show(&candidates.0), show(&candidates.1))
            }
        }
    }
}

/// The stacked restriction `F(U) → Π F(Uᵢ)`.
fn stacked_restriction(f: &Presheaf, u: OpenSet, cover: &[OpenSet]) -> Result<QMatrix> {
    let du = f.algebra(u)?.dim();
    let mut rows = Vec::new();
    for &c in cover {
        let r = f.restriction(u, c)?;
        for i in 0..r.rows() {
            rows.push(r.row(i).to_vec());
        }
    }
    Ok(if rows.is_empty() { QMatrix::zeros(0, du) } else { QMatrix::from_rows(rows)? })
}

fn union(cover: &[OpenSet]) -> OpenSet {
    cover.iter().fold(0, |a, &m| a | m)
}

pub fn glue(f: &Presheaf, cover: &[OpenSet], family: &[Section]) -> Result<GlueOutcome> {
    if cover.len() != family.len() {
        return Err(Error::DimensionMismatch(format!("{} cover members but {} sections", cover.len(), family.len())));
    }
    for (&c, s) in cover.iter().zip(family) {
        if s.len() != f.algebra(c)?.dim() {
            return Err(Error::DimensionMismatch(format!("section over {} has the wrong length", fmt_set(c))));
        }
    }
    let u = union(cover);
    f.topology().require_open(u)?;
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            let w = cover[i] & cover[j];
            if f.restrict(cover[i], w, &family[i])? != f.restrict(cover[j], w, &family[j])? {
                return Ok(GlueOutcome::Incompatible { first: i, second: j });
            }
        }
    }
    let system = stacked_restriction(f, u, cover)?;
    let rhs: Section = family.iter().flatten().cloned().collect();
    Ok(match system.solve_affine(&rhs)? {
        None => GlueOutcome::NoCandidate,
        Some((x, kernel)) if kernel.is_empty() => GlueOutcome::Glued(x),
        Some((x, kernel)) => {
            let y = x.iter().zip(&kernel[0]).map(|(a, b)| a + b).collect();
            GlueOutcome::NotUnique { candidates: (x, y) }
        }
    })
}

/// Compatible families on `cover`: a basis, as concatenated sections.
fn compatible_families(f: &Presheaf, cover: &[OpenSet]) -> Result<(usize, Vec<Section>)> {
    let dims: Vec<usize> = cover.iter().map(|&c| f.algebra(c).map(TabAlgebra::dim)).collect::<Result<_>>()?;
    let offsets: Vec<usize> = dims.iter().scan(0, |acc, d| Some(std::mem::replace(acc, *acc + d))).collect();
    let total: usize = dims.iter().sum();
    let mut rows = Vec::new();
    for i in 0..cover.len() {
        for j in i + 1..cover.len() {
            let w = cover[i] & cover[j];
            let ri = f.restriction(cover[i], w)?;
            let rj = f.restriction(cover[j], w)?;
            for r in 0..ri.rows() {
                let mut row = vec![GaussianRational::zero(); total];
                for c in 0..dims[i] {
                    row[offsets[i] + c] = ri[(r, c)].clone();
                }
                for c in 0..dims[j] {
                    row[offsets[j] + c] = -rj[(r, c)].clone();
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..total)
            .map(|k| {
                let mut v = vec![GaussianRational::zero(); total];
                v[k] = num_traits::One::one();
                v
            })
            .collect()
    } else {
        QMatrix::from_rows(rows)?.nullspace()
    };
    Ok((total, basis))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SheafFailure {
    /// A nonzero section restricting to zero on every member.
    NotUnique { section: Section },
    /// A compatible family that is not the restriction of any section.
    NotGluable { family: Vec<Section> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafViolation {
    pub open: OpenSet,
    pub cover: Vec<OpenSet>,
    pub failure: SheafFailure,
}

impl fmt::Display for SheafViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cover: Vec<String> = self.cover.iter().map(|&c| fmt_set(c)).collect();
        write!(f, "cover [{}] of {}: ", cover.join(", "), fmt_set(self.open))?;
        match &self.failure {
            SheafFailure::NotUnique { .. } => write!(f, "a nonzero section restricts to zero"),
            SheafFailure::NotGluable { .. } => write!(f, "a compatible family does not glue"),
        }
    }
}

fn split(f: &Presheaf, cover: &[OpenSet], flat: &[GaussianRational]) -> Vec<Section> {
    let mut out = Vec::new();
    let mut at = 0;
    for &c in cover {
        let d = f.algebra(c).expect("cover member is open").dim();
        out.push(flat[at..at + d].to_vec());
        at += d;
    }
    out
}

/// Checks the gluing axiom for one cover by dimension count: the restriction
/// `F(U) → {compatible families}` must be injective and onto.
pub fn check_cover(f: &Presheaf, u: OpenSet, cover: &[OpenSet]) -> Result<Option<SheafViolation>> {
    let violation = |failure| Some(SheafViolation { open: u, cover: cover.to_vec(), failure });
    let system = stacked_restriction(f, u, cover)?;
    if let Some(k) = system.nullspace().into_iter().next() {
        return Ok(violation(SheafFailure::NotUnique { section: k }));
    }
    let (_, families) = compatible_families(f, cover)?;
    if families.len() == system.cols() {
        return Ok(None);
    }
    // Some basis family lies outside the image.
    for fam in families {
        if system.solve_affine(&fam)?.is_none() {
            return Ok(violation(SheafFailure::NotGluable { family: split(f, cover, &fam) }));
        }
    }
    unreachable!("image is a proper subspace of the compatible families")
}

/// Every antichain cover of every open set.
pub fn is_sheaf(f: &Presheaf) -> Result<Result<(), SheafViolation>> {
    for &u in f.topology().opens() {
        for cover in f.topology().antichain_covers(u) {
            if let Some(v) = check_cover(f, u, &cover)? {
                return Ok(Err(v));
            }
        }
    }
    Ok(Ok(()))
}

/// The sheafification together with the canonical maps `F(U) → F⁺(U)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sheafification {
    pub sheaf: Presheaf,
    /// Keyed by open set; columns are images of the basis of `F(U)`.
    pub canonical: BTreeMap<OpenSet, QMatrix>,
}

impl Sheafification {
    /// Whether every canonical map is bijective.
    pub fn is_isomorphism(&self) -> bool {
        self.canonical.values().all(|m| m.is_square() && m.rank() == m.rows())
    }
}

/// Coordinates of `v` in the column basis `b` (full column rank).
fn coordinates(b: &QMatrix, v: &[GaussianRational]) -> Section {
    let (x, kernel) = b.solve_affine(v).expect("shapes").expect("vector lies in the span");
    debug_assert!(kernel.is_empty());
    x
}

/// `F⁺(U)`: families of germs `(s_p)_{p∈U}` that locally come from a section.
/// Around `p` the smallest candidate neighbourhood is `U_p`, and agreement
/// there means `s_q = ρ(s_p)` for every `q ∈ U_p`.
pub fn sheafify(f: &Presheaf) -> Result<Sheafification> {
    let top = f.topology().clone();
    let n = top.points();
    let stalks = (0..n).map(|p| stalk(f, p)).collect::<Result<Vec<_>>>()?;
    let mut bases: Vec<QMatrix> = Vec::new();
    let mut layouts: Vec<BTreeMap<usize, usize>> = Vec::new();
    for &u in top.opens() {
        let pts = members(u);
        let mut layout = BTreeMap::new();
        let mut total = 0;
        for &p in &pts {
            layout.insert(p, total);
            total += stalks[p].algebra.dim();
        }
        let mut rows = Vec::new();
        for &p in &pts {
            let up = stalks[p].neighbourhood;
            for q in members(up) {
                if q == p {
                    continue;
                }
                let uq = stalks[q].neighbourhood;
                let rho = f.restriction(up, uq)?;
                for r in 0..rho.rows() {
                    let mut row = vec![GaussianRational::zero(); total];
                    row[layout[&q] + r] = num_traits::One::one();
                    for c in 0..rho.cols() {
                        row[layout[&p] + c] = &row[layout[&p] + c] - &rho[(r, c)];
                    }
                    rows.push(row);
                }
            }
        }
        let basis_vectors = if rows.is_empty() {
            (0..total)
                .map(|k| {
                    let mut v = vec![GaussianRational::zero(); total];
                    v[k] = num_traits::One::one();
                    v
                })
                .collect()
        } else {
            QMatrix::from_rows(rows)?.nullspace()
        };
        let k = basis_vectors.len();
        bases.push(QMatrix::from_fn(total, k, |i, j| basis_vectors[j][i].clone()));
        layouts.push(layout);
    }

    let opens = top.opens().to_vec();
    let mut algebras = Vec::new();
    for (iu, &u) in opens.iter().enumerate() {
        let b = &bases[iu];
        let k = b.cols();
        let mut table = vec![GaussianRational::zero(); k * k * k];
        for x in 0..k {
            let bx = b.column(x);
            for y in 0..k {
                let by = b.column(y);
                let mut prod = vec![GaussianRational::zero(); b.rows()];
                for p in members(u) {
                    let a = &stalks[p].algebra;
                    let off = layouts[iu][&p];
                    let z = a.mul(&bx[off..off + a.dim()], &by[off..off + a.dim()]);
                    prod[off..off + a.dim()].clone_from_slice(&z);
                }
                for (c, v) in coordinates(b, &prod).into_iter().enumerate() {
                    table[(x * k + y) * k + c] = v;
                }
            }
        }
        algebras.push(TabAlgebra::new(k, table)?);
    }

    let mut restrictions = BTreeMap::new();
    for (iu, &u) in opens.iter().enumerate() {
        for (iv, &v) in opens.iter().enumerate() {
            if v & !u != 0 {
                continue;
            }
            let (bu, bv) = (&bases[iu], &bases[iv]);
            let cols: Vec<Section> = (0..bu.cols())
                .map(|x| {
                    let col = bu.column(x);
                    let mut proj = Vec::with_capacity(bv.rows());
                    for p in members(v) {
                        let off = layouts[iu][&p];
                        proj.extend_from_slice(&col[off..off + stalks[p].algebra.dim()]);
                    }
                    coordinates(bv, &proj)
                })
                .collect();
            restrictions.insert((u, v), QMatrix::from_fn(bv.cols(), bu.cols(), |i, j| cols[j][i].clone()));
        }
    }

    let mut canonical = BTreeMap::new();
    for (iu, &u) in opens.iter().enumerate() {
        let du = f.algebra(u)?.dim();
        let b = &bases[iu];
        let mut cols = Vec::with_capacity(du);
        for a in 0..du {
            let e = f.algebra(u)?.basis(a);
            let mut germs = Vec::with_capacity(b.rows());
            for p in members(u) {
                germs.extend(f.restrict(u, stalks[p].neighbourhood, &e)?);
            }
            cols.push(coordinates(b, &germs));
        }
        canonical.insert(u, QMatrix::from_fn(b.cols(), du, |i, j| cols[j][i].clone()));
    }

    let sheaf = Presheaf::from_parts(top, algebras, restrictions)?;
    Ok(Sheafification { sheaf, canonical })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheaf::presheaf::verify_presheaf;
    use crate::sheaf::topology::FiniteTopology;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn constant_presheaf_is_not_a_sheaf() {
        let f = Presheaf::constant(FiniteTopology::discrete(2), TabAlgebra::scalars());
        assert_eq!(glue(&f, &[0b01, 0b10], &[vec![q(1)], vec![q(2)]]).unwrap(), GlueOutcome::NoCandidate);
        assert_eq!(glue(&f, &[0b01, 0b10], &[vec![q(3)], vec![q(3)]]).unwrap(), GlueOutcome::Glued(vec![q(3)]));
        let v = is_sheaf(&f).unwrap().unwrap_err();
        assert_eq!(v.open, 0b11);
        assert!(matches!(v.failure, SheafFailure::NotGluable { .. }));
    }

    #[test]
    fn sheafification_of_constant_presheaf() {
        let f = Presheaf::constant(FiniteTopology::discrete(2), TabAlgebra::scalars());
        let s = sheafify(&f).unwrap();
        assert_eq!(s.sheaf.algebra(0b11).unwrap().dim(), 2);
        assert_eq!(verify_presheaf(&s.sheaf), Ok(()));
        assert_eq!(is_sheaf(&s.sheaf).unwrap(), Ok(()));
        assert!(!s.is_isomorphism());
    }

    #[test]
    fn function_presheaf_is_a_sheaf() {
        for t in FiniteTopology::enumerate(3) {
            let f = Presheaf::functions(t, TabAlgebra::scalars());
            assert_eq!(is_sheaf(&f).unwrap(), Ok(()));
            assert!(sheafify(&f).unwrap().is_isomorphism());
        }
    }

    #[test]
    fn incompatible_family() {
        let f = Presheaf::functions(FiniteTopology::discrete(3), TabAlgebra::scalars());
        let out = glue(&f, &[0b011, 0b110], &[vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        assert_eq!(out, GlueOutcome::Incompatible { first: 0, second: 1 });
        assert!(matches!(glue(&f, &[0b1000], &[vec![]]), Err(Error::CoverNotInTopology(_))));
    }
}
