//! The presheaf `U ↦ 𝒜(U)` of matrix fields over open boxes, with
//! restriction by domain tag. Overlaps of nonempty open boxes are open, and
//! rational functions agreeing on an open set are equal, so compatibility is
//! exact equality.

use std::fmt;

use super::presheaf::PresheafViolation;
use crate::conv::MatrixField;
use crate::domain::OpenBox;
use crate::error::{Error, Result};
use crate::scalars::GaussianRational;

/// One piece of a glued section: the cover members of one overlap-connected
/// component and the common field on their union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedPiece {
    pub members: Vec<usize>,
    pub field: MatrixField,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoxGlue {
    Glued(Vec<GluedPiece>),
    Incompatible { first: usize, second: usize, overlap: OpenBox },
}

impl BoxGlue {
    /// The restriction of the glued section to cover member `k`.
    pub fn restrict_to(&self, cover: &[OpenBox], k: usize) -> Option<MatrixField> {
        match self {
            BoxGlue::Glued(pieces) => pieces
                .iter()
                .find(|p| p.members.contains(&k))
                .map(|p| p.field.clone().with_domain(cover[k].clone())),
            BoxGlue::Incompatible { .. } => None,
        }
    }
}

impl fmt::Display for BoxGlue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxGlue::Glued(pieces) => {
                for (k, p) in pieces.iter().enumerate() {
                    if k > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{} on members {:?}", p.field, p.members)?;
                }
                Ok(())
            }
            BoxGlue::Incompatible { first, second, overlap } => {
                write!(f, "members {first} and {second} disagree on {overlap}")
            }
        }
    }
}

fn untagged(a: &MatrixField) -> MatrixField {
    MatrixField::new(a.matrix().clone()).expect("square")
}

fn check_family(cover: &[OpenBox], family: &[MatrixField]) -> Result<()> {
    if cover.len() != family.len() {
        return Err(Error::DimensionMismatch(format!("{} boxes but {} sections", cover.len(), family.len())));
    }
    for (b, a) in cover.iter().zip(family) {
        if let Some(d) = a.domain() {
            if d != b {
                return Err(Error::DomainMismatch(d.to_string(), b.to_string()));
            }
        }
    }
    Ok(())
}

/// Glues sections given on a finite cover by open boxes. The union need not
/// be a box; the glued section is returned per overlap-connected component,
/// where it is unique.
pub fn glue_boxes(cover: &[OpenBox], family: &[MatrixField]) -> Result<BoxGlue> {
    check_family(cover, family)?;
    let n = cover.len();
    let mut component: Vec<usize> = (0..n).collect();
    fn root(c: &mut [usize], mut i: usize) -> usize {
        while c[i] != i {
            c[i] = c[c[i]];
            i = c[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Some(overlap) = cover[i].intersect(&cover[j]) {
                if untagged(&family[i]) != untagged(&family[j]) {
                    return Ok(BoxGlue::Incompatible { first: i, second: j, overlap });
                }
                let (ri, rj) = (root(&mut component, i), root(&mut component, j));
                component[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut pieces: Vec<GluedPiece> = Vec::new();
    for i in 0..n {
        let r = root(&mut component, i);
        match pieces.iter_mut().find(|p| p.members[0] == r) {
            Some(p) => p.members.push(i),
            None => pieces.push(GluedPiece { members: vec![i], field: untagged(&family[i]) }),
        }
    }
    Ok(BoxGlue::Glued(pieces))
}

/// Functoriality, identity and multiplicativity of restriction over every
/// chain of the given boxes, for every section and pair of sections.
pub fn verify_box_presheaf(boxes: &[OpenBox], sections: &[MatrixField]) -> Result<Result<(), PresheafViolation>> {
    for w in boxes {
        for a in sections {
            let on_w = untagged(a).with_domain(w.clone());
            if on_w.restrict(w)? != on_w {
                return Ok(Err(PresheafViolation::NotIdentity { open: w.to_string() }));
            }
            for v in boxes.iter().filter(|v| w.contains_box(v)) {
                let wv = on_w.restrict(v)?;
                for u in boxes.iter().filter(|u| v.contains_box(u)) {
                    if wv.restrict(u)? != on_w.restrict(u)? {
                        return Ok(Err(PresheafViolation::NotFunctorial {
                            outer: w.to_string(),
                            middle: v.to_string(),
                            inner: u.to_string(),
                        }));
                    }
                }
                for b in sections {
                    let b_w = untagged(b).with_domain(w.clone());
                    let lhs = on_w.convolve(&b_w)?.restrict(v)?;
                    if lhs != wv.convolve(&b_w.restrict(v)?)? {
                        return Ok(Err(PresheafViolation::NotMultiplicative {
                            from: w.to_string(),
                            to: v.to_string(),
                        }));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Germ equality at `p` for sections over boxes containing `p`: by the
/// identity theorem, agreement near `p` means equality as rational functions.
pub fn box_germs_equal(p: &[GaussianRational], a: (&OpenBox, &MatrixField), b: (&OpenBox, &MatrixField)) -> Result<bool> {
    for (u, _) in [a, b] {
        if !u.contains_point(p) {
            return Err(Error::NotASubset(
                format!("({})", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")),
                u.to_string(),
            ));
        }
    }
    Ok(untagged(a.1) == untagged(b.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_field;

    fn scalar(s: &str) -> MatrixField {
        MatrixField::scalar(2, parse_field(s).unwrap())
    }

    fn bx(lo: i64, hi: i64) -> OpenBox {
        OpenBox::from_ints(&[(lo, hi)]).unwrap()
    }

    #[test]
    fn equal_polynomials_glue() {
        let cover = [bx(0, 2), bx(1, 3)];
        let out = glue_boxes(&cover, &[scalar("x1^2"), scalar("x1^2")]).unwrap();
        assert_eq!(out, BoxGlue::Glued(vec![GluedPiece { members: vec![0, 1], field: scalar("x1^2") }]));
        assert_eq!(out.restrict_to(&cover, 1).unwrap(), scalar("x1^2").with_domain(bx(1, 3)));
    }

    #[test]
    fn disagreement_on_overlap() {
        let out = glue_boxes(&[bx(0, 2), bx(1, 3)], &[scalar("x1"), scalar("x1 + 1")]).unwrap();
        assert_eq!(out, BoxGlue::Incompatible { first: 0, second: 1, overlap: bx(1, 2) });
    }

    #[test]
    fn disjoint_members_glue_per_component() {
        let out = glue_boxes(&[bx(0, 1), bx(2, 3)], &[scalar("x1"), scalar("x1 + 1")]).unwrap();
        let BoxGlue::Glued(pieces) = out else { panic!("expected a glued section") };
        assert_eq!(pieces.len(), 2);
    }

    #[test]
    fn nested_boxes_form_a_presheaf() {
        let boxes = [bx(0, 4), bx(1, 3), bx(1, 2)];
        let sections = [scalar("x1"), MatrixField::matrix_unit(2, 0, 1), scalar("1/(x1 + 5)")];
        assert_eq!(verify_box_presheaf(&boxes, &sections).unwrap(), Ok(()));
    }

    #[test]
    fn germs_over_boxes() {
        let p = [GaussianRational::ratio(3, 2)];
        let (u, v) = (bx(0, 2), bx(1, 3));
        assert!(box_germs_equal(&p, (&u, &scalar("x1")), (&v, &scalar("x1"))).unwrap());
        assert!(!box_germs_equal(&p, (&u, &scalar("x1")), (&v, &scalar("x1^2"))).unwrap());
        assert!(box_germs_equal(&[GaussianRational::from_int(5)], (&u, &scalar("1")), (&v, &scalar("1"))).is_err());
    }
}
