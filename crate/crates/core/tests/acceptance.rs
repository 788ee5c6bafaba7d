//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its runtime against the allowed budget; the process exits nonzero if
//! any criterion fails.

use std::time::{Duration, Instant};

use ncg_core::conv::{center_basis, center_witness, kernel_commutant_dimension, FinSuppKernel, MatrixField, SimpleTensor};
use ncg_core::domain::OpenBox;
use ncg_core::geometry::{
    connection_apply, curvature, half_bracket_curvature, koszul, metric_defect, ricci, scalar_curvature, torsion,
    BlockMetric, Connection, Derivation, Sector,
};
use ncg_core::group::FiniteGroup;
use ncg_core::groupoid::{to_pair, ActionArrow};
use ncg_core::lie::LieAlgebra;
use ncg_core::linalg::{Matrix, QMatrix};
use ncg_core::random;
use ncg_core::representation::{
    ess_sup_norm, grid_determines, represent, tensor_vs_field_intertwiner, SampleGrid, TensorVector,
};
use ncg_core::scalars::{parse_field, GaussianRational, RationalField};
use ncg_core::sheaf::{
    glue, glue_boxes, is_sheaf, members, sheafify, stalk, verify_box_presheaf, verify_presheaf, BoxGlue,
    FiniteTopology, GlueOutcome, Presheaf, TabAlgebra,
};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn f(s: &str) -> RationalField {
    parse_field(s).unwrap()
}

fn q(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn naive_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    QMatrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = GaussianRational::zero();
        for k in 0..a.cols() {
            acc = acc + &a[(i, k)] * &b[(k, j)];
        }
        acc
    })
}

/// `(A∗B)(p, g) = Σ A(γ₁)B(γ₂)` over factorizations `(p, g) = γ₁∘γ₂` in the
/// action groupoid, with `A(p, g) = a[j(p, g)]`.
fn action_groupoid_convolution(group: &FiniteGroup, a: &MatrixField, b: &MatrixField) -> MatrixField {
    let n = group.order();
    let mut out = vec![RationalField::zero(); n * n];
    for p in 0..n {
        for g in 0..n {
            let target = ActionArrow { point: p, element: g };
            let mut acc = RationalField::zero();
            for g1 in 0..n {
                let first = ActionArrow { point: p, element: g1 };
                for g2 in 0..n {
                    let second = ActionArrow { point: group.mul(p, g1), element: g2 };
                    if first.compose(&second, group) != Some(target) {
                        continue;
                    }
                    let (i1, j1) = to_pair(group, first.point, first.element).unwrap();
                    let (i2, j2) = to_pair(group, second.point, second.element).unwrap();
                    acc = acc + a.entry(i1, j1) * b.entry(i2, j2);
                }
            }
            let (i, j) = to_pair(group, p, g).unwrap();
            out[i * n + j] = acc;
        }
    }
    MatrixField::from_entries(n, out).unwrap()
}

fn criterion_1() -> Check {
    let mut r = rng(1);
    let groups: Vec<FiniteGroup> =
        (1..=4).map(|n| FiniteGroup::cyclic(n).unwrap()).chain([FiniteGroup::symmetric(2).unwrap()]).collect();
    let mut triples = 0;
    for k in 0..120 {
        let g = &groups[k % groups.len()];
        let n = g.order();
        let a = random::matrix_field(&mut r, n, 2, 3, 0.15);
        let b = random::matrix_field(&mut r, n, 2, 3, 0.15);
        let c = random::matrix_field(&mut r, n, 2, 3, 0.15);
        let ab = a.convolve(&b).map_err(|e| e.to_string())?;
        ensure(ab == action_groupoid_convolution(g, &a, &b), || format!("groupoid sum differs for n = {n}"))?;
        let left = ab.convolve(&c).unwrap();
        let right = a.convolve(&b.convolve(&c).unwrap()).unwrap();
        ensure(left == right, || format!("associativity fails for n = {n}"))?;
        triples += 1;
    }
    Ok(format!("{triples} triples, n ≤ 4, degree ≤ 3"))
}

fn criterion_2() -> Check {
    let mut r = rng(2);
    let unit_square = OpenBox::from_ints(&[(0, 1), (0, 1)]).unwrap();
    let grid = SampleGrid::from_box(&unit_square, &[4, 4]).unwrap();
    ensure(grid.len() >= 8, || "grid too small".into())?;
    let mut pairs = 0;
    for _ in 0..100 {
        let n = 1 + pairs % 4;
        let a = random::matrix_field(&mut r, n, 2, 2, 0.2);
        let b = random::matrix_field(&mut r, n, 2, 2, 0.2);
        let lhs = represent(&a.convolve(&b).unwrap(), &grid).map_err(|e| e.to_string())?;
        let ra = represent(&a, &grid).unwrap();
        let rb = represent(&b, &grid).unwrap();
        for (k, p) in grid.points().iter().enumerate() {
            // direct evaluation, independent of the representation code
            let ea = QMatrix::from_fn(n, n, |i, j| a.entry(i, j).eval(p).unwrap());
            let eb = QMatrix::from_fn(n, n, |i, j| b.entry(i, j).eval(p).unwrap());
            ensure(*lhs.at(k) == naive_mul(&ea, &eb), || "represent(a∗b) ≠ A(x)B(x)".into())?;
        }
        ensure(lhs.values() == ra.compose(&rb).unwrap().as_slice(), || "not multiplicative".into())?;
        pairs += 1;
    }
    // injectivity surrogate: nonzero fields of low degree are seen by the grid
    let mut seen = 0;
    for _ in 0..100 {
        let a = random::matrix_field(&mut r, 2, 2, 2, 0.0);
        if a.is_zero() {
            continue;
        }
        ensure(grid_determines(&a, &grid), || "grid too coarse for degree 2".into())?;
        ensure(!represent(&a, &grid).unwrap().is_zero(), || format!("nonzero field {a} vanishes on the grid"))?;
        seen += 1;
    }
    let coarse = SampleGrid::from_box(&OpenBox::from_ints(&[(0, 1)]).unwrap(), &[2]).unwrap();
    let vanishing = MatrixField::scalar(1, f("x1^2 - x1/2"));
    ensure(!grid_determines(&vanishing, &coarse), || "surrogate accepts a grid that cannot separate".into())?;
    ensure(represent(&vanishing, &coarse).unwrap().is_zero(), || "expected vanishing on coarse grid".into())?;
    Ok(format!("{pairs} pairs on a {}-point grid; {seen} nonzero fields separated", grid.len()))
}

fn criterion_3() -> Check {
    let unit = OpenBox::from_ints(&[(0, 1)]).unwrap();
    let a = MatrixField::from_entries(2, vec![f("x1"), f("0"), f("0"), f("0")]).unwrap();
    let grid = SampleGrid::from_box(&unit, &[8]).unwrap();
    let norm = ess_sup_norm(&represent(&a, &grid).unwrap());
    ensure((norm - 0.875).abs() < 1e-12, || format!("norm {norm}, expected 0.875"))?;
    let mut last = 0.0;
    let mut prev: Option<SampleGrid> = None;
    for n in [2, 4, 8, 16, 32] {
        let g = SampleGrid::from_box(&unit, &[n]).unwrap();
        if let Some(p) = &prev {
            ensure(p.is_refined_by(&g), || "grids not nested".into())?;
        }
        let v = ess_sup_norm(&represent(&a, &g).unwrap());
        ensure(v >= last - 1e-12, || format!("norm decreased under refinement at N = {n}"))?;
        last = v;
        prev = Some(g);
    }
    Ok(format!("‖diag(x1, 0)‖ = {norm:.15} on {{k/8}}; monotone over N = 2..32"))
}

fn criterion_4() -> Check {
    for n in 2..=4 {
        let basis = center_basis(n, 1, 2);
        ensure(basis == vec![MatrixField::identity(n)], || format!("centre for n = {n} is not span{{1}}"))?;
    }
    let mut r = rng(4);
    for _ in 0..100 {
        let a = random::kernel(&mut r, 5, 3);
        let y0 = *a.columns().iter().next().unwrap();
        let w = center_witness(&a, y0).map_err(|e| e.to_string())?;
        // independent convolution by double loop over the supports
        let conv = |x: &FinSuppKernel, y: &FinSuppKernel| {
            let mut out = FinSuppKernel::zero();
            for (&(i, k), u) in x.entries() {
                for (&(k2, j), v) in y.entries() {
                    if k == k2 {
                        out = out.add(&FinSuppKernel::from_entries([((i, j), u * v)]));
                    }
                }
            }
            out
        };
        ensure(conv(&a, &w.b).is_zero(), || format!("a∗b ≠ 0 for a = {a}"))?;
        let ba = conv(&w.b, &a);
        ensure(!ba.is_zero(), || format!("b∗a = 0 for a = {a}"))?;
        let expected = a.entries().filter(|((_, j), _)| *j == y0).fold(GaussianRational::zero(), |s, (_, v)| s + v.norm_sqr_value());
        ensure(ba.get(w.x0, y0) == expected, || "(b∗a)(x0, y0) ≠ Σ|a(z, y0)|²".into())?;
    }
    for window in 1..=4 {
        ensure(kernel_commutant_dimension(window) == 0, || format!("nontrivial commutant for window {window}"))?;
    }
    Ok("centre = span{1} for n = 2, 3, 4; 100 witnesses; commutant {0} for windows 1..4".into())
}

trait NormSqr {
    fn norm_sqr_value(&self) -> GaussianRational;
}

impl NormSqr for GaussianRational {
    fn norm_sqr_value(&self) -> GaussianRational {
        self * &self.conj()
    }
}

fn test_algebras() -> Vec<LieAlgebra> {
    vec![LieAlgebra::su2(), LieAlgebra::sl2(), LieAlgebra::so3()]
}

fn test_metrics() -> Vec<(&'static str, BlockMetric)> {
    vec![
        ("flat", BlockMetric::diagonal(vec![f("1"), f("1")]).unwrap()),
        ("diag(1, x1^2)", BlockMetric::diagonal(vec![f("1"), f("x1^2")]).unwrap()),
        ("diag(1/x2^2, 1/x2^2)", BlockMetric::diagonal(vec![f("1/x2^2"), f("1/x2^2")]).unwrap()),
    ]
}

/// Six-term Koszul expansion straight from structure constants and the
/// Killing matrix, for basis triples.
fn vertical_koszul_oracle(l: &LieAlgebra, i: usize, j: usize, k: usize) -> GaussianRational {
    let d = l.dim();
    let kf = l.killing_form().matrix;
    let b = |x: usize, y: usize, z: usize| {
        // 𝔅(e_x, [e_y, e_z])
        (0..d).fold(GaussianRational::zero(), |s, m| s + l.constant(y, z, m) * &kf[(x, m)])
    };
    (b(k, i, j) + b(j, k, i) - b(i, j, k)) * GaussianRational::ratio(1, 2)
}

fn criterion_5() -> Check {
    let mut triples = 0;
    for l in test_algebras() {
        let g = BlockMetric::vertical(l.clone());
        let conn = Connection::for_sector(&g, Sector::Vertical).unwrap();
        let e = g.sector_basis(Sector::Vertical).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let kz = koszul(&g, &e[i], &e[j], &e[k]).map_err(|x| x.to_string())?;
                    let lhs = g.value(&connection_apply(&conn, &e[i], &e[j]).unwrap(), &e[k]).unwrap();
                    ensure(lhs == kz, || format!("{}: 𝒢(∇u v, w) ≠ koszul at ({i},{j},{k})", l.name()))?;
                    let oracle = RationalField::constant(vertical_koszul_oracle(&l, i, j, k));
                    ensure(kz == oracle, || format!("{}: koszul ≠ six-term oracle at ({i},{j},{k})", l.name()))?;
                    triples += 1;
                }
            }
        }
    }
    for (name, g) in test_metrics() {
        let conn = Connection::levi_civita(&g).unwrap();
        let e = g.sector_basis(Sector::Horizontal).unwrap();
        for u in &e {
            for v in &e {
                for w in &e {
                    let lhs = g.value(&connection_apply(&conn, u, v).unwrap(), w).unwrap();
                    ensure(lhs == koszul(&g, u, v, w).unwrap(), || format!("{name}: 𝒢(∇u v, w) ≠ koszul"))?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{triples} basis triples across 3 algebras and 3 metrics"))
}

fn criterion_6() -> Check {
    let mut count = 0;
    for l in test_algebras() {
        let conn = Connection::VerticalHalfBracket(l.clone());
        let e: Vec<Derivation> = l.basis().into_iter().map(Derivation::Vertical).collect();
        for u in &e {
            for v in &e {
                for w in &e {
                    let r = curvature(&conn, u, v, w).unwrap();
                    ensure(r == half_bracket_curvature(&conn, u, v, w).unwrap(), || {
                        format!("{}: R(u,v)w ≠ −¼[[u,v],w]", l.name())
                    })?;
                    count += 1;
                }
            }
        }
    }
    let mut r = rng(6);
    for _ in 0..100 {
        let n = 2 + count % 2;
        let [a, b, c] = [0, 1, 2].map(|_| Derivation::Inner(random::matrix_field(&mut r, n, 1, 2, 0.0)));
        let conn = Connection::InnerHalfBracket;
        ensure(curvature(&conn, &a, &b, &c).unwrap() == half_bracket_curvature(&conn, &a, &b, &c).unwrap(), || {
            "inner curvature ≠ −¼[[a,b],c]".into()
        })?;
        count += 1;
    }
    let mutant = LieAlgebra::unchecked("mutant", 3, &[(0, 1, 0, q(1)), (1, 2, 1, q(1)), (0, 2, 2, q(1))]).unwrap();
    ensure(mutant.jacobi_violation().is_some(), || "mutant satisfies Jacobi".into())?;
    let conn = Connection::VerticalHalfBracket(mutant.clone());
    let e: Vec<Derivation> = mutant.basis().into_iter().map(Derivation::Vertical).collect();
    let broken = e.iter().any(|u| {
        e.iter().any(|v| {
            e.iter().any(|w| curvature(&conn, u, v, w).unwrap() != half_bracket_curvature(&conn, u, v, w).unwrap())
        })
    });
    ensure(broken, || "closed form survives a Jacobi-violating table".into())?;
    Ok(format!("{count} triples exact; Jacobi mutant detected"))
}

/// Classical Riemannian geometry, written independently of the library:
/// `Γ^k_ij = ½ g^kl (∂i g_jl + ∂j g_il − ∂l g_ij)`,
/// `R^l_ijk = ∂i Γ^l_jk − ∂j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik`,
/// `Ric_jk = R^i_ijk`, `s = g^jk Ric_jk`.
fn classical_scalar_curvature(g: &Matrix<RationalField>) -> RationalField {
    let m = g.rows();
    let inv = g.inverse().unwrap();
    let half = RationalField::ratio(1, 2);
    let gamma = |k: usize, i: usize, j: usize| {
        (0..m).fold(RationalField::zero(), |s, l| {
            s + &inv[(k, l)] * &(g[(j, l)].partial(i) + g[(i, l)].partial(j) - g[(i, j)].partial(l))
        }) * half.clone()
    };
    let gm: Vec<RationalField> =
        (0..m * m * m).map(|x| gamma(x / (m * m), (x / m) % m, x % m)).collect();
    let gam = |k: usize, i: usize, j: usize| &gm[(k * m + i) * m + j];
    let riem = |l: usize, i: usize, j: usize, k: usize| {
        let mut r = gam(l, j, k).partial(i) - gam(l, i, k).partial(j);
        for x in 0..m {
            r = r + gam(l, i, x) * gam(x, j, k) - gam(l, j, x) * gam(x, i, k);
        }
        r
    };
    let mut s = RationalField::zero();
    for j in 0..m {
        for k in 0..m {
            let ric = (0..m).fold(RationalField::zero(), |acc, i| acc + riem(i, i, j, k));
            s = s + &inv[(j, k)] * &ric;
        }
    }
    s
}

fn criterion_7() -> Check {
    for l in test_algebras() {
        let g = BlockMetric::vertical(l.clone());
        let e = g.sector_basis(Sector::Vertical).unwrap();
        let quarter = GaussianRational::ratio(1, 4);
        for (i, u) in e.iter().enumerate() {
            for (j, w) in e.iter().enumerate() {
                let ric = ricci(&g, Sector::Vertical, u, w).map_err(|x| x.to_string())?;
                let want = RationalField::constant(&quarter * &l.killing(&l.e(i), &l.e(j)));
                ensure(ric == want, || format!("{}: ric(e{i}, e{j}) = {ric}, expected {want}", l.name()))?;
            }
        }
        let r = scalar_curvature(&g, Sector::Vertical).unwrap();
        ensure(r == RationalField::ratio(l.dim() as i64, 4), || format!("{}: r = {r}", l.name()))?;
    }
    let hyperbolic = BlockMetric::diagonal(vec![f("1/x2^2"), f("1/x2^2")]).unwrap();
    let oracle = classical_scalar_curvature(hyperbolic.base());
    ensure(oracle == f("-2"), || format!("classical oracle gives {oracle}"))?;
    let r = scalar_curvature(&hyperbolic, Sector::Horizontal).unwrap();
    ensure(r == oracle, || format!("hyperbolic scalar curvature {r}, oracle {oracle}"))?;
    for (name, g) in test_metrics() {
        let r = scalar_curvature(&g, Sector::Horizontal).unwrap();
        ensure(r == classical_scalar_curvature(g.base()), || format!("{name}: disagrees with the classical oracle"))?;
    }
    Ok("ric = ¼k̄ and r = d/4 for su(2), sl(2), so(3); hyperbolic r = −2".into())
}

fn criterion_8() -> Check {
    for (name, g) in test_metrics() {
        let conn = Connection::levi_civita(&g).unwrap();
        let e = g.sector_basis(Sector::Horizontal).unwrap();
        for u in &e {
            for v in &e {
                ensure(torsion(&conn, u, v).unwrap().is_zero(), || format!("{name}: torsion"))?;
                for w in &e {
                    ensure(metric_defect(&g, &conn, u, v, w).unwrap().is_zero(), || {
                        format!("{name}: not metric")
                    })?;
                    if name == "flat" {
                        ensure(curvature(&conn, u, v, w).unwrap().is_zero(), || "flat metric curved".into())?;
                    }
                }
            }
        }
    }
    Ok("torsion-free and metric on coordinate fields for 3 metrics; flat R = 0".into())
}

/// Connected components of an open set, generated by `q ∈ U_p`.
fn components(t: &FiniteTopology, u: u32) -> usize {
    let pts = members(u);
    let minimal = |p: usize| t.opens().iter().filter(|&&o| o >> p & 1 == 1).fold(t.full(), |a, &o| a & o);
    let mut label: Vec<usize> = (0..t.points()).collect();
    loop {
        let mut changed = false;
        for &p in &pts {
            for qq in members(minimal(p)) {
                let lo = label[p].min(label[qq]);
                if label[p] != lo || label[qq] != lo {
                    label[p] = lo;
                    label[qq] = lo;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut roots: Vec<usize> = pts.iter().map(|&p| label[p]).collect();
    roots.sort();
    roots.dedup();
    roots.len()
}

fn criterion_9() -> Check {
    let mut r = rng(9);
    let mut topologies = 0;
    let mut glued = 0;
    for n in 0..=4 {
        for t in FiniteTopology::enumerate(n) {
            topologies += 1;
            let fun = Presheaf::functions(t.clone(), TabAlgebra::scalars());
            let con = Presheaf::constant(t.clone(), TabAlgebra::scalars());
            ensure(verify_presheaf(&fun).is_ok() && verify_presheaf(&con).is_ok(), || format!("{t}: not a presheaf"))?;
            ensure(is_sheaf(&fun).unwrap().is_ok(), || format!("{t}: function presheaf fails gluing"))?;
            for p in 0..n {
                let s = stalk(&fun, p).unwrap();
                let smallest = t.opens().iter().filter(|&&o| o >> p & 1 == 1).fold(t.full(), |a, &o| a & o);
                ensure(s.neighbourhood == smallest, || format!("{t}: wrong neighbourhood of {p}"))?;
                ensure(s.algebra.dim() == smallest.count_ones() as usize, || "stalk dimension".into())?;
            }
            // glue restrictions of a random global section over every cover
            let full = t.full();
            let global = random::vector(&mut r, n);
            for cover in t.antichain_covers(full) {
                let family: Vec<_> = cover.iter().map(|&c| fun.restrict(full, c, &global).unwrap()).collect();
                ensure(glue(&fun, &cover, &family).unwrap() == GlueOutcome::Glued(global.clone()), || {
                    format!("{t}: gluing is not unique")
                })?;
                glued += 1;
            }
            // the constant presheaf sheafifies to locally constant functions
            let plus = sheafify(&con).unwrap();
            ensure(verify_presheaf(&plus.sheaf).is_ok(), || format!("{t}: sheafification not a presheaf"))?;
            ensure(is_sheaf(&plus.sheaf).unwrap().is_ok(), || format!("{t}: sheafification not a sheaf"))?;
            for &u in t.opens() {
                let dim = plus.sheaf.algebra(u).unwrap().dim();
                ensure(dim == components(&t, u), || format!("{t}: F⁺({u:b}) has dimension {dim}"))?;
            }
            let fun_plus = sheafify(&fun).unwrap();
            ensure(fun_plus.is_isomorphism(), || format!("{t}: sheafification of a sheaf changed it"))?;
            ensure(is_sheaf(&con).unwrap().is_ok() == plus.is_isomorphism(), || {
                format!("{t}: constant presheaf sheaf status inconsistent")
            })?;
        }
    }
    // non-sheaf witness on the discrete two-point space
    let d2 = FiniteTopology::discrete(2);
    let con = Presheaf::constant(d2.clone(), TabAlgebra::scalars());
    ensure(glue(&con, &[0b01, 0b10], &[vec![q(1)], vec![q(2)]]).unwrap() == GlueOutcome::NoCandidate, || {
        "constant presheaf glued 1 and 2".into()
    })?;
    ensure(sheafify(&con).unwrap().sheaf.algebra(0b11).unwrap().dim() == 2, || "F⁺ over two points ≠ ℚ²".into())?;
    // box-cover presheaf of matrix fields
    for _ in 0..20 {
        let outer = random::open_box(&mut r, 2, 3);
        let mid = random::sub_box(&mut r, &outer);
        let inner = random::sub_box(&mut r, &mid);
        let sections: Vec<MatrixField> = (0..3).map(|_| random::matrix_field(&mut r, 2, 2, 2, 0.2)).collect();
        ensure(verify_box_presheaf(&[outer.clone(), mid, inner], &sections).unwrap().is_ok(), || {
            "box presheaf not functorial".into()
        })?;
        let a = random::sub_box(&mut r, &outer);
        let b = random::sub_box(&mut r, &outer);
        let fam = [sections[0].clone().with_domain(a.clone()), sections[0].clone().with_domain(b.clone())];
        match glue_boxes(&[a.clone(), b.clone()], &fam).unwrap() {
            BoxGlue::Glued(pieces) => {
                ensure(pieces.iter().all(|p| p.field == sections[0]), || "glued field differs".into())?;
            }
            BoxGlue::Incompatible { .. } => return Err("equal sections reported incompatible".into()),
        }
        if a.overlaps(&b) && sections[0] != sections[1] {
            let fam = [sections[0].clone(), sections[1].clone()];
            ensure(matches!(glue_boxes(&[a, b], &fam).unwrap(), BoxGlue::Incompatible { .. }), || {
                "different sections glued on an overlap".into()
            })?;
        }
    }
    Ok(format!("{topologies} topologies on ≤ 4 points, {glued} covers glued uniquely; constant-presheaf witness reproduced"))
}

fn criterion_10() -> Check {
    let mut r = rng(10);
    let grid = SampleGrid::from_box(&OpenBox::from_ints(&[(0, 1)]).unwrap(), &[9]).unwrap();
    for k in 0..100 {
        let n = 1 + k % 3;
        let f0 = random::field(&mut r, 1, 2, 0.2);
        let b = random::qmatrix(&mut r, n, n);
        let v = TensorVector { psi: random::vector(&mut r, grid.len()), phi: random::vector(&mut r, n) };
        let w = TensorVector { psi: random::vector(&mut r, grid.len()), phi: random::vector(&mut r, n) };
        let rep = tensor_vs_field_intertwiner(&f0, &b, &grid, &v, &w).map_err(|e| e.to_string())?;
        ensure(rep.passed(), || format!("instance {k}: {rep}"))?;
        // oracle: Σ_x w_x conj(ψ(x)φ_i) ψ'(x)φ'_i computed directly
        let mut direct = GaussianRational::zero();
        for (x, wt) in grid.weights().iter().enumerate() {
            for i in 0..n {
                let a = &v.psi[x] * &v.phi[i];
                let c = &w.psi[x] * &w.phi[i];
                direct = direct + &(&a.conj() * &c) * &GaussianRational::real(wt.clone());
            }
        }
        ensure(direct == rep.inner_field, || "weighted inner product mismatch".into())?;
        // oracle for the action: f(x)·B·(ψ(x)φ)
        for (x, p) in grid.points().iter().enumerate() {
            let fx = f0.eval(p).unwrap();
            let scaled: Vec<_> = v.phi.iter().map(|c| &v.psi[x] * c).collect();
            let want: Vec<_> = b.mul_vec(&scaled).unwrap().into_iter().map(|c| &fx * &c).collect();
            let got = ncg_core::representation::represent(&MatrixField::from_constant(&b).unwrap().scale(&f0), &grid)
                .unwrap()
                .at(x)
                .mul_vec(&scaled)
                .unwrap();
            ensure(got == want, || "J(f⊗B) acts incorrectly".into())?;
        }
    }
    Ok(format!("100 instances on a {}-point grid", grid.len()))
}

fn criterion_11() -> Check {
    let mut r = rng(11);
    for _ in 0..50 {
        let n = 2;
        let (f1, f2) = (random::field(&mut r, 2, 2, 0.2), random::field(&mut r, 2, 2, 0.2));
        let (a, b) = (random::qmatrix(&mut r, n, n), random::qmatrix(&mut r, n, n));
        let s = SimpleTensor::new(f1.clone(), a.clone()).unwrap();
        let t = SimpleTensor::new(f2.clone(), b.clone()).unwrap();
        let composed = s.compose(&t).unwrap();
        ensure(composed.scalar == &f1 * &f2 && composed.operator == naive_mul(&a, &b), || "compose law".into())?;
        ensure(composed.to_field() == s.to_field().convolve(&t.to_field()).unwrap(), || "compose vs fields".into())?;
        let same_op = SimpleTensor::new(f2.clone(), a.clone()).unwrap();
        ensure(
            s.add_same_operator(&same_op).unwrap().to_field() == s.to_field().add(&same_op.to_field()).unwrap(),
            || "(f⊗A) + (g⊗A) law".into(),
        )?;
        let same_scalar = SimpleTensor::new(f1.clone(), b.clone()).unwrap();
        ensure(
            s.add_same_scalar(&same_scalar).unwrap().to_field() == s.to_field().add(&same_scalar.to_field()).unwrap(),
            || "(f⊗A) + (f⊗B) law".into(),
        )?;
        let w = random::open_box(&mut r, 2, 4);
        let v = random::sub_box(&mut r, &w);
        let u = random::sub_box(&mut r, &v);
        let direct = s.restrict(&w, &u).unwrap();
        let staged = s.restrict(&w, &v).unwrap().restrict(&u).unwrap();
        ensure(direct == staged, || "ρ_U^W ≠ ρ_U^V ∘ ρ_V^W".into())?;
        ensure(s.restrict(&w, &w).unwrap() == s.to_field().with_domain(w.clone()), || "ρ_W^W ≠ id".into())?;
        ensure(s.restrict(&u, &w).is_err(), || "restriction to a larger box accepted".into())?;
    }
    Ok("50 instances of the three tensor laws and restriction functoriality".into())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 11] = [
        ("convolution correctness", 5, criterion_1),
        ("representation isomorphism", 5, criterion_2),
        ("random-operator norm", 1, criterion_3),
        ("centre results", 10, criterion_4),
        ("Koszul consistency", 5, criterion_5),
        ("curvature closed forms", 5, criterion_6),
        ("Ricci and scalar curvature", 5, criterion_7),
        ("Levi-Civita", 2, criterion_8),
        ("sheaf machinery", 30, criterion_9),
        ("tensor/field intertwiner", 5, criterion_10),
        ("simple tensors and restriction", 2, criterion_11),
    ];
    let mut failures = 0;
    for (k, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let (status, detail) = match (&outcome, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("over budget: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<32} {status} {:>8.3}s (limit {budget}s)  {detail}",
            k + 1,
            name,
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
