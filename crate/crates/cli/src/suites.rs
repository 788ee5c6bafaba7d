//! Built-in randomized verification suites.

use std::time::Instant;

use ncg_core::conv::{center_basis, center_witness, kernel_commutant_dimension, FinSuppKernel, MatrixField};
use ncg_core::domain::OpenBox;
use ncg_core::geometry::{
    connection_apply, curvature, half_bracket_curvature, koszul, metric_defect, ricci, scalar_curvature, torsion,
    BlockMetric, Connection, Derivation, Sector,
};
use ncg_core::group::{verify_group_axioms, FiniteGroup};
use ncg_core::groupoid::{to_pair, ActionArrow};
use ncg_core::lie::LieAlgebra;
use ncg_core::random;
use ncg_core::representation::{
    ess_sup_norm, grid_determines, represent, tensor_vs_field_intertwiner, SampleGrid, TensorVector,
};
use ncg_core::scalars::{parse_field, GaussianRational, RationalField};
use ncg_core::sheaf::{
    germ, germ_mul, germs_equal, glue, is_sheaf, sheafify, verify_presheaf, FiniteTopology, GlueOutcome, Presheaf,
    TabAlgebra,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};
use crate::report::{Entry, Report};
use crate::tasks::NORM_TOLERANCE;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const SUITES: [&str; 5] = ["algebra", "representation", "geometry", "sheaf", "appendixB"];

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

struct Suite {
    name: &'static str,
    rng: ChaCha8Rng,
    entries: Vec<Entry>,
}

impl Suite {
    fn check(&mut self, anchor: &str, f: impl FnOnce(&mut ChaCha8Rng) -> Outcome) {
        let start = Instant::now();
        let out = f(&mut self.rng);
        let (ok, value) = match out {
            Ok(v) => (true, v),
            Err(v) => (false, v),
        };
        let mut e = Entry::check(format!("suite {}", self.name), anchor, ok, value);
        e.millis = start.elapsed().as_millis() as u64;
        self.entries.push(e);
    }
}

pub fn run(name: &str, seed: u64) -> Result<Report> {
    let name = SUITES.iter().find(|&&s| s == name).ok_or_else(|| CliError::UnknownSuite(name.to_string()))?;
    let mut suite = Suite { name, rng: ChaCha8Rng::seed_from_u64(seed), entries: Vec::new() };
    match *name {
        "algebra" => algebra(&mut suite),
        "representation" => representation(&mut suite),
        "geometry" => geometry(&mut suite),
        "sheaf" => sheaf(&mut suite),
        _ => kernel_witness(&mut suite),
    }
    Ok(Report { entries: suite.entries })
}

fn f(s: &str) -> RationalField {
    parse_field(s).expect("literal parses")
}

/// Convolution on the action groupoid of `G` on itself, summed over
/// composable factorizations.
fn groupoid_convolution(group: &FiniteGroup, a: &MatrixField, b: &MatrixField) -> MatrixField {
    let n = group.order();
    let mut out = vec![RationalField::zero(); n * n];
    for p in 0..n {
        for g in 0..n {
            let target = ActionArrow { point: p, element: g };
            let mut acc = RationalField::zero();
            for g1 in 0..n {
                let first = ActionArrow { point: p, element: g1 };
                let second = ActionArrow { point: group.mul(p, g1), element: group.mul(group.inverse(g1), g) };
                if first.compose(&second, group) == Some(target) {
                    let (i1, j1) = to_pair(group, first.point, first.element).expect("valid arrow");
                    let (i2, j2) = to_pair(group, second.point, second.element).expect("valid arrow");
                    acc = acc + a.entry(i1, j1) * b.entry(i2, j2);
                }
            }
            let (i, j) = to_pair(group, p, g).expect("valid arrow");
            out[i * n + j] = acc;
        }
    }
    MatrixField::from_entries(n, out).expect("square")
}

fn algebra(s: &mut Suite) {
    s.check("Cayley tables: closure, identity, inverses, associativity", |_| {
        for k in 1..=4 {
            let g = FiniteGroup::symmetric(k).map_err(|e| e.to_string())?;
            ensure(verify_group_axioms(g.order(), g.table()).is_ok(), || format!("S{k} rejected"))?;
        }
        ensure(verify_group_axioms(2, &[0, 1, 1, 1]).is_err(), || "broken table accepted".into())?;
        Ok("S1..S4 accepted; broken table rejected".into())
    });
    s.check("A∗B = pointwise matrix product for the action groupoid", |r| {
        let groups: Vec<FiniteGroup> = (1..=4).map(|n| FiniteGroup::cyclic(n).unwrap()).collect();
        for k in 0..40 {
            let g = &groups[k % 4];
            let n = g.order();
            let a = random::matrix_field(r, n, 2, 3, 0.1);
            let b = random::matrix_field(r, n, 2, 3, 0.1);
            ensure(a.convolve(&b).unwrap() == groupoid_convolution(g, &a, &b), || format!("mismatch for n = {n}"))?;
        }
        Ok("40 pairs over C1..C4".into())
    });
    s.check("(a∗b)∗c = a∗(b∗c)", |r| {
        for k in 0..40 {
            let n = 1 + k % 4;
            let [a, b, c] = [0, 1, 2].map(|_| random::matrix_field(r, n, 2, 3, 0.1));
            let left = a.convolve(&b).unwrap().convolve(&c).unwrap();
            ensure(left == a.convolve(&b.convolve(&c).unwrap()).unwrap(), || format!("fails for n = {n}"))?;
        }
        Ok("40 matrix-field triples".into())
    });
    s.check("kernel convolution is associative and distributive", |r| {
        for _ in 0..100 {
            let [a, b, c] = [0, 1, 2].map(|_| random::kernel(r, 4, 2));
            ensure(a.convolve(&b).convolve(&c) == a.convolve(&b.convolve(&c)), || "not associative".into())?;
            ensure(a.convolve(&b.add(&c)) == a.convolve(&b).add(&a.convolve(&c)), || "not distributive".into())?;
        }
        Ok("100 kernel triples".into())
    });
    s.check("X(fg) = X(f)g + fX(g) and [X, Y] satisfies Jacobi", |r| {
        for _ in 0..30 {
            let x = random::base_derivation(r, 2, 2);
            let (p, q) = (random::field(r, 2, 2, 0.2), random::field(r, 2, 2, 0.2));
            ensure(x.apply(&(&p * &q)) == &x.apply(&p) * &q + &p * &x.apply(&q), || format!("Leibniz fails for {x}"))?;
        }
        for _ in 0..10 {
            let [x, y, z] = [0, 1, 2].map(|_| random::base_derivation(r, 2, 1));
            let jac = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
            ensure(jac.is_zero(), || "Jacobi identity fails".into())?;
        }
        Ok("30 Leibniz instances, 10 Jacobi triples".into())
    });
    s.check("printing then parsing returns the same function", |r| {
        for _ in 0..100 {
            let x = random::field(r, 3, 3, 0.4);
            ensure(parse_field(&x.to_string()).as_ref() == Ok(&x), || format!("round trip fails for {x}"))?;
        }
        Ok("100 rational functions".into())
    });
    s.check("Z(M_n(C(U))) = {f·1}", |_| {
        for n in 2..=4 {
            ensure(center_basis(n, 1, 2) == vec![MatrixField::identity(n)], || format!("n = {n}"))?;
        }
        Ok("span{1} for n = 2, 3, 4".into())
    });
}

fn representation(s: &mut Suite) {
    let square = OpenBox::from_ints(&[(0, 1), (0, 1)]).unwrap();
    let grid = SampleGrid::from_box(&square, &[4, 4]).unwrap();
    s.check("represent(a∗b) = represent(a)·represent(b)", |r| {
        for k in 0..50 {
            let n = 1 + k % 4;
            let a = random::matrix_field(r, n, 2, 2, 0.2);
            let b = random::matrix_field(r, n, 2, 2, 0.2);
            let lhs = represent(&a.convolve(&b).unwrap(), &grid).map_err(|e| e.to_string())?;
            let rhs = represent(&a, &grid).unwrap().compose(&represent(&b, &grid).unwrap()).unwrap();
            ensure(lhs.values() == rhs.as_slice(), || format!("not multiplicative for n = {n}"))?;
        }
        Ok(format!("50 pairs on a {}-point grid", grid.len()))
    });
    s.check("nonzero fields of low degree do not vanish on the grid", |r| {
        let mut seen = 0;
        for _ in 0..50 {
            let a = random::matrix_field(r, 2, 2, 2, 0.0);
            if a.is_zero() {
                continue;
            }
            ensure(grid_determines(&a, &grid), || "grid too coarse".into())?;
            ensure(!represent(&a, &grid).unwrap().is_zero(), || format!("{a} vanishes"))?;
            seen += 1;
        }
        Ok(format!("{seen} fields separated"))
    });
    s.check("‖diag(x1, 0)‖ on {k/8} is 7/8, monotone under refinement", |_| {
        let unit = OpenBox::from_ints(&[(0, 1)]).unwrap();
        let a = MatrixField::from_entries(2, vec![f("x1"), f("0"), f("0"), f("0")]).unwrap();
        let mut last = 0.0;
        let mut at8 = 0.0;
        for n in [2, 4, 8, 16, 32] {
            let v = ess_sup_norm(&represent(&a, &SampleGrid::from_box(&unit, &[n]).unwrap()).unwrap());
            ensure(v >= last - NORM_TOLERANCE, || format!("decreased at N = {n}"))?;
            if n == 8 {
                at8 = v;
            }
            last = v;
        }
        ensure((at8 - 0.875).abs() < NORM_TOLERANCE, || format!("norm {at8}"))?;
        Ok(format!("{at8:.15}"))
    });
    s.check("I((f⊗B)(ψ⊗φ)) = J(f⊗B)I(ψ⊗φ) and I is isometric", |r| {
        let line = SampleGrid::from_box(&OpenBox::from_ints(&[(0, 1)]).unwrap(), &[9]).unwrap();
        for k in 0..30 {
            let n = 1 + k % 3;
            let f0 = random::field(r, 1, 2, 0.2);
            let b = random::qmatrix(r, n, n);
            let v = TensorVector { psi: random::vector(r, line.len()), phi: random::vector(r, n) };
            let w = TensorVector { psi: random::vector(r, line.len()), phi: random::vector(r, n) };
            let rep = tensor_vs_field_intertwiner(&f0, &b, &line, &v, &w).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || rep.to_string())?;
        }
        Ok("30 instances".into())
    });
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

fn geometry(s: &mut Suite) {
    s.check("G(∇_u v, w) = koszul(u, v, w)", |_| {
        let mut cases: Vec<(String, BlockMetric, Sector)> =
            test_algebras().into_iter().map(|l| (l.name().to_string(), BlockMetric::vertical(l), Sector::Vertical)).collect();
        cases.extend(test_metrics().into_iter().map(|(n, g)| (n.to_string(), g, Sector::Horizontal)));
        let mut count = 0;
        for (name, g, sector) in cases {
            let conn = Connection::for_sector(&g, sector).map_err(|e| e.to_string())?;
            let e = g.sector_basis(sector).unwrap();
            for u in &e {
                for v in &e {
                    for w in &e {
                        let lhs = g.value(&connection_apply(&conn, u, v).unwrap(), w).unwrap();
                        ensure(lhs == koszul(&g, u, v, w).unwrap(), || format!("{name}: mismatch"))?;
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} basis triples"))
    });
    s.check("R(u, v)w = −¼[[u, v], w]", |r| {
        let mut count = 0;
        for l in test_algebras() {
            let conn = Connection::VerticalHalfBracket(l.clone());
            let e: Vec<Derivation> = l.basis().into_iter().map(Derivation::Vertical).collect();
            for u in &e {
                for v in &e {
                    for w in &e {
                        ensure(curvature(&conn, u, v, w).unwrap() == half_bracket_curvature(&conn, u, v, w).unwrap(), || {
                            format!("{}: closed form fails", l.name())
                        })?;
                        count += 1;
                    }
                }
            }
        }
        for k in 0..30 {
            let n = 2 + k % 2;
            let [a, b, c] = [0, 1, 2].map(|_| Derivation::Inner(random::matrix_field(r, n, 1, 2, 0.0)));
            let conn = Connection::InnerHalfBracket;
            ensure(curvature(&conn, &a, &b, &c).unwrap() == half_bracket_curvature(&conn, &a, &b, &c).unwrap(), || {
                "inner closed form fails".into()
            })?;
            count += 1;
        }
        Ok(format!("{count} triples"))
    });
    s.check("ric = ¼B and r = dim/4 for su(2), sl(2), so(3)", |_| {
        for l in test_algebras() {
            let g = BlockMetric::vertical(l.clone());
            let e = g.sector_basis(Sector::Vertical).unwrap();
            for (i, u) in e.iter().enumerate() {
                for (j, w) in e.iter().enumerate() {
                    let ric = ricci(&g, Sector::Vertical, u, w).map_err(|x| x.to_string())?;
                    let want = l.killing(&l.e(i), &l.e(j)) * GaussianRational::ratio(1, 4);
                    ensure(ric == RationalField::constant(want), || format!("{}: ric(e{i}, e{j}) = {ric}", l.name()))?;
                }
            }
            let r = scalar_curvature(&g, Sector::Vertical).unwrap();
            ensure(r == RationalField::ratio(l.dim() as i64, 4), || format!("{}: r = {r}", l.name()))?;
        }
        Ok("all three algebras".into())
    });
    s.check("scalar curvature of the hyperbolic plane is −2", |_| {
        let g = BlockMetric::diagonal(vec![f("1/x2^2"), f("1/x2^2")]).unwrap();
        let r = scalar_curvature(&g, Sector::Horizontal).map_err(|e| e.to_string())?;
        ensure(r == f("-2"), || format!("r = {r}"))?;
        Ok(format!("r = {r}"))
    });
    s.check("Levi-Civita connection is torsion-free and metric", |_| {
        for (name, g) in test_metrics() {
            let conn = Connection::levi_civita(&g).unwrap();
            let e = g.sector_basis(Sector::Horizontal).unwrap();
            for u in &e {
                for v in &e {
                    ensure(torsion(&conn, u, v).unwrap().is_zero(), || format!("{name}: torsion"))?;
                    for w in &e {
                        ensure(metric_defect(&g, &conn, u, v, w).unwrap().is_zero(), || format!("{name}: not metric"))?;
                    }
                }
            }
        }
        Ok("3 metrics".into())
    });
}

fn sheaf(s: &mut Suite) {
    s.check("number of topologies on 0..4 points is 1, 1, 4, 29, 355", |_| {
        let counts: Vec<usize> = (0..=4).map(|n| FiniteTopology::enumerate(n).len()).collect();
        ensure(counts == [1, 1, 4, 29, 355], || format!("{counts:?}"))?;
        Ok(format!("{counts:?}"))
    });
    s.check("functions form a sheaf; its sheafification is itself", |_| {
        let mut count = 0;
        for n in 0..=3 {
            for t in FiniteTopology::enumerate(n) {
                let fun = Presheaf::functions(t.clone(), TabAlgebra::scalars());
                ensure(verify_presheaf(&fun).is_ok(), || format!("{t}: not a presheaf"))?;
                ensure(is_sheaf(&fun).unwrap().is_ok(), || format!("{t}: not a sheaf"))?;
                ensure(sheafify(&fun).unwrap().is_isomorphism(), || format!("{t}: F → F⁺ not iso"))?;
                count += 1;
            }
        }
        Ok(format!("{count} topologies"))
    });
    s.check("constant presheaf on two discrete points fails gluing; F⁺ is ℚ²", |_| {
        let con = Presheaf::constant(FiniteTopology::discrete(2), TabAlgebra::scalars());
        let one = GaussianRational::from_int(1);
        let two = GaussianRational::from_int(2);
        ensure(glue(&con, &[0b01, 0b10], &[vec![one], vec![two]]).unwrap() == GlueOutcome::NoCandidate, || {
            "glued 1 and 2".into()
        })?;
        let plus = sheafify(&con).map_err(|e| e.to_string())?;
        ensure(plus.sheaf.algebra(0b11).unwrap().dim() == 2, || "wrong dimension".into())?;
        ensure(is_sheaf(&plus.sheaf).unwrap().is_ok(), || "F⁺ is not a sheaf".into())?;
        Ok("witness reproduced".into())
    });
    s.check("germ multiplication is well defined", |r| {
        let t = FiniteTopology::new(3, [0b000, 0b001, 0b011, 0b101, 0b111]).unwrap();
        let fun = Presheaf::functions(t.clone(), TabAlgebra::matrices(2));
        for _ in 0..30 {
            let p = 0;
            let opens: Vec<u32> = t.neighbourhoods(p).collect();
            let u = opens[r.random_range(0..opens.len())];
            let v = opens[r.random_range(0..opens.len())];
            let k = |m: u32| m.count_ones() as usize * 4;
            let a = random::vector(r, k(u));
            let b = random::vector(r, k(v));
            let (ga, gb) = (germ(&fun, p, u, a.clone()).unwrap(), germ(&fun, p, v, b.clone()).unwrap());
            let prod = germ_mul(&fun, &ga, &gb).map_err(|e| e.to_string())?;
            // the same germs represented on the smallest neighbourhood
            let ga2 = germ(&fun, p, 0b001, fun.restrict(u, 0b001, &a).unwrap()).unwrap();
            let gb2 = germ(&fun, p, 0b001, fun.restrict(v, 0b001, &b).unwrap()).unwrap();
            let prod2 = germ_mul(&fun, &ga2, &gb2).unwrap();
            ensure(germs_equal(&fun, &prod, &prod2).unwrap(), || "product depends on representatives".into())?;
        }
        Ok("30 pairs of representatives".into())
    });
}

fn kernel_witness(s: &mut Suite) {
    s.check("a∗b = 0 and b∗a ≠ 0 for the constructed witness b", |r| {
        for _ in 0..100 {
            let a: FinSuppKernel = random::kernel(r, 5, 3);
            let y0 = *a.columns().iter().next().expect("nonzero kernel");
            let w = center_witness(&a, y0).map_err(|e| e.to_string())?;
            ensure(a.convolve(&w.b).is_zero(), || format!("a∗b ≠ 0 for a = {a}"))?;
            ensure(!w.b.convolve(&a).is_zero(), || format!("b∗a = 0 for a = {a}"))?;
            ensure(!w.value.is_zero(), || "(b∗a)(x0, y0) = 0".into())?;
        }
        Ok("100 random sparse kernels".into())
    });
    s.check("the commutant of the kernel generators is {0}", |_| {
        for window in 1..=4 {
            let d = kernel_commutant_dimension(window);
            ensure(d == 0, || format!("dimension {d} for window {window}"))?;
        }
        Ok("windows 1..4".into())
    });
}
