//! Scenario files: TOML with one array of tables per declaration kind and a
//! `[[task]]` list.

use std::collections::{BTreeMap, BTreeSet};

use ncg_core::conv::{FinSuppKernel, MatrixField};
use ncg_core::domain::OpenBox;
use ncg_core::geometry::BlockMetric;
use ncg_core::group::FiniteGroup;
use ncg_core::lie::LieAlgebra;
use ncg_core::linalg::{Matrix, QMatrix};
use ncg_core::representation::SampleGrid;
use ncg_core::scalars::{parse_field, parse_scalar, GaussianRational, RationalField};
use ncg_core::sheaf::{FiniteTopology, OpenSet, Presheaf, TabAlgebra};
use num_rational::BigRational;
use serde::Deserialize;

use crate::error::{CliError, Result};

/// A number written either as a TOML integer or as a string in the
/// expression syntax, e.g. `"3/4 - 2i"` or `"x1^2/(x2 + 1)"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn text(&self) -> String {
        match self {
            Num::Int(n) => n.to_string(),
            Num::Text(s) => s.clone(),
        }
    }

    fn scalar(&self, owner: &str) -> Result<GaussianRational> {
        parse_scalar(&self.text()).map_err(|e| CliError::validation(owner, format!("`{}`: {e}", self.text())))
    }

    fn field(&self, owner: &str) -> Result<RationalField> {
        parse_field(&self.text()).map_err(|e| CliError::validation(owner, format!("`{}`: {e}", self.text())))
    }

    fn real(&self, owner: &str) -> Result<BigRational> {
        let c = self.scalar(owner)?;
        if !c.is_real() {
            return Err(CliError::validation(owner, format!("`{}` must be real", self.text())));
        }
        Ok(c.re)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    base_dim: Option<usize>,
    #[serde(default)]
    group: Vec<RawGroup>,
    #[serde(default)]
    lie: Vec<RawLie>,
    #[serde(default)]
    metric: Vec<RawMetric>,
    #[serde(default)]
    matrix: Vec<RawMatrix>,
    #[serde(default)]
    kernel: Vec<RawKernel>,
    #[serde(default)]
    grid: Vec<RawGrid>,
    #[serde(default)]
    topology: Vec<RawTopology>,
    #[serde(default)]
    presheaf: Vec<RawPresheaf>,
    #[serde(default)]
    task: Vec<RawTask>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    name: String,
    /// `cyclic:n` or `symmetric:k`.
    builtin: Option<String>,
    order: Option<usize>,
    /// Row-major Cayley table.
    table: Option<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLie {
    name: String,
    /// `su2`, `sl2`, `so3` or `abelian:d`.
    builtin: Option<String>,
    dim: Option<usize>,
    /// Sparse `[i, j, k, c]` meaning `[e_i, e_j]` has `c` in `e_k`.
    #[serde(default)]
    constants: Vec<(usize, usize, usize, Num)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetric {
    name: String,
    base: Option<Vec<Vec<Num>>>,
    lie: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    name: String,
    n: usize,
    entries: Vec<Num>,
    domain: Option<Vec<(Num, Num)>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKernel {
    name: String,
    /// `[i, j, re, im]` rows.
    entries: Vec<(i64, i64, Num, Num)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    name: String,
    points: Option<Vec<Vec<Num>>>,
    weights: Option<Vec<Num>>,
    domain: Option<Vec<(Num, Num)>>,
    subdivisions: Option<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTopology {
    name: String,
    /// `discrete:n`, `indiscrete:n` or `sierpinski`.
    builtin: Option<String>,
    points: Option<usize>,
    opens: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresheaf {
    name: String,
    topology: String,
    /// `constant`, `functions` or `tabulated`.
    kind: String,
    /// For `constant` and `functions`: `scalars`, `product:k` or `matrices:n`.
    algebra: Option<String>,
    #[serde(default)]
    sections: Vec<RawSection>,
    #[serde(default)]
    restrictions: Vec<RawRestriction>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSection {
    open: Vec<usize>,
    dim: usize,
    /// Structure constants `c[a][b][c]`, flattened; defaults to zero.
    #[serde(default)]
    table: Vec<Num>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRestriction {
    from: Vec<usize>,
    to: Vec<usize>,
    matrix: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct RawTask {
    pub op: String,
    #[serde(flatten)]
    pub args: toml::Table,
}

/// A validated scenario.
#[derive(Debug, Default)]
pub struct Scenario {
    pub base_dim: Option<usize>,
    pub groups: BTreeMap<String, FiniteGroup>,
    pub lies: BTreeMap<String, LieAlgebra>,
    pub metrics: BTreeMap<String, BlockMetric>,
    pub matrices: BTreeMap<String, MatrixField>,
    pub kernels: BTreeMap<String, FinSuppKernel>,
    pub grids: BTreeMap<String, SampleGrid>,
    pub topologies: BTreeMap<String, FiniteTopology>,
    pub presheaves: BTreeMap<String, Presheaf>,
    pub tasks: Vec<RawTask>,
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn builtin_arg(spec: &str, owner: &str) -> Result<(String, Option<usize>)> {
    match spec.split_once(':') {
        None => Ok((spec.to_string(), None)),
        Some((kind, n)) => {
            let n = n.trim().parse().map_err(|_| CliError::validation(owner, format!("bad size in `{spec}`")))?;
            Ok((kind.trim().to_string(), Some(n)))
        }
    }
}

fn mask(points: &[usize], owner: &str) -> Result<OpenSet> {
    let mut m = 0;
    for &p in points {
        if p >= 32 {
            return Err(CliError::validation(owner, format!("point {p} out of range")));
        }
        m |= 1 << p;
    }
    Ok(m)
}

fn open_box(bounds: &[(Num, Num)], owner: &str) -> Result<OpenBox> {
    let bounds =
        bounds.iter().map(|(lo, hi)| Ok((lo.real(owner)?, hi.real(owner)?))).collect::<Result<Vec<_>>>()?;
    OpenBox::new(bounds).map_err(|e| CliError::validation(owner, e))
}

fn tab_algebra(spec: &str, owner: &str) -> Result<TabAlgebra> {
    match builtin_arg(spec, owner)? {
        (k, None) if k == "scalars" => Ok(TabAlgebra::scalars()),
        (k, Some(n)) if k == "product" => Ok(TabAlgebra::product(n)),
        (k, Some(n)) if k == "matrices" => Ok(TabAlgebra::matrices(n)),
        _ => Err(CliError::validation(owner, format!("unknown algebra `{spec}`"))),
    }
}

fn insert<T>(map: &mut BTreeMap<String, T>, seen: &mut BTreeSet<String>, name: &str, value: T) -> Result<()> {
    if !seen.insert(name.to_string()) {
        return Err(CliError::validation(name, "name declared twice"));
    }
    map.insert(name.to_string(), value);
    Ok(())
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawScenario = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_column(text, s.start));
            CliError::Parse { line, column, message: e.message().to_string() }
        })?;
        Self::build(raw)
    }

    fn build(raw: RawScenario) -> Result<Self> {
        let mut s = Scenario { base_dim: raw.base_dim, tasks: raw.task, ..Default::default() };
        let mut seen = BTreeSet::new();
        for g in raw.group {
            let name = g.name.as_str();
            let group = match (&g.builtin, &g.table) {
                (Some(spec), None) => match builtin_arg(spec, name)? {
                    (k, Some(n)) if k == "cyclic" => FiniteGroup::cyclic(n),
                    (k, Some(n)) if k == "symmetric" => FiniteGroup::symmetric(n),
                    _ => return Err(CliError::validation(name, format!("unknown group `{spec}`"))),
                },
                (None, Some(table)) => {
                    let order = g.order.unwrap_or_else(|| (table.len() as f64).sqrt().round() as usize);
                    FiniteGroup::from_table(order, table.clone())
                }
                _ => return Err(CliError::validation(name, "give exactly one of `builtin` and `table`")),
            }
            .map_err(|e| CliError::validation(name, e))?;
            insert(&mut s.groups, &mut seen, name, group)?;
        }
        for l in raw.lie {
            let name = l.name.as_str();
            let algebra = match (&l.builtin, l.dim) {
                (Some(spec), None) => match builtin_arg(spec, name)? {
                    (k, Some(d)) if k == "abelian" => LieAlgebra::abelian(d),
                    (k, None) => LieAlgebra::builtin(&k)
                        .ok_or_else(|| CliError::validation(name, format!("unknown Lie algebra `{spec}`")))?,
                    _ => return Err(CliError::validation(name, format!("unknown Lie algebra `{spec}`"))),
                },
                (None, Some(dim)) => {
                    let entries = l
                        .constants
                        .iter()
                        .map(|(i, j, k, c)| Ok((*i, *j, *k, c.scalar(name)?)))
                        .collect::<Result<Vec<_>>>()?;
                    LieAlgebra::new(name, dim, &entries).map_err(|e| CliError::validation(name, e))?
                }
                _ => return Err(CliError::validation(name, "give exactly one of `builtin` and `dim`")),
            };
            insert(&mut s.lies, &mut seen, name, algebra)?;
        }
        for m in raw.metric {
            let name = m.name.as_str();
            let lie = match &m.lie {
                Some(l) => Some(
                    s.lies.get(l).cloned().ok_or_else(|| CliError::validation(name, format!("unknown Lie algebra `{l}`")))?,
                ),
                None => None,
            };
            let base = match &m.base {
                Some(rows) => {
                    let rows = rows
                        .iter()
                        .map(|r| r.iter().map(|x| x.field(name)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    Matrix::from_rows(rows).map_err(|e| CliError::validation(name, e))?
                }
                None => Matrix::zeros(0, 0),
            };
            let metric = BlockMetric::new(base, lie).map_err(|e| CliError::validation(name, e))?;
            insert(&mut s.metrics, &mut seen, name, metric)?;
        }
        for m in raw.matrix {
            let name = m.name.as_str();
            let entries = m.entries.iter().map(|x| x.field(name)).collect::<Result<Vec<_>>>()?;
            let mut field = MatrixField::from_entries(m.n, entries).map_err(|e| CliError::validation(name, e))?;
            if let Some(d) = &m.domain {
                field = field.with_domain(open_box(d, name)?);
            }
            insert(&mut s.matrices, &mut seen, name, field)?;
        }
        for k in raw.kernel {
            let name = k.name.as_str();
            let entries = k
                .entries
                .iter()
                .map(|(i, j, re, im)| {
                    let (re, im) = (re.real(name)?, im.real(name)?);
                    Ok(((*i, *j), GaussianRational::new(re, im)))
                })
                .collect::<Result<Vec<_>>>()?;
            insert(&mut s.kernels, &mut seen, name, FinSuppKernel::from_entries(entries))?;
        }
        for g in raw.grid {
            let name = g.name.as_str();
            let grid = match (&g.points, &g.domain) {
                (Some(points), None) => {
                    let points = points
                        .iter()
                        .map(|p| p.iter().map(|x| x.scalar(name)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    match &g.weights {
                        Some(w) => {
                            let w = w.iter().map(|x| x.real(name)).collect::<Result<Vec<_>>>()?;
                            SampleGrid::new(points, w)
                        }
                        None => SampleGrid::from_points(points),
                    }
                }
                (None, Some(domain)) => {
                    let b = open_box(domain, name)?;
                    let subdivisions = g.subdivisions.clone().unwrap_or_else(|| vec![8; b.dim()]);
                    SampleGrid::from_box(&b, &subdivisions)
                }
                _ => return Err(CliError::validation(name, "give exactly one of `points` and `domain`")),
            }
            .map_err(|e| CliError::validation(name, e))?;
            insert(&mut s.grids, &mut seen, name, grid)?;
        }
        for t in raw.topology {
            let name = t.name.as_str();
            let topology = match (&t.builtin, &t.opens) {
                (Some(spec), None) => match builtin_arg(spec, name)? {
                    (k, Some(n)) if k == "discrete" => Ok(FiniteTopology::discrete(n)),
                    (k, Some(n)) if k == "indiscrete" => Ok(FiniteTopology::indiscrete(n)),
                    (k, None) if k == "sierpinski" => Ok(FiniteTopology::sierpinski()),
                    _ => return Err(CliError::validation(name, format!("unknown topology `{spec}`"))),
                },
                (None, Some(opens)) => {
                    let points = t.points.ok_or_else(|| CliError::validation(name, "missing `points`"))?;
                    FiniteTopology::from_sets(points, opens)
                }
                _ => return Err(CliError::validation(name, "give exactly one of `builtin` and `opens`")),
            }
            .map_err(|e| CliError::validation(name, e))?;
            insert(&mut s.topologies, &mut seen, name, topology)?;
        }
        for p in raw.presheaf {
            let name = p.name.as_str();
            let topology = s
                .topologies
                .get(&p.topology)
                .cloned()
                .ok_or_else(|| CliError::validation(name, format!("unknown topology `{}`", p.topology)))?;
            let presheaf = match p.kind.as_str() {
                "constant" | "functions" => {
                    let algebra = tab_algebra(p.algebra.as_deref().unwrap_or("scalars"), name)?;
                    if p.kind == "constant" {
                        Presheaf::constant(topology, algebra)
                    } else {
                        Presheaf::functions(topology, algebra)
                    }
                }
                "tabulated" => tabulated(name, topology, &p)?,
                other => return Err(CliError::validation(name, format!("unknown presheaf kind `{other}`"))),
            };
            insert(&mut s.presheaves, &mut seen, name, presheaf)?;
        }
        Ok(s)
    }
}

fn tabulated(name: &str, topology: FiniteTopology, p: &RawPresheaf) -> Result<Presheaf> {
    let mut by_open = BTreeMap::new();
    for sec in &p.sections {
        let mut table = sec.table.iter().map(|x| x.scalar(name)).collect::<Result<Vec<_>>>()?;
        if table.is_empty() {
            table = vec![GaussianRational::from_int(0); sec.dim.pow(3)];
        }
        let algebra = TabAlgebra::new(sec.dim, table).map_err(|e| CliError::validation(name, e))?;
        by_open.insert(mask(&sec.open, name)?, algebra);
    }
    let mut sections = Vec::new();
    for &u in topology.opens() {
        let a = by_open.remove(&u).ok_or_else(|| {
            CliError::validation(name, format!("no section algebra for {}", ncg_core::sheaf::fmt_set(u)))
        })?;
        sections.push(a);
    }
    if let Some(&u) = by_open.keys().next() {
        return Err(CliError::validation(name, format!("{} is not open", ncg_core::sheaf::fmt_set(u))));
    }
    let mut restrictions = BTreeMap::new();
    for r in &p.restrictions {
        let rows = r
            .matrix
            .iter()
            .map(|row| row.iter().map(|x| x.scalar(name)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = if rows.is_empty() { QMatrix::zeros(0, 0) } else { QMatrix::from_rows(rows).map_err(|e| CliError::validation(name, e))? };
        restrictions.insert((mask(&r.from, name)?, mask(&r.to, name)?), m);
    }
    // identities and maps out of zero-dimensional algebras may be omitted
    for (k, &u) in topology.opens().iter().enumerate() {
        for (j, &v) in topology.opens().iter().enumerate() {
            if v & !u != 0 || restrictions.contains_key(&(u, v)) {
                continue;
            }
            let (du, dv) = (sections[k].dim(), sections[j].dim());
            if u == v {
                restrictions.insert((u, v), QMatrix::identity(du));
            } else if du == 0 || dv == 0 {
                restrictions.insert((u, v), QMatrix::zeros(dv, du));
            }
        }
    }
    Presheaf::from_parts(topology, sections, restrictions).map_err(|e| CliError::validation(name, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_column_counts_from_one() {
        assert_eq!(line_column("ab\ncd", 0), (1, 1));
        assert_eq!(line_column("ab\ncd", 4), (2, 2));
    }

    #[test]
    fn builtins_resolve() {
        let s = Scenario::parse(
            "[[group]]\nname = \"c3\"\nbuiltin = \"cyclic:3\"\n\
             [[group]]\nname = \"s3\"\nbuiltin = \"symmetric:3\"\n\
             [[lie]]\nname = \"a\"\nbuiltin = \"abelian:2\"\n\
             [[topology]]\nname = \"t\"\nbuiltin = \"indiscrete:3\"\n",
        )
        .unwrap();
        assert_eq!(s.groups["c3"].order(), 3);
        assert_eq!(s.groups["s3"].order(), 6);
        assert_eq!(s.lies["a"].dim(), 2);
        assert_eq!(s.topologies["t"].opens().len(), 2);
    }

    #[test]
    fn names_are_unique_across_kinds() {
        let err = Scenario::parse("[[group]]\nname = \"x\"\nbuiltin = \"cyclic:2\"\n[[lie]]\nname = \"x\"\nbuiltin = \"su2\"\n")
            .unwrap_err();
        assert!(matches!(err, CliError::Validation { name, .. } if name == "x"));
    }

    #[test]
    fn unknown_fields_are_parse_errors() {
        assert!(matches!(Scenario::parse("colour = 3\n"), Err(CliError::Parse { line: 1, .. })));
    }

    #[test]
    fn numbers_accept_integers_and_expressions() {
        assert_eq!(Num::Int(-3).scalar("n").unwrap(), GaussianRational::from_int(-3));
        assert!(Num::Text("1/2 + i".into()).scalar("n").unwrap().im == BigRational::from_integer(1.into()));
        assert!(Num::Text("i".into()).real("n").is_err());
        assert!(Num::Text("x1/(x2 + 1)".into()).field("n").is_ok());
    }

    #[test]
    fn bad_builtin_sizes_are_rejected() {
        assert!(Scenario::parse("[[group]]\nname = \"g\"\nbuiltin = \"cyclic:q\"\n").is_err());
        assert!(Scenario::parse("[[topology]]\nname = \"t\"\nbuiltin = \"cofinite\"\n").is_err());
    }
}
