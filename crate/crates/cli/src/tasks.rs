//! Single operations named by `[[task]]` entries.

use std::time::Instant;

use ncg_core::conv::{center_basis, center_witness, kernel_commutant_dimension, MatrixField};
use ncg_core::geometry::{
    adjoint_ricci, connection_apply, curvature, half_bracket_curvature, koszul, metric_defect, ricci,
    scalar_curvature, torsion, BlockMetric, Connection, Sector,
};
use ncg_core::representation::{ess_sup_norm, pointwise_norms, represent};
use ncg_core::scalars::GaussianRational;
use ncg_core::sheaf::{fmt_set, glue, is_sheaf, sheafify, stalk, verify_presheaf, OpenSet};
use num_traits::Zero;
use toml::Value;

use crate::error::{CliError, Result};
use crate::report::{Entry, Status};
use crate::scenario::{RawTask, Scenario};
use crate::suites;

pub const NORM_TOLERANCE: f64 = 1e-12;

struct Task<'a> {
    index: usize,
    raw: &'a RawTask,
    scenario: &'a Scenario,
}

impl<'a> Task<'a> {
    fn err(&self, message: impl ToString) -> CliError {
        CliError::Task { index: self.index, op: self.raw.op.clone(), message: message.to_string() }
    }

    fn get(&self, key: &str) -> Option<&'a Value> {
        self.raw.args.get(key)
    }

    fn str(&self, key: &str) -> Result<&'a str> {
        self.get(key).and_then(Value::as_str).ok_or_else(|| self.err(format!("missing string argument `{key}`")))
    }

    fn int(&self, key: &str) -> Result<Option<i64>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.as_integer().map(Some).ok_or_else(|| self.err(format!("`{key}` must be an integer"))),
        }
    }

    fn usize(&self, key: &str) -> Result<Option<usize>> {
        match self.int(key)? {
            Some(n) if n < 0 => Err(self.err(format!("`{key}` must be nonnegative"))),
            n => Ok(n.map(|n| n as usize)),
        }
    }

    fn lookup<T>(&self, map: &'a std::collections::BTreeMap<String, T>, key: &str, kind: &str) -> Result<&'a T> {
        let name = self.str(key)?;
        map.get(name).ok_or_else(|| self.err(format!("unknown {kind} `{name}`")))
    }

    fn sector(&self) -> Result<Sector> {
        match self.get("sector").and_then(Value::as_str) {
            None | Some("vertical") => Ok(Sector::Vertical),
            Some("horizontal") => Ok(Sector::Horizontal),
            Some("inner") => Ok(Sector::Inner),
            Some(other) => Err(self.err(format!("unknown sector `{other}`"))),
        }
    }

    fn set(&self, v: &Value) -> Result<OpenSet> {
        let pts = v.as_array().ok_or_else(|| self.err("open sets are lists of points"))?;
        let mut m = 0;
        for p in pts {
            match p.as_integer() {
                Some(p) if (0..32).contains(&p) => m |= 1 << p,
                _ => return Err(self.err("points are small nonnegative integers")),
            }
        }
        Ok(m)
    }

    fn name(&self) -> String {
        let mut parts = vec![self.raw.op.clone()];
        for (k, v) in &self.raw.args {
            if k != "expect" {
                parts.push(format!("{k}={}", v.to_string().trim_matches('"')));
            }
        }
        parts.join(" ")
    }

    /// A computed value, turned into a check when the task gives `expect`.
    fn value(&self, anchor: &str, value: String) -> Entry {
        match self.get("expect") {
            Some(want) => {
                let want = match want {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let ok = want == value;
                let shown = if ok { value } else { format!("{value} (expected {want})") };
                Entry::check(self.name(), anchor, ok, shown)
            }
            None => Entry::new(self.name(), anchor, Status::Value, value),
        }
    }
}

fn metric_basis(t: &Task, g: &BlockMetric, sector: Sector) -> Result<Vec<ncg_core::geometry::Derivation>> {
    g.sector_basis(sector).map_err(|e| t.err(e))
}

fn run_task(t: &Task, seed: u64) -> Result<Vec<Entry>> {
    let s = t.scenario;
    let e = |x: ncg_core::Error| t.err(x);
    let entries = match t.raw.op.as_str() {
        "suite" => suites::run(t.str("name")?, seed).map_err(|x| t.err(x))?.entries,
        "group" => {
            let g = t.lookup(&s.groups, "group", "group")?;
            vec![t.value("Cayley table satisfies the group axioms", format!("order {}", g.order()))]
        }
        "convolve" => {
            let a = t.lookup(&s.matrices, "a", "matrix")?;
            let b = t.lookup(&s.matrices, "b", "matrix")?;
            vec![t.value("(a∗b)(x) = a(x)b(x)", a.convolve(b).map_err(e)?.to_string())]
        }
        "associativity" => {
            let [a, b, c] = ["a", "b", "c"].map(|k| t.lookup(&s.matrices, k, "matrix"));
            let (a, b, c) = (a?, b?, c?);
            let left = a.convolve(b).and_then(|ab| ab.convolve(c)).map_err(e)?;
            let right = b.convolve(c).and_then(|bc| a.convolve(&bc)).map_err(e)?;
            vec![Entry::check(t.name(), "(a∗b)∗c = a∗(b∗c)", left == right, left.to_string())]
        }
        "commutator" => {
            let a = t.lookup(&s.matrices, "a", "matrix")?;
            let b = t.lookup(&s.matrices, "b", "matrix")?;
            vec![t.value("[a, b] = a∗b − b∗a", a.commutator(b).map_err(e)?.to_string())]
        }
        "center" => {
            let n = t.usize("n")?.ok_or_else(|| t.err("missing `n`"))?;
            let base_dim = t.usize("base_dim")?.or(s.base_dim).unwrap_or(1);
            let degree = t.usize("degree")?.unwrap_or(2) as u32;
            let basis = center_basis(n, base_dim, degree);
            let shown: Vec<String> = basis.iter().map(ToString::to_string).collect();
            let ok = basis == vec![MatrixField::identity(n)];
            vec![Entry::check(t.name(), "Z(M_n(C(U))) = {f·1}", ok, format!("span{{{}}}", shown.join(", ")))]
        }
        "witness" => {
            let a = t.lookup(&s.kernels, "kernel", "kernel")?;
            let y0 = match t.int("y0")? {
                Some(y) => y,
                None => *a.columns().iter().next().ok_or_else(|| t.err("kernel is zero"))?,
            };
            let w = center_witness(a, y0).map_err(e)?;
            let ab = a.convolve(&w.b);
            let ba = w.b.convolve(a);
            let ok = ab.is_zero() && !ba.is_zero();
            vec![Entry::check(
                t.name(),
                "a∗b = 0 and b∗a ≠ 0 for b = b₁ ⊗ conj(a(·, y₀))",
                ok,
                format!("b = {}; (b∗a)({}, {y0}) = {}", w.b, w.x0, w.value),
            )]
        }
        "commutant" => {
            let window = t.usize("window")?.unwrap_or(3);
            let dim = kernel_commutant_dimension(window);
            vec![Entry::check(t.name(), "commutant of the kernel generators is {0}", dim == 0, format!("dimension {dim}"))]
        }
        "norm" => {
            let a = t.lookup(&s.matrices, "matrix", "matrix")?;
            let grid = t.lookup(&s.grids, "grid", "grid")?;
            let norm = ess_sup_norm(&represent(a, grid).map_err(e)?);
            let entry = match t.get("expect") {
                Some(v) => {
                    let want = v.as_float().or_else(|| v.as_integer().map(|n| n as f64)).or_else(|| {
                        v.as_str().and_then(|x| x.parse::<GaussianRational>().ok()).map(|c| c.to_f64_pair().0)
                    });
                    let want = want.ok_or_else(|| t.err("`expect` must be a number"))?;
                    let ok = (norm - want).abs() <= NORM_TOLERANCE * want.abs().max(1.0);
                    Entry::check(t.name(), "‖A‖ = ess sup ‖A(x)‖", ok, format!("{norm:.15}"))
                }
                None => Entry::new(t.name(), "‖A‖ = ess sup ‖A(x)‖", Status::Value, format!("{norm:.15}")),
            };
            vec![entry.with_tolerance(NORM_TOLERANCE)]
        }
        "pointwise_norms" => {
            let a = t.lookup(&s.matrices, "matrix", "matrix")?;
            let grid = t.lookup(&s.grids, "grid", "grid")?;
            let norms = pointwise_norms(&represent(a, grid).map_err(e)?);
            grid.points()
                .iter()
                .zip(norms)
                .map(|(p, v)| {
                    let p: Vec<String> = p.iter().map(ToString::to_string).collect();
                    Entry::new(t.name(), "‖A(x)‖", Status::Value, format!("({}) {v:.15}", p.join(", ")))
                        .with_tolerance(NORM_TOLERANCE)
                })
                .collect()
        }
        "killing" => {
            let l = t.lookup(&s.lies, "lie", "Lie algebra")?;
            vec![t.value("B(u, v) = Tr(ad u ad v)", l.killing_form().matrix.to_string())]
        }
        "christoffel" => {
            let g = t.lookup(&s.metrics, "metric", "metric")?;
            let conn = Connection::levi_civita(g).map_err(e)?;
            let m = g.base_dim();
            let mut out = Vec::new();
            for k in 0..m {
                for i in 0..m {
                    for j in 0..m {
                        if let Some(c) = conn.christoffel(k, i, j).filter(|c| !c.is_zero()) {
                            out.push(format!("Γ^{}_{}{} = {c}", k + 1, i + 1, j + 1));
                        }
                    }
                }
            }
            vec![t.value("Γ^k_ij = Σ_l g^kl koszul(∂i, ∂j, ∂l)", if out.is_empty() { "0".into() } else { out.join("; ") })]
        }
        "koszul" => {
            let g = t.lookup(&s.metrics, "metric", "metric")?;
            let sector = t.sector()?;
            let conn = Connection::for_sector(g, sector).map_err(e)?;
            let basis = metric_basis(t, g, sector)?;
            let mut bad = 0;
            let mut count = 0;
            for u in &basis {
                for v in &basis {
                    for w in &basis {
                        let lhs = g.value(&connection_apply(&conn, u, v).map_err(e)?, w).map_err(e)?;
                        bad += usize::from(lhs != koszul(g, u, v, w).map_err(e)?);
                        count += 1;
                    }
                }
            }
            vec![Entry::check(t.name(), "G(∇_u v, w) = koszul(u, v, w)", bad == 0, format!("{count} triples, {bad} mismatches"))]
        }
        "levi_civita" => {
            let g = t.lookup(&s.metrics, "metric", "metric")?;
            let conn = Connection::levi_civita(g).map_err(e)?;
            let basis = metric_basis(t, g, Sector::Horizontal)?;
            let mut bad = 0;
            for u in &basis {
                for v in &basis {
                    bad += usize::from(!torsion(&conn, u, v).map_err(e)?.is_zero());
                    for w in &basis {
                        bad += usize::from(!metric_defect(g, &conn, u, v, w).map_err(e)?.is_zero());
                    }
                }
            }
            vec![Entry::check(t.name(), "T = 0 and ∇G = 0", bad == 0, format!("{bad} violations"))]
        }
        "curvature" => {
            let g = t.lookup(&s.metrics, "metric", "metric")?;
            let conn = Connection::for_sector(g, Sector::Vertical).map_err(e)?;
            let basis = metric_basis(t, g, Sector::Vertical)?;
            let mut bad = 0;
            for u in &basis {
                for v in &basis {
                    for w in &basis {
                        let r = curvature(&conn, u, v, w).map_err(e)?;
                        bad += usize::from(r != half_bracket_curvature(&conn, u, v, w).map_err(e)?);
                    }
                }
            }
            vec![Entry::check(t.name(), "R(u, v)w = −¼[[u, v], w]", bad == 0, format!("{bad} mismatches"))]
        }
        "ricci" => {
            let g = t.lookup(&s.metrics, "metric", "metric")?;
            let sector = t.sector()?;
            let basis = metric_basis(t, g, sector)?;
            let prefix = if sector == Sector::Horizontal { "∂" } else { "e" };
            let mut out = Vec::new();
            for (i, u) in basis.iter().enumerate() {
                for (j, w) in basis.iter().enumerate() {
                    let r = ricci(g, sector, u, w).map_err(e)?;
                    out.push(Entry::new(
                        t.name(),
                        "ric(u, w) = Tr(v ↦ R(u, v)w)",
                        Status::Value,
                        format!("ric({prefix}{}, {prefix}{}) = {r}", i + 1, j + 1),
                    ));
                }
            }
            out
        }
        "adjoint_ricci" => {
            let g = t.lookup(&s.metrics, "metric", "metric")?;
            let m = adjoint_ricci(g, t.sector()?).map_err(e)?;
            vec![t.value("G(ℛu, w) = ric(u, w)", m.to_string())]
        }
        "scalar_curvature" => {
            let g = t.lookup(&s.metrics, "metric", "metric")?;
            let r = scalar_curvature(g, t.sector()?).map_err(e)?;
            vec![t.value("r = Tr ℛ", format!("r = {r}"))]
        }
        "presheaf" => {
            let f = t.lookup(&s.presheaves, "presheaf", "presheaf")?;
            let out = verify_presheaf(f);
            let shown = match &out {
                Ok(()) => "identity, functoriality and multiplicativity hold".to_string(),
                Err(v) => v.to_string(),
            };
            vec![Entry::check(t.name(), "ρ_UU = id, ρ_VW ρ_UV = ρ_UW, ρ multiplicative", out.is_ok(), shown)]
        }
        "is_sheaf" => {
            let f = t.lookup(&s.presheaves, "presheaf", "presheaf")?;
            let shown = match is_sheaf(f).map_err(e)? {
                Ok(()) => "sheaf".to_string(),
                Err(v) => format!("not a sheaf: {v}"),
            };
            vec![t.value("locality and gluing over every cover", shown)]
        }
        "stalk" => {
            let f = t.lookup(&s.presheaves, "presheaf", "presheaf")?;
            let p = t.usize("point")?.ok_or_else(|| t.err("missing `point`"))?;
            let st = stalk(f, p).map_err(e)?;
            vec![t.value(
                "F_p = F(U_p) for the minimal neighbourhood U_p",
                format!("dimension {} over {}", st.algebra.dim(), fmt_set(st.neighbourhood)),
            )]
        }
        "glue" => {
            let f = t.lookup(&s.presheaves, "presheaf", "presheaf")?;
            let cover = t
                .get("cover")
                .and_then(Value::as_array)
                .ok_or_else(|| t.err("missing `cover`"))?
                .iter()
                .map(|v| t.set(v))
                .collect::<Result<Vec<_>>>()?;
            let family = t
                .get("family")
                .and_then(Value::as_array)
                .ok_or_else(|| t.err("missing `family`"))?
                .iter()
                .map(|sec| {
                    sec.as_array()
                        .ok_or_else(|| t.err("sections are lists of numbers"))?
                        .iter()
                        .map(|x| {
                            let text = x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string());
                            text.parse::<GaussianRational>().map_err(|er| t.err(er))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            vec![t.value("unique section restricting to a compatible family", glue(f, &cover, &family).map_err(e)?.to_string())]
        }
        "sheafify" => {
            let f = t.lookup(&s.presheaves, "presheaf", "presheaf")?;
            let plus = sheafify(f).map_err(e)?;
            let dims: Vec<String> = f
                .topology()
                .opens()
                .iter()
                .map(|&u| format!("{}: {}", fmt_set(u), plus.sheaf.algebra(u).map(|a| a.dim()).unwrap_or(0)))
                .collect();
            let tail = if plus.is_isomorphism() { "; F → F⁺ is an isomorphism" } else { "" };
            vec![t.value("F⁺(U) = compatible germ families", format!("{}{tail}", dims.join(", ")))]
        }
        other => return Err(t.err(format!("unknown operation `{other}`"))),
    };
    Ok(entries)
}

/// Runs one task, stamping each entry with the elapsed time.
pub fn execute(scenario: &Scenario, index: usize, seed: u64) -> Result<Vec<Entry>> {
    let task = Task { index, raw: &scenario.tasks[index], scenario };
    let start = Instant::now();
    let mut entries = run_task(&task, seed)?;
    let millis = start.elapsed().as_millis() as u64;
    for en in &mut entries {
        en.millis = millis;
    }
    Ok(entries)
}
