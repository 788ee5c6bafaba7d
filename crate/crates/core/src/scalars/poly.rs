//! Sparse multivariate polynomials over `ℚ(i)`.
//!
//! Monomials are exponent vectors with trailing zeros trimmed, so `x1` and
//! `x1*x2^0` share a key and polynomials in different numbers of variables mix
//! freely. Terms are ordered lexicographically (`x1 > x2 > ...`); the leading
//! term is the largest key.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gaussian::GaussianRational;

/// Exponent vector, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// `x_{var+1}^exp` (variables are 0-indexed internally).
    pub fn var(var: usize, exp: u32) -> Self {
        let mut e = vec![0; var + 1];
        e[var] = exp;
        Self::new(e)
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let e = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial::new(e)
    }

    /// `self / other` if `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (i, &o) in other.0.iter().enumerate() {
            if e[i] < o {
                return None;
            }
            e[i] -= o;
        }
        Some(Monomial::new(e))
    }

    fn with_exp(&self, var: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        if e.len() <= var {
            e.resize(var + 1, 0);
        }
        e[var] = exp;
        Monomial::new(e)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// The coordinate `x_{var+1}`.
    pub fn var(var: usize) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(var, 1))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> GaussianRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussianRational::zero)
    }

    /// Number of variables actually referenced (one past the largest index).
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect(),
        }
    }

    pub fn partial(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            out.add_term(m.with_exp(var, e - 1), &(c * &GaussianRational::from_int(e as i64)));
        }
        out
    }

    /// Evaluates at `point`; variables beyond `point.len()` must not occur.
    pub fn eval(&self, point: &[GaussianRational]) -> Option<GaussianRational> {
        if self.num_vars() > point.len() {
            return None;
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc += &t;
        }
        Some(acc)
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => Poly::zero(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(lm)?;
            let c = rc * &lc_inv;
            rem = &rem - &divisor.mul_term(&m, &c);
            quot.add_term(m, &c);
        }
        Some(quot)
    }

    /// View as a univariate polynomial in `var`: coefficient of `var^k` at index `k`.
    fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            out[k].add_term(m.with_exp(var, 0), c);
        }
        out
    }

    /// Pseudo-remainder of `self` by `b` with respect to `var`.
    fn pseudo_rem(&self, b: &Poly, var: usize) -> Poly {
        let db = b.degree_in(var);
        let lb = b.coefficients_in(var).pop().expect("nonzero divisor");
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= db {
            let dr = r.degree_in(var);
            let lr = r.coefficients_in(var).pop().unwrap();
            let shift = Monomial::var(var, dr - db);
            r = &(&r * &lb) - &(&lr * b).mul_term(&shift, &GaussianRational::one());
        }
        r
    }

    /// `lc(b)^(deg a − deg b + 1) · a mod b` in `var`.
    fn full_pseudo_rem(&self, b: &Poly, var: usize) -> Poly {
        let db = b.degree_in(var);
        let lb = b.coefficients_in(var).pop().expect("nonzero divisor");
        let mut r = self.clone();
        let mut steps = self.degree_in(var) - db + 1;
        while !r.is_zero() && r.degree_in(var) >= db {
            let dr = r.degree_in(var);
            let lr = r.coefficients_in(var).pop().unwrap();
            let shift = Monomial::var(var, dr - db);
            r = &(&r * &lb) - &(&lr * b).mul_term(&shift, &GaussianRational::one());
            steps -= 1;
        }
        &r * &lb.pow(steps)
    }

    pub(crate) fn content_in(&self, var: usize) -> Poly {
        let mut g = Poly::zero();
        for c in self.coefficients_in(var) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn lowest_var(&self) -> Option<usize> {
        let n = self.num_vars();
        (0..n).find(|&v| self.degree_in(v) > 0)
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    if coprime_by_evaluation(a, b) {
        return Poly::one();
    }
    if let Some(var) = common_single_var(a, b) {
        return univariate_gcd(a, b, var);
    }
    if let Some(g) = gcd_by_division(a, b) {
        return g;
    }
    if let Some(g) = gcd_by_interpolation(a, b) {
        return g;
    }
    gcd_prs(a, b)
}

fn vars_used(p: &Poly) -> Vec<usize> {
    (0..p.num_vars()).filter(|&v| p.degree_in(v) > 0).collect()
}

/// The variable both inputs live in, when there is just one.
fn common_single_var(a: &Poly, b: &Poly) -> Option<usize> {
    match (vars_used(a).as_slice(), vars_used(b).as_slice()) {
        (&[x], &[y]) if x == y => Some(x),
        _ => None,
    }
}

fn univariate_gcd(a: &Poly, b: &Poly, var: usize) -> Poly {
    let g = dense_gcd(specialize(a, var, &[]), specialize(b, var, &[]));
    Poly::from_terms(g.into_iter().enumerate().map(|(k, c)| (Monomial::var(var, k as u32), c)))
}

/// Groups terms by their monomial with `y` removed, each group read as a
/// univariate polynomial in `y`.
fn split_over(p: &Poly, y: usize) -> BTreeMap<Monomial, Poly> {
    let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
    for (m, c) in &p.terms {
        out.entry(m.with_exp(y, 0)).or_insert_with(Poly::zero).add_term(Monomial::var(y, m.exp(y)), c);
    }
    out
}

fn content_over(p: &Poly, y: usize) -> Poly {
    let mut g = Poly::zero();
    for c in split_over(p, y).values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn eval_var(p: &Poly, y: usize, c: &GaussianRational) -> Poly {
    let mut out = Poly::zero();
    for (m, k) in &p.terms {
        out.add_term(m.with_exp(y, 0), &(k * &c.pow(m.exp(y))));
    }
    out
}

/// Newton interpolation; coefficients in ascending degree.
fn interpolate(xs: &[GaussianRational], ys: &[GaussianRational]) -> Vec<GaussianRational> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let den = (&xs[i] - &xs[i - j]).inv().expect("distinct nodes");
            coef[i] = &(&coef[i] - &coef[i - 1]) * &den;
        }
    }
    let mut out = vec![coef[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // out <- out * (y - xs[i]) + coef[i]
        let mut next = vec![GaussianRational::zero(); out.len() + 1];
        for (k, c) in out.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= &(c * &xs[i]);
        }
        next[0] += &coef[i];
        out = next;
    }
    out
}

/// Upper bound on the degree in `y` of `gcd(a, b)`, from one specialization
/// of the other variables that keeps both leading coefficients in `y`.
fn degree_bound_in(a: &Poly, b: &Poly, y: usize) -> u32 {
    let (da, db) = (a.degree_in(y), b.degree_in(y));
    let n = a.num_vars().max(b.num_vars());
    for attempt in 0..4i64 {
        let point: Vec<GaussianRational> =
            (0..n).map(|w| GaussianRational::from_int(3 + 2 * w as i64 + 7 * attempt)).collect();
        let (sa, sb) = (specialize(a, y, &point), specialize(b, y, &point));
        if !sa[da as usize].is_zero() && !sb[db as usize].is_zero() {
            return dense_gcd_degree(sa, sb) as u32;
        }
    }
    da.min(db)
}

/// Brown's dense gcd with ℚ(i) in place of a prime field: evaluate the last
/// variable, take gcds recursively, interpolate, then verify by division.
fn gcd_by_interpolation(a: &Poly, b: &Poly) -> Option<Poly> {
    let mut vars = vars_used(a);
    vars.extend(vars_used(b));
    let y = vars.iter().copied().max()?;
    if vars.iter().all(|&v| v == y) {
        return None;
    }
    let (ca, cb) = (content_over(a, y), content_over(b, y));
    let cg = gcd(&ca, &cb);
    let a1 = a.div_exact(&ca)?;
    let b1 = b.div_exact(&cb)?;
    if a1.as_constant().is_some() || b1.as_constant().is_some() {
        return Some(cg.monic());
    }
    let lead = |p: &Poly| split_over(p, y).pop_last().expect("nonzero").1;
    let (la, lb) = (lead(&a1), lead(&b1));
    let gamma = gcd(&la, &lb);
    let bound = (degree_bound_in(&a1, &b1, y) + gamma.degree_in(y)) as usize;
    let mut point = vec![GaussianRational::zero(); y + 1];
    let mut at = |p: &Poly, c: &GaussianRational| {
        point[y] = c.clone();
        p.eval(&point).expect("univariate in y")
    };
    let mut best: Option<Monomial> = None;
    let mut nodes: Vec<GaussianRational> = Vec::new();
    let mut images: Vec<Poly> = Vec::new();
    for c in 1..=(2 * bound as i64 + 32) {
        let c = GaussianRational::from_int(c);
        if at(&la, &c).is_zero() || at(&lb, &c).is_zero() {
            continue;
        }
        let g = gcd(&eval_var(&a1, y, &c), &eval_var(&b1, y, &c));
        if g.as_constant().is_some() {
            return Some(cg.monic());
        }
        let lm = g.leading_term().expect("nonzero").0.clone();
        match best.as_ref().map(|b| lm.cmp(b)) {
            Some(std::cmp::Ordering::Greater) => continue,
            Some(std::cmp::Ordering::Equal) => {}
            _ => {
                best = Some(lm);
                nodes.clear();
                images.clear();
            }
        }
        images.push(g.scale(&at(&gamma, &c)));
        nodes.push(c);
        if nodes.len() > bound {
            let mut monos: Vec<&Monomial> = images.iter().flat_map(|g| g.terms.keys()).collect();
            monos.sort();
            monos.dedup();
            let mut h = Poly::zero();
            for m in monos {
                let ys: Vec<GaussianRational> = images.iter().map(|g| g.coefficient(m)).collect();
                for (k, v) in interpolate(&nodes, &ys).iter().enumerate() {
                    h.add_term(m.with_exp(y, k as u32), v);
                }
            }
            let h = h.div_exact(&content_over(&h, y))?;
            if a1.div_exact(&h).is_some() && b1.div_exact(&h).is_some() {
                return Some((&cg * &h).monic());
            }
        }
    }
    None
}

fn gcd_prs(a: &Poly, b: &Poly) -> Poly {
    let var = match (a.lowest_var(), b.lowest_var()) {
        (Some(x), Some(y)) => x.min(y),
        _ => unreachable!("non-constant polynomials have a variable"),
    };
    let ca = a.content_in(var);
    let cb = b.content_in(var);
    let content = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    // subresultant remainder sequence in `var`: exact divisions keep the
    // coefficients from growing exponentially
    let mut g = Poly::one();
    let mut h = Poly::one();
    while q.degree_in(var) > 0 {
        let delta = p.degree_in(var) - q.degree_in(var);
        let r = p.full_pseudo_rem(&q, var);
        if r.is_zero() {
            break;
        }
        let divisor = &g * &h.pow(delta);
        p = q;
        q = r.div_exact(&divisor).expect("subresultant division is exact");
        g = p.coefficients_in(var).pop().expect("nonzero");
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
    if q.degree_in(var) > 0 {
        q = q.div_exact(&q.content_in(var)).expect("content divides");
    }
    let pp = if q.degree_in(var) == 0 { Poly::one() } else { q };
    (&content * &pp).monic()
}

/// When the smaller input has a constant leading coefficient in some
/// variable it is primitive there, and one division step reduces `a` without
/// computing its content.
fn gcd_by_division(a: &Poly, b: &Poly) -> Option<Poly> {
    let (big, small) = if a.num_terms() >= b.num_terms() { (a, b) } else { (b, a) };
    let var = (0..small.num_vars()).find(|&v| {
        let d = small.degree_in(v);
        d > 0 && big.degree_in(v) >= d && small.coefficients_in(v)[d as usize].as_constant().is_some()
    })?;
    let (mut p, mut q) = (big.clone(), small.clone());
    loop {
        // monic in `var`, so the pseudo-remainder is the true remainder
        let lc = q.coefficients_in(var).pop().and_then(|c| c.as_constant()).expect("constant leading coefficient");
        q = q.scale(&lc.inv().expect("nonzero"));
        let r = p.pseudo_rem(&q, var);
        if r.is_zero() {
            return Some(q.monic());
        }
        if r.degree_in(var) == 0 {
            return Some(Poly::one());
        }
        let d = r.degree_in(var);
        if r.coefficients_in(var)[d as usize].as_constant().is_none() {
            if coprime_by_evaluation(&q, &r) {
                return Some(Poly::one());
            }
            return Some(gcd_by_interpolation(&q, &r).unwrap_or_else(|| gcd_prs(&q, &r)));
        }
        (p, q) = (q, r);
    }
}

/// Coefficients in `var` after substituting `point` for the other variables.
fn specialize(p: &Poly, var: usize, point: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); p.degree_in(var) as usize + 1];
    for (m, c) in &p.terms {
        let mut v = c.clone();
        for (w, &e) in m.exps().iter().enumerate() {
            if w != var && e > 0 {
                v *= &point[w].pow(e);
            }
        }
        out[m.exp(var) as usize] += &v;
    }
    out
}

fn dense_gcd_degree(a: Vec<GaussianRational>, b: Vec<GaussianRational>) -> usize {
    dense_gcd(a, b).len().saturating_sub(1)
}

/// Monic univariate gcd on dense coefficient vectors.
fn dense_gcd(mut a: Vec<GaussianRational>, mut b: Vec<GaussianRational>) -> Vec<GaussianRational> {
    let trim = |v: &mut Vec<GaussianRational>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    // monic remainders keep the rational coefficients as small as they get
    let make_monic = |v: &mut Vec<GaussianRational>| {
        if let Some(inv) = v.last().and_then(|c| c.inv()) {
            if !inv.is_one() {
                for c in v.iter_mut() {
                    *c = &*c * &inv;
                }
            }
        }
    };
    trim(&mut a);
    trim(&mut b);
    make_monic(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let f = a[a.len() - 1].clone();
            let shift = a.len() - b.len();
            for (k, c) in b.iter().enumerate().take(b.len() - 1) {
                if !c.is_zero() {
                    a[shift + k] -= &(&f * c);
                }
            }
            a.pop();
            trim(&mut a);
        }
        make_monic(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    make_monic(&mut a);
    a
}

/// Proves `gcd(a, b) = 1` by specializing all variables but one at a time.
/// A common factor of degree `d` in `var` survives any specialization that
/// keeps both leading coefficients in `var` nonzero, so a constant univariate
/// gcd bounds its degree in `var` by zero. Returns `false` when inconclusive.
fn coprime_by_evaluation(a: &Poly, b: &Poly) -> bool {
    let n = a.num_vars().max(b.num_vars());
    for var in 0..n {
        let (da, db) = (a.degree_in(var), b.degree_in(var));
        if da == 0 || db == 0 {
            continue;
        }
        let mut decided = false;
        for attempt in 0..4i64 {
            let point: Vec<GaussianRational> =
                (0..n).map(|w| GaussianRational::from_int(2 + w as i64 + 5 * attempt)).collect();
            let (sa, sb) = (specialize(a, var, &point), specialize(b, var, &point));
            if sa[da as usize].is_zero() || sb[db as usize].is_zero() {
                continue;
            }
            if dense_gcd_degree(sa, sb) > 0 {
                return false;
            }
            decided = true;
            break;
        }
        if !decided {
            return false;
        }
    }
    true
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    /// Terms in decreasing order; non-integer coefficients are parenthesized
    /// so the output re-parses unambiguously.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Some(c) = self.as_constant().filter(GaussianRational::is_real) {
            return write!(f, "{c}");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = if c.is_real() && c.re < num_rational::BigRational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if neg {
                write!(f, "{}", if idx == 0 { "-" } else { " - " })?;
            } else if idx > 0 {
                write!(f, " + ")?;
            }
            let simple = mag.is_integer_real();
            match (m.is_one(), mag.is_one()) {
                (true, _) if simple => write!(f, "{mag}")?,
                (true, _) => write!(f, "({mag})")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) if simple => write!(f, "{mag}*{m}")?,
                (false, false) => write!(f, "({mag})*{m}")?,
            }
        }
        Ok(())
    }
}
