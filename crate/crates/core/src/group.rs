//! Finite groups given by Cayley tables.

use std::fmt;

use crate::error::{Error, Result};

/// Largest order accepted; every check here is a cubic table scan.
pub const MAX_GROUP_ORDER: usize = 200;

/// First failure found by [`verify_group_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupViolation {
    Shape { order: usize, entries: usize },
    OutOfRange { row: usize, col: usize, value: usize },
    Associativity { a: usize, b: usize, c: usize },
    NoIdentity,
    NoInverse { element: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape { order, entries } => {
                write!(f, "table has {entries} entries, expected {}", order * order)
            }
            Self::OutOfRange { row, col, value } => {
                write!(f, "entry ({row}, {col}) = {value} is not an element")
            }
            Self::Associativity { a, b, c } => {
                write!(f, "associativity fails for ({a}, {b}, {c})")
            }
            Self::NoIdentity => write!(f, "no identity element"),
            Self::NoInverse { element } => write!(f, "element {element} has no inverse"),
        }
    }
}

/// Exhaustive check of closure, associativity, identity and inverses for a
/// row-major table with `table[a * order + b] = a·b`.
pub fn verify_group_axioms(order: usize, table: &[usize]) -> std::result::Result<(), GroupViolation> {
    if table.len() != order * order || order == 0 {
        return Err(GroupViolation::Shape { order, entries: table.len() });
    }
    let mul = |a: usize, b: usize| table[a * order + b];
    for a in 0..order {
        for b in 0..order {
            let v = mul(a, b);
            if v >= order {
                return Err(GroupViolation::OutOfRange { row: a, col: b, value: v });
            }
        }
    }
    for a in 0..order {
        for b in 0..order {
            let ab = mul(a, b);
            for c in 0..order {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Err(GroupViolation::Associativity { a, b, c });
                }
            }
        }
    }
    let identity = (0..order)
        .find(|&e| (0..order).all(|a| mul(e, a) == a && mul(a, e) == a))
        .ok_or(GroupViolation::NoIdentity)?;
    for a in 0..order {
        if !(0..order).any(|b| mul(a, b) == identity && mul(b, a) == identity) {
            return Err(GroupViolation::NoInverse { element: a });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {order} exceeds the limit of {MAX_GROUP_ORDER}"
            )));
        }
        verify_group_axioms(order, &table).map_err(|v| Error::InvalidGroup(v.to_string()))?;
        let mul = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order).find(|&e| (0..order).all(|a| mul(e, a) == a)).unwrap();
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| mul(a, b) == identity).unwrap())
            .collect();
        Ok(Self { order, table, identity, inverse })
    }

    /// `ℤ/n` with addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_table(n, table)
    }

    /// The symmetric group on `k` letters; elements are permutations in
    /// lexicographic order and `a·b` means "apply `b`, then `a`".
    pub fn symmetric(k: usize) -> Result<Self> {
        let perms = permutations(k);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                let ab: Vec<usize> = (0..k).map(|i| a[b[i]]).collect();
                table.push(index(&ab));
            }
        }
        Self::from_table(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.order
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}
