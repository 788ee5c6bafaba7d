use std::fmt;

use crate::error::{Error, Result};

/// A subset of the points `0..n`, as a bit mask.
pub type OpenSet = u32;

pub const MAX_POINTS: usize = 16;

/// A topology on the points `0..n`, given by its open sets.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct FiniteTopology {
    points: usize,
    /// Sorted by size, then by mask.
    opens: Vec<OpenSet>,
}

fn sort_key(m: &OpenSet) -> (u32, OpenSet) {
    (m.count_ones(), *m)
}

impl FiniteTopology {
    pub fn new(points: usize, opens: impl IntoIterator<Item = OpenSet>) -> Result<Self> {
        if points > MAX_POINTS {
            return Err(Error::InvalidTopology(format!("at most {MAX_POINTS} points are supported")));
        }
        let full = full_mask(points);
        let mut opens: Vec<OpenSet> = opens.into_iter().collect();
        if let Some(bad) = opens.iter().find(|&&m| m & !full != 0) {
            return Err(Error::InvalidTopology(format!("{} mentions a point outside 0..{points}", fmt_set(*bad))));
        }
        opens.sort_by_key(sort_key);
        opens.dedup();
        if !opens.contains(&0) {
            return Err(Error::InvalidTopology("the empty set must be open".into()));
        }
        if !opens.contains(&full) {
            return Err(Error::InvalidTopology("the whole space must be open".into()));
        }
        for (i, &a) in opens.iter().enumerate() {
            for &b in &opens[i + 1..] {
                for c in [a | b, a & b] {
                    if opens.binary_search_by_key(&sort_key(&c), sort_key).is_err() {
                        let op = if c == a | b { "union" } else { "intersection" };
                        return Err(Error::InvalidTopology(format!(
                            "{op} of {} and {} is not open",
                            fmt_set(a),
                            fmt_set(b)
                        )));
                    }
                }
            }
        }
        Ok(Self { points, opens })
    }

    /// Opens given as lists of points.
    pub fn from_sets(points: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut m = 0;
            for &p in s {
                if p >= points {
                    return Err(Error::UnknownPoint(p));
                }
                m |= 1 << p;
            }
            masks.push(m);
        }
        Self::new(points, masks)
    }

    pub fn discrete(points: usize) -> Self {
        Self::new(points, 0..=full_mask(points)).expect("power set is a topology")
    }

    pub fn indiscrete(points: usize) -> Self {
        Self::new(points, [0, full_mask(points)]).expect("indiscrete topology")
    }

    /// `{∅, {0}, {0, 1}}`.
    pub fn sierpinski() -> Self {
        Self::new(2, [0b00, 0b01, 0b11]).expect("Sierpinski space")
    }

    /// Every topology on `points` points, by brute force over families of
    /// proper nonempty subsets. Feasible up to four points.
    pub fn enumerate(points: usize) -> Vec<Self> {
        assert!(points <= 4, "enumeration is limited to four points");
        let full = full_mask(points);
        let candidates: Vec<OpenSet> = (1..full).collect();
        let mut out = Vec::new();
        for choice in 0u32..(1 << candidates.len()) {
            let mut opens = vec![0, full];
            opens.extend(candidates.iter().enumerate().filter(|(k, _)| choice >> k & 1 == 1).map(|(_, &m)| m));
            if let Ok(t) = Self::new(points, opens) {
                out.push(t);
            }
        }
        out
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn full(&self) -> OpenSet {
        full_mask(self.points)
    }

    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn is_open(&self, set: OpenSet) -> bool {
        self.index(set).is_some()
    }

    /// Position of an open set in [`Self::opens`].
    pub fn index(&self, set: OpenSet) -> Option<usize> {
        self.opens.binary_search_by_key(&sort_key(&set), sort_key).ok()
    }

    pub(crate) fn require_open(&self, set: OpenSet) -> Result<usize> {
        self.index(set).ok_or_else(|| Error::CoverNotInTopology(fmt_set(set)))
    }

    pub(crate) fn require_point(&self, p: usize) -> Result<()> {
        if p >= self.points {
            return Err(Error::UnknownPoint(p));
        }
        Ok(())
    }

    /// Opens contained in `set`.
    pub fn opens_within(&self, set: OpenSet) -> impl Iterator<Item = OpenSet> + '_ {
        self.opens.iter().copied().filter(move |&m| m & !set == 0)
    }

    /// Opens containing the point `p`.
    pub fn neighbourhoods(&self, p: usize) -> impl Iterator<Item = OpenSet> + '_ {
        self.opens.iter().copied().filter(move |&m| m >> p & 1 == 1)
    }

    /// The intersection of all opens containing `p`, itself open.
    pub fn minimal_neighbourhood(&self, p: usize) -> Result<OpenSet> {
        self.require_point(p)?;
        Ok(self.neighbourhoods(p).fold(self.full(), |acc, m| acc & m))
    }

    /// Covers of `set` by nonempty opens, no member contained in another.
    /// Covers with a redundant member glue exactly when the cover without it
    /// does, so these suffice for the sheaf condition.
    pub fn antichain_covers(&self, set: OpenSet) -> Vec<Vec<OpenSet>> {
        let members: Vec<OpenSet> = self.opens_within(set).filter(|&m| m != 0).collect();
        let mut out = Vec::new();
        fn rec(members: &[OpenSet], start: usize, chosen: &mut Vec<OpenSet>, target: OpenSet, out: &mut Vec<Vec<OpenSet>>) {
            let union = chosen.iter().fold(0, |a, &m| a | m);
            if union == target {
                out.push(chosen.clone());
            }
            for k in start..members.len() {
                let m = members[k];
                if chosen.iter().any(|&c| c & m == c || c & m == m) {
                    continue;
                }
                chosen.push(m);
                rec(members, k + 1, chosen, target, out);
                chosen.pop();
            }
        }
        rec(&members, 0, &mut Vec::new(), set, &mut out);
        out
    }
}

impl fmt::Display for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, &m) in self.opens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_set(m))?;
        }
        write!(f, "}}")
    }
}

pub fn full_mask(points: usize) -> OpenSet {
    (1u32 << points) - 1
}

/// Points of a mask in increasing order.
pub fn members(set: OpenSet) -> Vec<usize> {
    (0..32).filter(|&p| set >> p & 1 == 1).collect()
}

pub fn fmt_set(set: OpenSet) -> String {
    if set == 0 {
        return "∅".into();
    }
    let pts: Vec<String> = members(set).iter().map(ToString::to_string).collect();
    format!("{{{}}}", pts.join(","))
}
