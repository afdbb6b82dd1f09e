use std::fmt;

use crate::graph::Vertex;

/// A set of 1-based vertex indices drawn from `{1..universe}`, stored as a bitmap.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        Self {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(universe: usize, vertices: I) -> Self {
        let mut set = Self::new(universe);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    pub fn full(universe: usize) -> Self {
        Self::from_vertices(universe, 1..=universe)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    fn slot(v: Vertex) -> (usize, u64) {
        let bit = v - 1;
        (bit / 64, 1u64 << (bit % 64))
    }

    /// Inserts `v`; returns true if it was not present.
    ///
    /// Panics when `v` lies outside `1..=universe`.
    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(
            v >= 1 && v <= self.universe,
            "vertex {v} outside universe 1..={}",
            self.universe
        );
        let (w, m) = Self::slot(v);
        let fresh = self.words[w] & m == 0;
        self.words[w] |= m;
        fresh
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        if !self.contains(v) {
            return false;
        }
        let (w, m) = Self::slot(v);
        self.words[w] &= !m;
        true
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        if v == 0 || v > self.universe {
            return false;
        }
        let (w, m) = Self::slot(v);
        self.words[w] & m != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + tz + 1)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for v in other.iter() {
            self.insert(v);
        }
    }

    /// Same members, re-homed in a (possibly larger) universe.
    pub fn with_universe(&self, universe: usize) -> VertexSet {
        VertexSet::from_vertices(universe, self.iter())
    }

    /// Members that are at most `bound`.
    pub fn restricted_to(&self, bound: usize) -> VertexSet {
        VertexSet::from_vertices(self.universe, self.iter().take_while(|&v| v <= bound))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
