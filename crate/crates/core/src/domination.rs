//! Feasibility predicates for the four dominating-set variants, on single
//! prefix graphs and on whole incremental chains.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{ArrivalSequence, Prefix, Vertex};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// Dominating set.
    Ds,
    /// Connected dominating set (connected within each component of the graph).
    Cds,
    /// Total dominating set; isolated vertices are exempt.
    Tds,
    /// Independent dominating set.
    Ids,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Ds, Variant::Cds, Variant::Tds, Variant::Ids];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Ds => "ds",
            Variant::Cds => "cds",
            Variant::Tds => "tds",
            Variant::Ids => "ids",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_str().to_ascii_uppercase())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ds" => Ok(Variant::Ds),
            "cds" => Ok(Variant::Cds),
            "tds" => Ok(Variant::Tds),
            "ids" => Ok(Variant::Ids),
            _ => Err(Error::Unknown {
                kind: "variant",
                name: s.to_string(),
            }),
        }
    }
}

/// Is `set` a feasible solution of `variant` for the prefix graph?
///
/// A set containing a vertex that has not arrived yet is never feasible.
pub fn is_feasible(variant: Variant, graph: Prefix<'_>, set: &VertexSet) -> bool {
    if set.iter().any(|v| v > graph.n()) {
        return false;
    }
    match variant {
        Variant::Ds => dominates(graph, set),
        Variant::Cds => dominates(graph, set) && graph.induced_components(set) == graph.component_count(),
        Variant::Tds => graph
            .vertices()
            .all(|v| graph.is_isolated(v) || graph.neighbors(v).iter().any(|&u| set.contains(u))),
        Variant::Ids => dominates(graph, set) && is_independent(graph, set),
    }
}

fn dominates(graph: Prefix<'_>, set: &VertexSet) -> bool {
    graph
        .vertices()
        .all(|v| set.contains(v) || graph.neighbors(v).iter().any(|&u| set.contains(u)))
}

fn is_independent(graph: Prefix<'_>, set: &VertexSet) -> bool {
    set.iter()
        .all(|v| graph.neighbors(v).iter().all(|&u| !set.contains(u)))
}

/// Number of connected components of the subgraph induced by `set`.
pub fn components_of(graph: Prefix<'_>, set: &VertexSet) -> usize {
    graph.induced_components(set)
}

/// An incremental solution `D_1 ⊆ D_2 ⊆ … ⊆ D_n`, stored as the step at
/// which each selected vertex entered.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolutionChain {
    added_at: Vec<Option<usize>>,
}

impl SolutionChain {
    pub fn new(n: usize) -> Self {
        Self {
            added_at: vec![None; n],
        }
    }

    /// Every member of `set` selected at its own arrival step.
    pub fn at_arrival(n: usize, set: &VertexSet) -> Self {
        let mut chain = Self::new(n);
        for v in set.iter() {
            chain.added_at[v - 1] = Some(v);
        }
        chain
    }

    /// Builds a chain from `(vertex, step)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(Vertex, usize)]) -> Result<Self> {
        let mut chain = Self::new(n);
        for &(v, step) in pairs {
            chain.select(v, step)?;
        }
        Ok(chain)
    }

    pub fn n(&self) -> usize {
        self.added_at.len()
    }

    /// Records that `v` enters the solution at `step`. A vertex can only be
    /// selected once it has arrived (`step >= v`) and only once.
    pub fn select(&mut self, v: Vertex, step: usize) -> Result<()> {
        if v == 0 || v > self.n() || step < v || step > self.n() {
            return Err(Error::Precondition(format!(
                "cannot select v{v} at step {step} in a chain of {} steps",
                self.n()
            )));
        }
        if let Some(prev) = self.added_at[v - 1] {
            return Err(Error::Precondition(format!("v{v} already selected at step {prev}")));
        }
        self.added_at[v - 1] = Some(step);
        Ok(())
    }

    pub fn added_at(&self, v: Vertex) -> Option<usize> {
        self.added_at.get(v.wrapping_sub(1)).copied().flatten()
    }

    /// `D_i = {v : added_at(v) <= i}`.
    pub fn set_at(&self, i: usize) -> VertexSet {
        VertexSet::from_vertices(
            self.n(),
            self.added_at
                .iter()
                .enumerate()
                .filter(|(_, t)| t.is_some_and(|t| t <= i))
                .map(|(idx, _)| idx + 1),
        )
    }

    pub fn final_set(&self) -> VertexSet {
        self.set_at(self.n())
    }

    pub fn size(&self) -> usize {
        self.added_at.iter().filter(|t| t.is_some()).count()
    }

    /// Vertices added exactly at `step`, ascending.
    pub fn added_in_step(&self, step: usize) -> Vec<Vertex> {
        self.added_at
            .iter()
            .enumerate()
            .filter(|(_, t)| **t == Some(step))
            .map(|(idx, _)| idx + 1)
            .collect()
    }

    /// `(vertex, step)` pairs ordered by step, then vertex.
    pub fn pairs(&self) -> Vec<(Vertex, usize)> {
        let mut out: Vec<_> = self
            .added_at
            .iter()
            .enumerate()
            .filter_map(|(idx, t)| t.map(|t| (idx + 1, t)))
            .collect();
        out.sort_by_key(|&(v, t)| (t, v));
        out
    }
}

impl fmt::Display for SolutionChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (v, t)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "v{v}@{t}")?;
        }
        write!(f, "}}")
    }
}

/// First step `i` at which `D_i` is infeasible on `G_i`, if any. Malformed
/// timestamps report step 0.
pub fn first_invalid_step(variant: Variant, seq: &ArrivalSequence, chain: &SolutionChain) -> Option<usize> {
    if chain.n() != seq.n() {
        return Some(0);
    }
    for v in 1..=chain.n() {
        if let Some(t) = chain.added_at(v) {
            if t < v || t > chain.n() {
                return Some(0);
            }
        }
    }
    (1..=seq.n()).find(|&i| !is_feasible(variant, seq.prefix(i), &chain.set_at(i)))
}

/// True iff every `D_i` is feasible for `variant` on `G_i`.
pub fn is_valid_chain(variant: Variant, seq: &ArrivalSequence, chain: &SolutionChain) -> bool {
    first_invalid_step(variant, seq, chain).is_none()
}
