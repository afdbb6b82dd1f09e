//! Offline optimum: smallest feasible set for the final graph.
//!
//! Iterative deepening over the budget. Each node picks the lowest vertex
//! whose requirement is unmet and branches over the vertices that could meet
//! it. For CDS, once everything is dominated, branching is over neighbors of
//! the current set. Failed `(set, budget)` pairs are memoized.
//!
//! The returned witness is the lexicographically smallest optimal set,
//! found by a second pass over ascending combinations of the optimal size.

use std::collections::HashMap;

use super::{bit, check_cap, mask_to_set, Baseline, MaskGraph, SolveResult, Witness};
use crate::domination::Variant;
use crate::error::Result;
use crate::graph::ArrivalSequence;

pub fn opt_off(variant: Variant, seq: &ArrivalSequence, cap: usize) -> Result<SolveResult> {
    check_cap(Baseline::Offline, seq.n(), cap)?;
    let mg = MaskGraph::new(seq.full());
    let mut search = Search {
        mg: &mg,
        variant,
        delta: mg.open.iter().map(|m| m.count_ones()).max().unwrap_or(0),
        failed: HashMap::new(),
        nodes: 0,
    };
    let mut k = search.lower_bound(0) as usize;
    while !search.branch(0, k) {
        k += 1;
    }
    let witness = search
        .lex_smallest(k)
        .expect("a set of the optimal size exists");
    Ok(SolveResult {
        variant,
        baseline: Baseline::Offline,
        size: k,
        witness: Witness::Set(mask_to_set(seq.n(), witness)),
        nodes_explored: search.nodes,
    })
}

struct Search<'a> {
    mg: &'a MaskGraph,
    variant: Variant,
    delta: u32,
    /// Largest budget known to be insufficient for a partial set.
    failed: HashMap<u64, usize>,
    nodes: u64,
}

impl Search<'_> {
    /// Vertices whose requirement is not yet met by `chosen`.
    fn unmet(&self, chosen: u64) -> u64 {
        match self.variant {
            Variant::Tds => self.mg.non_isolated & !self.mg.open_cover(chosen),
            _ => self.mg.all & !self.mg.closed_cover(chosen),
        }
    }

    fn lower_bound(&self, chosen: u64) -> u32 {
        let unmet = self.unmet(chosen).count_ones();
        let reach = match self.variant {
            Variant::Tds => self.delta.max(1),
            _ => self.delta + 1,
        };
        unmet.div_ceil(reach)
    }

    fn branch(&mut self, chosen: u64, budget: usize) -> bool {
        self.nodes += 1;
        if self.mg.feasible(self.variant, chosen) {
            return true;
        }
        if budget == 0 || self.lower_bound(chosen) as usize > budget {
            return false;
        }
        if self.failed.get(&chosen).is_some_and(|&b| b >= budget) {
            return false;
        }
        let unmet = self.unmet(chosen);
        let candidates = if unmet != 0 {
            let u = unmet.trailing_zeros() as usize;
            match self.variant {
                Variant::Tds => self.mg.open[u],
                Variant::Ids => self.mg.closed[u] & !self.mg.closed_cover(chosen),
                _ => self.mg.closed[u],
            }
        } else {
            match self.variant {
                Variant::Cds => self.mg.closed_cover(chosen) & !chosen,
                // Everything dominated and independent means feasible.
                _ => 0,
            }
        } & !chosen;
        let mut rest = candidates;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize + 1;
            rest &= rest - 1;
            if self.branch(chosen | bit(w), budget - 1) {
                return true;
            }
        }
        self.failed.insert(chosen, budget);
        false
    }

    /// Lexicographically smallest feasible set of exactly `k` vertices.
    fn lex_smallest(&mut self, k: usize) -> Option<u64> {
        self.lex(1, 0, k)
    }

    fn lex(&mut self, next: usize, chosen: u64, remaining: usize) -> Option<u64> {
        if remaining == 0 {
            return self.mg.feasible(self.variant, chosen).then_some(chosen);
        }
        let n = self.mg.n;
        if next + remaining > n + 1 || self.lower_bound(chosen) as usize > remaining {
            return None;
        }
        // A vertex whose possible helpers all lie before `next` can no longer be served.
        let below = (1u64 << (next - 1)) - 1;
        let unmet = self.unmet(chosen);
        let helpers = |u: usize| match self.variant {
            Variant::Tds => self.mg.open[u],
            _ => self.mg.closed[u],
        };
        let mut rest = unmet;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if helpers(u) & !below == 0 {
                return None;
            }
        }
        let blocked = if self.variant == Variant::Ids {
            self.mg.closed_cover(chosen)
        } else {
            0
        };
        for w in next..=(n + 1 - remaining) {
            if blocked & bit(w) != 0 {
                continue;
            }
            if let Some(found) = self.lex(w + 1, chosen | bit(w), remaining - 1) {
                return Some(found);
            }
        }
        None
    }
}
