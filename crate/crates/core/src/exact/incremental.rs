//! Incremental optimum: smallest `|D_n|` over all valid chains.
//!
//! States are `(i, D_i)`. From a state the next arrival either leaves `D_i`
//! feasible, in which case it is kept unchanged, or it is repaired by one of
//! the inclusion-minimal augmentations. Every minimal augmentation lies in
//! `N[v_{i+1}]`, and for DS, CDS and TDS the optimum from a state is monotone
//! in the state's set, so nothing else needs to be tried. For IDS a feasible
//! set admits no additions at all and the only repair is `{v_{i+1}}`.
//!
//! Values are memoized as exact results or as lower bounds produced by
//! branch-and-bound cut-offs.

use std::collections::HashMap;

use super::{bit, check_cap, mask_vertices, Baseline, MaskGraph, SolveResult, Witness};
use crate::domination::{SolutionChain, Variant};
use crate::error::Result;
use crate::graph::ArrivalSequence;

pub fn opt_inc(variant: Variant, seq: &ArrivalSequence, cap: usize) -> Result<SolveResult> {
    check_cap(Baseline::Incremental, seq.n(), cap)?;
    let mut solver = ChainSolver::new(variant, seq);
    let size = solver.value(0, 0, u32::MAX);
    let masks = solver.witness(size);
    let mut chain = SolutionChain::new(seq.n());
    let mut prev = 0u64;
    for (step, &mask) in masks.iter().enumerate() {
        for v in mask_vertices(mask & !prev) {
            chain.select(v, step + 1)?;
        }
        prev = mask;
    }
    Ok(SolveResult {
        variant,
        baseline: Baseline::Incremental,
        size: size as usize,
        witness: Witness::Chain(chain),
        nodes_explored: solver.nodes,
    })
}

#[derive(Debug, Clone, Copy)]
enum Memo {
    Exact(u32),
    AtLeast(u32),
}

pub(crate) struct ChainSolver {
    variant: Variant,
    /// `prefixes[i]` is `G_{i+1}`.
    prefixes: Vec<MaskGraph>,
    memo: HashMap<(usize, u64), Memo>,
    nodes: u64,
}

impl ChainSolver {
    pub(crate) fn new(variant: Variant, seq: &ArrivalSequence) -> Self {
        Self {
            variant,
            prefixes: (1..=seq.n()).map(|i| MaskGraph::new(seq.prefix(i))).collect(),
            memo: HashMap::new(),
            nodes: 0,
        }
    }

    fn n(&self) -> usize {
        self.prefixes.len()
    }

    /// Exact optimum from `(i, set)` if it is below `bound`; otherwise some
    /// lower bound that is at least `bound`.
    fn value(&mut self, i: usize, set: u64, bound: u32) -> u32 {
        self.nodes += 1;
        let here = set.count_ones();
        if i == self.n() || here >= bound {
            return here;
        }
        match self.memo.get(&(i, set)) {
            Some(Memo::Exact(v)) => return *v,
            Some(Memo::AtLeast(lb)) if *lb >= bound => return *lb,
            _ => {}
        }
        let mut best = u32::MAX;
        for next in self.successors(i, set) {
            let r = self.value(i + 1, next, bound.min(best));
            best = best.min(r);
        }
        let entry = if best < bound {
            Memo::Exact(best)
        } else {
            Memo::AtLeast(best)
        };
        self.memo.insert((i, set), entry);
        best
    }

    /// Sets `D_{i+1}` reachable from `D_i = set`, in ascending lexicographic
    /// order of their added vertices.
    pub(crate) fn successors(&self, i: usize, set: u64) -> Vec<u64> {
        let g = &self.prefixes[i];
        if g.feasible(self.variant, set) {
            return vec![set];
        }
        let v = i + 1;
        let nbrs = g.open[v - 1];
        let mut adds: Vec<u64> = match self.variant {
            Variant::Ds => mask_vertices(g.closed[v - 1]).map(bit).collect(),
            Variant::Ids => vec![bit(v)],
            Variant::Tds => {
                let newly_served = mask_vertices(nbrs).any(|u| g.open[u - 1] == bit(v));
                let v_served = nbrs & set != 0;
                match (newly_served, v_served) {
                    (true, true) => vec![bit(v)],
                    (true, false) => mask_vertices(nbrs).map(|u| bit(v) | bit(u)).collect(),
                    (false, _) => mask_vertices(nbrs).map(bit).collect(),
                }
            }
            Variant::Cds => {
                if nbrs == 0 {
                    vec![bit(v)]
                } else {
                    let before = &self.prefixes[i - 1];
                    let touched: Vec<u64> = before
                        .components
                        .iter()
                        .map(|&c| c & nbrs)
                        .filter(|&m| m != 0)
                        .collect();
                    if touched.len() == 1 {
                        mask_vertices(nbrs).map(bit).collect()
                    } else {
                        // v joins the components; each one without a selected
                        // neighbor of v needs one.
                        let mut acc = vec![bit(v)];
                        for part in touched.into_iter().filter(|&m| m & set == 0) {
                            acc = acc
                                .into_iter()
                                .flat_map(|a| mask_vertices(part).map(move |u| a | bit(u)))
                                .collect();
                        }
                        acc
                    }
                }
            }
        };
        adds.sort_by_cached_key(|&a| mask_vertices(a).collect::<Vec<_>>());
        adds.into_iter()
            .map(|a| set | a)
            .inspect(|&s| debug_assert!(g.feasible(self.variant, s)))
            .collect()
    }

    /// One optimal chain, as the masks `D_1..D_n`.
    fn witness(&mut self, target: u32) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n());
        let mut set = 0u64;
        for i in 0..self.n() {
            let next = self
                .successors(i, set)
                .into_iter()
                .find(|&s| self.value(i + 1, s, target + 1) == target)
                .expect("an optimal successor exists");
            out.push(next);
            set = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::is_valid_chain;

    fn path(n: usize) -> ArrivalSequence {
        ArrivalSequence::new(
            format!("P{n}"),
            (1..=n).map(|i| if i == 1 { vec![] } else { vec![i - 1] }).collect(),
        )
        .unwrap()
    }

    #[test]
    fn path_values_and_witnesses() {
        let p4 = path(4);
        let r = opt_inc(Variant::Ds, &p4, 14).unwrap();
        assert_eq!(r.size, 2);
        let chain = r.chain().unwrap();
        assert!(is_valid_chain(Variant::Ds, &p4, chain));
        assert_eq!(chain.pairs(), vec![(1, 1), (3, 3)]);

        let p5 = path(5);
        let cds = opt_inc(Variant::Cds, &p5, 14).unwrap();
        assert_eq!(cds.size, 4);
        assert!(is_valid_chain(Variant::Cds, &p5, cds.chain().unwrap()));
    }

    #[test]
    fn star_with_center_second() {
        // v1 leaf, v2 center, then three more leaves.
        let seq = ArrivalSequence::new("star", vec![vec![], vec![1], vec![2], vec![2], vec![2]]).unwrap();
        // v1 has to be taken at step 1, then one more vertex covers the leaves.
        assert_eq!(opt_inc(Variant::Ds, &seq, 14).unwrap().size, 2);
        assert_eq!(opt_inc(Variant::Ids, &seq, 14).unwrap().size, 4);
        assert_eq!(opt_inc(Variant::Tds, &seq, 14).unwrap().size, 2);
    }

    #[test]
    fn tds_single_vertex_is_empty() {
        let seq = ArrivalSequence::new("K1", vec![vec![]]).unwrap();
        let r = opt_inc(Variant::Tds, &seq, 14).unwrap();
        assert_eq!(r.size, 0);
    }
}
