//! Exhaustive enumeration of valid chains.
//!
//! At every step any subset of the not-yet-selected arrived vertices may be
//! added, so every monotone chain is visited exactly once. Only meant for
//! small instances.

use super::{mask_vertices, MaskGraph};
use crate::domination::{SolutionChain, Variant};
use crate::error::{Error, Result};
use crate::graph::ArrivalSequence;

/// Largest instance the enumerator accepts.
pub const NAIVE_LIMIT: usize = 10;

fn prefixes(seq: &ArrivalSequence) -> Result<Vec<MaskGraph>> {
    if seq.n() > NAIVE_LIMIT {
        return Err(Error::CapExceeded {
            baseline: "naive",
            n: seq.n(),
            cap: NAIVE_LIMIT,
        });
    }
    Ok((1..=seq.n()).map(|i| MaskGraph::new(seq.prefix(i))).collect())
}

fn subsets(free: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        let following = (cur.wrapping_sub(free)) & free;
        next = (following != 0).then_some(following);
        Some(cur)
    })
}

/// Visits every valid chain as its list of masks `D_1..D_n`. The visitor
/// returns `false` to stop early. Partial chains are handed to `prune`, which
/// may cut a branch by returning `false`.
pub fn visit_chains<F, P>(variant: Variant, seq: &ArrivalSequence, mut prune: P, mut visit: F) -> Result<()>
where
    F: FnMut(&[u64]) -> bool,
    P: FnMut(&[u64]) -> bool,
{
    let graphs = prefixes(seq)?;
    let mut stack = Vec::with_capacity(seq.n());
    walk(variant, &graphs, &mut stack, &mut prune, &mut visit);
    Ok(())
}

fn walk<F, P>(variant: Variant, graphs: &[MaskGraph], stack: &mut Vec<u64>, prune: &mut P, visit: &mut F) -> bool
where
    F: FnMut(&[u64]) -> bool,
    P: FnMut(&[u64]) -> bool,
{
    let i = stack.len();
    if i == graphs.len() {
        return visit(stack);
    }
    let prev = stack.last().copied().unwrap_or(0);
    let g = &graphs[i];
    for add in subsets(g.all & !prev) {
        let set = prev | add;
        if !g.feasible(variant, set) {
            continue;
        }
        stack.push(set);
        let keep_going = !prune(stack) || walk(variant, graphs, stack, prune, visit);
        stack.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Minimum `|D_n|` over all valid chains.
pub fn min_chain_size(variant: Variant, seq: &ArrivalSequence) -> Result<usize> {
    let mut best = u32::MAX;
    let bound = std::cell::Cell::new(u32::MAX);
    visit_chains(
        variant,
        seq,
        |partial| partial.last().is_some_and(|m| m.count_ones() < bound.get()),
        |chain| {
            let size = chain.last().map_or(0, |m| m.count_ones());
            if size < best {
                best = size;
                bound.set(size);
            }
            true
        },
    )?;
    Ok(best as usize)
}

/// Every valid chain, up to `limit` of them.
pub fn all_chains(variant: Variant, seq: &ArrivalSequence, limit: usize) -> Result<Vec<SolutionChain>> {
    let mut out = Vec::new();
    visit_chains(
        variant,
        seq,
        |_| true,
        |chain| {
            out.push(masks_to_chain(chain));
            out.len() < limit
        },
    )?;
    Ok(out)
}

pub fn masks_to_chain(masks: &[u64]) -> SolutionChain {
    let mut chain = SolutionChain::new(masks.len());
    let mut prev = 0u64;
    for (step, &m) in masks.iter().enumerate() {
        for v in mask_vertices(m & !prev) {
            chain
                .select(v, step + 1)
                .expect("masks form a monotone chain of arrived vertices");
        }
        prev = m;
    }
    chain
}
