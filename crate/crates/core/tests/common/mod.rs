//! Brute-force reference implementations. They read only the raw arrival
//! lists and share no code with the library's predicates or solvers.
#![allow(dead_code)]

use domino::domination::Variant;
use domino::graph::ArrivalSequence;
use proptest::prelude::*;

/// Bitmask adjacency of the final graph; bit `v - 1` stands for `v_v`.
pub struct Oracle {
    pub n: usize,
    adj: Vec<u64>,
}

fn low(i: usize) -> u64 {
    if i == 64 {
        u64::MAX
    } else {
        (1u64 << i) - 1
    }
}

impl Oracle {
    pub fn new(seq: &ArrivalSequence) -> Self {
        let n = seq.n();
        assert!(n <= 64, "bitmask oracle holds at most 64 vertices");
        let mut adj = vec![0u64; n];
        for (idx, earlier) in seq.arrivals().iter().enumerate() {
            for &j in earlier {
                adj[idx] |= 1 << (j - 1);
                adj[j - 1] |= 1 << idx;
            }
        }
        Self { n, adj }
    }

    fn nbrs(&self, i: usize, v: usize) -> u64 {
        self.adj[v] & low(i)
    }

    fn components(&self, i: usize) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..i {
            if seen >> v & 1 == 1 {
                continue;
            }
            let comp = self.reach(i, 1 << v, low(i));
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within` in `G_i`.
    fn reach(&self, i: usize, start: u64, within: u64) -> u64 {
        let mut reached = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0u64;
            for v in 0..i {
                if frontier >> v & 1 == 1 {
                    next |= self.nbrs(i, v) & within;
                }
            }
            frontier = next & !reached;
            reached |= next;
        }
        reached
    }

    /// Feasibility of `set` on the prefix `G_i`.
    pub fn feasible(&self, variant: Variant, i: usize, set: u64) -> bool {
        if set & !low(i) != 0 {
            return false;
        }
        let dominated = |v: usize| set >> v & 1 == 1 || self.nbrs(i, v) & set != 0;
        match variant {
            Variant::Ds => (0..i).all(dominated),
            Variant::Tds => (0..i).all(|v| self.nbrs(i, v) == 0 || self.nbrs(i, v) & set != 0),
            Variant::Ids => {
                (0..i).all(dominated) && (0..i).all(|v| set >> v & 1 == 0 || self.nbrs(i, v) & set == 0)
            }
            Variant::Cds => {
                (0..i).all(dominated)
                    && self.components(i).into_iter().all(|c| {
                        let part = set & c;
                        part == 0 || self.reach(i, part & part.wrapping_neg(), part) == part
                    })
            }
        }
    }

    /// Smallest feasible set on the final graph, by increasing size.
    pub fn opt_off(&self, variant: Variant) -> usize {
        let n = self.n;
        assert!(n <= 24, "exponential search");
        (0..=n)
            .find(|&k| subsets_of_size(n, k).any(|m| self.feasible(variant, n, m)))
            .expect("the full vertex set is feasible for DS/CDS/TDS; IDS always has a maximal independent set")
    }

    /// Minimum `|D_n|` over all valid chains, by tracking every reachable `D_i`.
    pub fn opt_inc(&self, variant: Variant) -> Option<usize> {
        assert!(self.n <= 24, "exponential search");
        let mut reachable = vec![false; 1];
        reachable[0] = true;
        for i in 1..=self.n {
            let size = 1usize << i;
            // Up-close the previous layer inside the first i-1 vertices.
            let mut up = vec![false; size >> 1];
            up.copy_from_slice(&reachable);
            for b in 0..i - 1 {
                for m in 0..size >> 1 {
                    if m >> b & 1 == 1 && up[m ^ (1 << b)] {
                        up[m] = true;
                    }
                }
            }
            reachable = (0..size)
                .map(|m| up[m & ((size >> 1) - 1)] && self.feasible(variant, i, m as u64))
                .collect();
        }
        reachable
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .map(|(m, _)| m.count_ones() as usize)
            .min()
    }

    /// Components of the subgraph induced by `set` in the final graph.
    pub fn set_components(&self, set: u64) -> usize {
        let mut left = set;
        let mut count = 0;
        while left != 0 {
            let comp = self.reach(self.n, left & left.wrapping_neg(), set);
            left &= !comp;
            count += 1;
        }
        count
    }

    /// Nested, feasible at every prefix, and `D_i` only uses arrived vertices.
    pub fn valid_chain(&self, variant: Variant, sets: &[u64]) -> bool {
        sets.len() == self.n
            && sets.iter().enumerate().all(|(k, &d)| self.feasible(variant, k + 1, d))
            && sets.windows(2).all(|w| w[0] & !w[1] == 0)
    }

    /// Every valid chain, stopping once `limit` have been found.
    pub fn chains(&self, variant: Variant, limit: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.extend_chains(variant, 0, &mut stack, &mut out, limit);
        out
    }

    fn extend_chains(&self, variant: Variant, prev: u64, stack: &mut Vec<u64>, out: &mut Vec<Vec<u64>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let i = stack.len() + 1;
        if i > self.n {
            out.push(stack.clone());
            return;
        }
        let free = low(i) & !prev;
        // Walk every subset of the free bits.
        let mut extra = 0u64;
        loop {
            let d = prev | extra;
            if self.feasible(variant, i, d) {
                stack.push(d);
                self.extend_chains(variant, d, stack, out, limit);
                stack.pop();
            }
            if extra == free {
                break;
            }
            extra = (extra.wrapping_sub(free)) & free;
        }
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }
}

pub fn mask(vertices: impl IntoIterator<Item = usize>) -> u64 {
    vertices.into_iter().fold(0, |m, v| m | 1 << (v - 1))
}

pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    // Gosper's hack over n-bit words.
    let limit = 1u64 << n;
    let mut cur = if k == 0 { Some(0u64) } else { Some(low(k)) };
    std::iter::from_fn(move || {
        let c = cur?;
        if c >= limit {
            return None;
        }
        cur = if c == 0 {
            None
        } else {
            let lowest = c & c.wrapping_neg();
            let ripple = c + lowest;
            Some((((ripple ^ c) >> 2) / lowest) | ripple)
        };
        Some(c)
    })
}

/// Random arrival lists on `1..=max_n` vertices. `connect` forces at least
/// one earlier neighbor per arrival.
pub fn arb_sequence(max_n: usize, connect: bool) -> impl Strategy<Value = ArrivalSequence> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            let rows: Vec<_> = (0..n)
                .map(|i| (prop::collection::vec(any::<bool>(), i), 0..i.max(1)))
                .collect();
            rows
        })
        .prop_map(move |rows| {
            let arrivals = rows
                .into_iter()
                .enumerate()
                .map(|(i, (picks, anchor))| {
                    let mut nbrs: Vec<usize> = picks
                        .iter()
                        .enumerate()
                        .filter(|(_, &p)| p)
                        .map(|(j, _)| j + 1)
                        .collect();
                    if connect && i > 0 && nbrs.is_empty() {
                        nbrs.push(anchor + 1);
                    }
                    nbrs
                })
                .collect();
            ArrivalSequence::new("arb", arrivals).expect("well-formed by construction")
        })
}

/// A random tree in arrival order: each vertex hangs off one earlier vertex.
pub fn arb_tree(max_n: usize) -> impl Strategy<Value = ArrivalSequence> {
    (1..=max_n)
        .prop_flat_map(|n| (1..n.max(2)).map(|i| 0..i).collect::<Vec<_>>().prop_map(move |p| (n, p)))
        .prop_map(|(n, parents)| {
            let arrivals = (0..n)
                .map(|i| if i == 0 { Vec::new() } else { vec![parents[i - 1] + 1] })
                .collect();
            ArrivalSequence::new("tree", arrivals).expect("tree is well-formed")
        })
}
