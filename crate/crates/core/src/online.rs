//! Online algorithms in the vertex-arrival model.
//!
//! A policy sees one arrival at a time through [`StepContext`] and answers
//! with the vertices it adds to its selection. Selections are irrevocable:
//! the driver ([`OnlineSession`]) only ever grows `D_i`, rejects vertices that
//! have not arrived, and checks feasibility of `D_i` on `G_i` after every step.

use std::fmt;
use std::str::FromStr;

use crate::domination::{is_feasible, SolutionChain, Variant};
use crate::error::{Error, Result};
use crate::graph::{layers, ArrivalSequence, Prefix, Vertex};
use crate::vertex_set::VertexSet;

/// What a policy may observe when `v_i` arrives.
pub struct StepContext<'a> {
    step: usize,
    variant: Variant,
    graph: Prefix<'a>,
    earlier: &'a [Vertex],
    selected: &'a VertexSet,
    layers: Option<&'a [usize]>,
}

impl<'a> StepContext<'a> {
    /// Index `i` of the arriving vertex, which is also `v_i`.
    pub fn step(&self) -> usize {
        self.step
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// `G_i`, including the arriving vertex.
    pub fn graph(&self) -> Prefix<'a> {
        self.graph
    }

    /// Neighbors of `v_i` among `v_1..v_{i-1}`, ascending.
    pub fn earlier_neighbors(&self) -> &'a [Vertex] {
        self.earlier
    }

    /// `D_{i-1}`.
    pub fn selected(&self) -> &'a VertexSet {
        self.selected
    }

    pub fn is_selected(&self, v: Vertex) -> bool {
        self.selected.contains(v)
    }

    /// True when some selected vertex is adjacent to `v_i`.
    pub fn arrival_dominated(&self) -> bool {
        self.earlier.iter().any(|&u| self.selected.contains(u))
    }

    /// `L(v)` for arrived vertices, while every prefix so far is connected.
    pub fn layer(&self, v: Vertex) -> Option<usize> {
        self.layers.and_then(|l| l.get(v - 1).copied())
    }
}

/// A deterministic online step policy.
pub trait OnlinePolicy {
    fn name(&self) -> String;

    /// Vertices to add when `ctx.step()` arrives. Returning a vertex that is
    /// already selected is harmless.
    fn respond(&mut self, ctx: &StepContext<'_>) -> Result<Vec<Vertex>>;
}

/// Parent: select `v_1`; select the lowest-index earlier neighbor of any
/// undominated arrival. An undominated arrival with no earlier neighbor
/// selects itself.
pub fn parent_policy(ctx: &StepContext<'_>) -> Vec<Vertex> {
    let i = ctx.step();
    if i == 1 {
        return vec![1];
    }
    if ctx.arrival_dominated() {
        return Vec::new();
    }
    match ctx.earlier_neighbors().first() {
        Some(&u) => vec![u],
        None => vec![i],
    }
}

/// FirstParent: Parent, but the chosen neighbor has the smallest layer
/// number (ties to the lowest index).
///
/// For TDS, `v_1` is not selected while it is isolated, and an arrival that
/// is the only neighbor of a previously isolated vertex is selected together
/// with its parent (the size-2 component rule).
pub fn first_parent_policy(ctx: &StepContext<'_>, variant: Variant) -> Vec<Vertex> {
    let i = ctx.step();
    if i == 1 {
        return if variant == Variant::Tds { Vec::new() } else { vec![1] };
    }
    let mut out = Vec::new();
    if !ctx.arrival_dominated() {
        let parent = ctx
            .earlier_neighbors()
            .iter()
            .copied()
            .min_by_key(|&u| (ctx.layer(u).unwrap_or(0), u));
        match parent {
            Some(u) => out.push(u),
            None if variant != Variant::Tds => out.push(i),
            None => {}
        }
    }
    if variant == Variant::Tds {
        let g = ctx.graph();
        let orphaned = ctx.earlier_neighbors().iter().any(|&u| g.degree(u) == 1);
        if orphaned {
            out.push(i);
        }
    }
    out
}

/// Greedy independent set: select `v_i` iff it is not dominated on arrival.
pub fn greedy_ids_policy(ctx: &StepContext<'_>) -> Vec<Vertex> {
    if ctx.arrival_dominated() {
        Vec::new()
    } else {
        vec![ctx.step()]
    }
}

/// Select every vertex whose layer has the given parity; `v_1` is always selected.
pub fn even_layer_policy(parity: u8, ctx: &StepContext<'_>) -> Result<Vec<Vertex>> {
    let i = ctx.step();
    if i == 1 {
        return Ok(vec![1]);
    }
    let layer = ctx.layer(i).ok_or(Error::NotAlwaysConnected { vertex: i })?;
    Ok(if layer % 2 == usize::from(parity % 2) { vec![i] } else { Vec::new() })
}

/// The built-in algorithms, addressable by their CLI names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Parent,
    FirstParent,
    GreedyIds,
    EvenLayer(u8),
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Parent,
        Algorithm::FirstParent,
        Algorithm::GreedyIds,
        Algorithm::EvenLayer(0),
        Algorithm::EvenLayer(1),
    ];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Parent => f.write_str("parent"),
            Algorithm::FirstParent => f.write_str("first-parent"),
            Algorithm::GreedyIds => f.write_str("greedy-ids"),
            Algorithm::EvenLayer(p) => write!(f, "even-layer:{p}"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parent" => Ok(Algorithm::Parent),
            "first-parent" => Ok(Algorithm::FirstParent),
            "greedy-ids" => Ok(Algorithm::GreedyIds),
            "even-layer:0" => Ok(Algorithm::EvenLayer(0)),
            "even-layer:1" => Ok(Algorithm::EvenLayer(1)),
            _ => Err(Error::Unknown {
                kind: "algorithm",
                name: s.to_string(),
            }),
        }
    }
}

impl OnlinePolicy for Algorithm {
    fn name(&self) -> String {
        self.to_string()
    }

    fn respond(&mut self, ctx: &StepContext<'_>) -> Result<Vec<Vertex>> {
        match *self {
            Algorithm::Parent => Ok(parent_policy(ctx)),
            Algorithm::FirstParent => Ok(first_parent_policy(ctx, ctx.variant())),
            Algorithm::GreedyIds => Ok(greedy_ids_policy(ctx)),
            Algorithm::EvenLayer(p) => even_layer_policy(p, ctx),
        }
    }
}

/// Incremental driver shared by [`run_online`] and the adaptive adversaries.
#[derive(Debug, Clone)]
pub struct OnlineSession {
    variant: Variant,
    step: usize,
    picks: Vec<(Vertex, usize)>,
    layers: Option<Vec<usize>>,
}

impl OnlineSession {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            step: 0,
            picks: Vec::new(),
            layers: Some(Vec::new()),
        }
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn selected(&self, universe: usize) -> VertexSet {
        VertexSet::from_vertices(universe, self.picks.iter().map(|&(v, _)| v))
    }

    pub fn selected_count(&self) -> usize {
        self.picks.len()
    }

    /// Presents `v_{step+1}` of `seq` (whose earlier prefix must match what
    /// was already presented) and returns the vertices the policy added.
    pub fn advance(&mut self, seq: &ArrivalSequence, policy: &mut dyn OnlinePolicy) -> Result<Vec<Vertex>> {
        let i = self.step + 1;
        assert!(seq.n() >= i, "sequence exhausted at step {i}");

        if let Some(l) = self.layers.as_mut() {
            if i == 1 {
                l.push(0);
            } else {
                match seq.earlier_neighbors(i).iter().map(|&j| l[j - 1]).min() {
                    Some(m) => l.push(m + 1),
                    None => self.layers = None,
                }
            }
        }

        let mut selected = self.selected(seq.n());
        let response = {
            let ctx = StepContext {
                step: i,
                variant: self.variant,
                graph: seq.prefix(i),
                earlier: seq.earlier_neighbors(i),
                selected: &selected,
                layers: self.layers.as_deref(),
            };
            policy.respond(&ctx)?
        };

        let mut added = Vec::new();
        for v in response {
            if v == 0 || v > i {
                return Err(Error::ContractViolation {
                    policy: policy.name(),
                    step: i,
                    vertex: v,
                });
            }
            if selected.insert(v) {
                self.picks.push((v, i));
                added.push(v);
            }
        }
        self.step = i;

        if !is_feasible(self.variant, seq.prefix(i), &selected) {
            return Err(Error::Infeasible {
                policy: policy.name(),
                variant: self.variant.to_string(),
                step: i,
            });
        }
        Ok(added)
    }

    pub fn chain(&self, n: usize) -> SolutionChain {
        SolutionChain::from_pairs(n, &self.picks).expect("session picks are well-formed")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgorithmRun {
    pub algorithm: String,
    pub variant: Variant,
    pub chain: SolutionChain,
    /// `s_k`: selected vertices in layer `k`; present only for always-connected inputs.
    pub per_layer_selected: Option<Vec<usize>>,
}

impl AlgorithmRun {
    pub fn size(&self) -> usize {
        self.chain.size()
    }
}

/// Runs `policy` over `seq`, failing on the first contract or feasibility violation.
pub fn run_online(policy: &mut dyn OnlinePolicy, variant: Variant, seq: &ArrivalSequence) -> Result<AlgorithmRun> {
    let mut session = OnlineSession::new(variant);
    for _ in 0..seq.n() {
        session.advance(seq, policy)?;
    }
    let chain = session.chain(seq.n());
    let per_layer_selected = layers(seq).ok().map(|la| {
        let mut counts = vec![0; la.count()];
        for v in chain.final_set().iter() {
            counts[la.of(v)] += 1;
        }
        counts
    });
    Ok(AlgorithmRun {
        algorithm: policy.name(),
        variant,
        chain,
        per_layer_selected,
    })
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

    fn star_center_second(delta: usize) -> ArrivalSequence {
        let mut a = vec![vec![], vec![1]];
        a.extend((0..delta - 1).map(|_| vec![2]));
        ArrivalSequence::new("star2", a).unwrap()
    }

    fn run(alg: Algorithm, variant: Variant, seq: &ArrivalSequence) -> AlgorithmRun {
        let mut alg = alg;
        let r = run_online(&mut alg, variant, seq).unwrap();
        assert!(is_valid_chain(variant, seq, &r.chain));
        r
    }

    #[test]
    fn parent_on_p5_cds() {
        let r = run(Algorithm::Parent, Variant::Cds, &path(5));
        assert_eq!(r.chain.pairs(), vec![(1, 1), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn parent_step_responses_on_p3() {
        let p3 = path(3);
        let sel = VertexSet::from_vertices(3, [1]);
        let ctx = |i| StepContext {
            step: i,
            variant: Variant::Ds,
            graph: p3.prefix(i),
            earlier: p3.earlier_neighbors(i),
            selected: &sel,
            layers: None,
        };
        assert_eq!(parent_policy(&ctx(3)), vec![2]);
        assert!(parent_policy(&ctx(2)).is_empty());
    }

    #[test]
    fn parent_star_center_first_selects_one() {
        let star = ArrivalSequence::new("s", vec![vec![], vec![1], vec![1], vec![1]]).unwrap();
        assert_eq!(run(Algorithm::Parent, Variant::Ds, &star).size(), 1);
    }

    #[test]
    fn greedy_ids_examples() {
        let r = run(Algorithm::GreedyIds, Variant::Ids, &star_center_second(4));
        assert_eq!(r.chain.final_set().to_vec(), vec![1, 3, 4, 5]);
        let r = run(Algorithm::GreedyIds, Variant::Ids, &path(4));
        assert_eq!(r.chain.final_set().to_vec(), vec![1, 3]);
    }

    #[test]
    fn even_layer_on_p6() {
        let r0 = run(Algorithm::EvenLayer(0), Variant::Ds, &path(6));
        assert_eq!(r0.chain.final_set().to_vec(), vec![1, 3, 5]);
        let r1 = run(Algorithm::EvenLayer(1), Variant::Ds, &path(6));
        assert_eq!(r1.chain.final_set().to_vec(), vec![1, 2, 4, 6]);
    }

    #[test]
    fn even_layer_rejects_disconnected_arrivals() {
        let s = ArrivalSequence::new("split", vec![vec![], vec![]]).unwrap();
        let err = run_online(&mut Algorithm::EvenLayer(0), Variant::Ds, &s).unwrap_err();
        assert_eq!(err, Error::NotAlwaysConnected { vertex: 2 });
    }

    #[test]
    fn first_parent_fan_prefers_layer_zero() {
        // P4 then apex adjacent to all; apex is dominated by then.
        let fan = ArrivalSequence::new("fan4", vec![vec![], vec![1], vec![2], vec![3], vec![1, 2, 3, 4]]).unwrap();
        let r = run(Algorithm::FirstParent, Variant::Ds, &fan);
        assert!(r.chain.added_in_step(5).is_empty());
        // With v1 deselected from the context, the apex picks layer 0.
        let empty = VertexSet::new(5);
        let ls = [0, 1, 2, 3, 1];
        let ctx = StepContext {
            step: 5,
            variant: Variant::Ds,
            graph: fan.prefix(5),
            earlier: fan.earlier_neighbors(5),
            selected: &empty,
            layers: Some(&ls),
        };
        assert_eq!(first_parent_policy(&ctx, Variant::Ds), vec![1]);
    }

    #[test]
    fn first_parent_tds_size_two_component() {
        let k2 = path(2);
        let r = run(Algorithm::FirstParent, Variant::Tds, &k2);
        assert_eq!(r.chain.pairs(), vec![(1, 2), (2, 2)]);
        let r = run(Algorithm::FirstParent, Variant::Tds, &path(1));
        assert_eq!(r.size(), 0);
    }

    #[test]
    fn infeasible_policy_is_reported_with_step() {
        struct Lazy;
        impl OnlinePolicy for Lazy {
            fn name(&self) -> String {
                "lazy".into()
            }
            fn respond(&mut self, _: &StepContext<'_>) -> Result<Vec<Vertex>> {
                Ok(Vec::new())
            }
        }
        let err = run_online(&mut Lazy, Variant::Ds, &path(2)).unwrap_err();
        assert!(matches!(err, Error::Infeasible { step: 1, .. }));
    }

    #[test]
    fn future_vertex_is_a_contract_violation() {
        struct Eager;
        impl OnlinePolicy for Eager {
            fn name(&self) -> String {
                "eager".into()
            }
            fn respond(&mut self, ctx: &StepContext<'_>) -> Result<Vec<Vertex>> {
                Ok(vec![ctx.step() + 1])
            }
        }
        let err = run_online(&mut Eager, Variant::Ds, &path(3)).unwrap_err();
        assert!(matches!(err, Error::ContractViolation { step: 1, vertex: 2, .. }));
    }

    #[test]
    fn per_layer_counts_recorded_only_when_layers_exist() {
        let r = run(Algorithm::Parent, Variant::Ds, &path(4));
        assert_eq!(r.per_layer_selected, Some(vec![1, 1, 1, 0]));
        let split = ArrivalSequence::new("split", vec![vec![], vec![]]).unwrap();
        let r = run(Algorithm::Parent, Variant::Ds, &split);
        assert_eq!(r.per_layer_selected, None);
        assert_eq!(r.size(), 2);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert!("even-layer:2".parse::<Algorithm>().is_err());
    }
}
