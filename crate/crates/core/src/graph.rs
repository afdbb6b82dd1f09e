//! Vertex-arrival sequences, prefix graphs, layer numbers and graph-class checks.
//!
//! Vertices are 1-based: `v_i` is the i-th vertex to arrive, and the prefix
//! graph `G_i` is the subgraph induced by `v_1..v_i`. Prefix adjacency is
//! answered by slicing the (sorted) neighbor lists of the final graph, so a
//! sequence holds a single copy of its adjacency.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// 1-based vertex index.
pub type Vertex = usize;

/// Undirected adjacency of the final graph; neighbor lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u - 1].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 1..=self.n() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn prefix(&self, len: usize) -> Prefix<'_> {
        assert!(len <= self.n(), "prefix {len} longer than graph ({})", self.n());
        Prefix { graph: self, len }
    }

    pub fn full(&self) -> Prefix<'_> {
        self.prefix(self.n())
    }
}

/// The prefix graph `G_len`: edges among `v_1..v_len` only.
#[derive(Debug, Clone, Copy)]
pub struct Prefix<'a> {
    graph: &'a Graph,
    len: usize,
}

impl<'a> Prefix<'a> {
    pub fn n(&self) -> usize {
        self.len
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<Vertex> {
        1..=self.len
    }

    pub fn neighbors(&self, v: Vertex) -> &'a [Vertex] {
        debug_assert!(v >= 1 && v <= self.len);
        let all = self.graph.neighbors(v);
        &all[..all.partition_point(|&u| u <= self.len)]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn is_isolated(&self, v: Vertex) -> bool {
        self.neighbors(v).is_empty()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Component id (0-based, in order of lowest member) for every vertex.
    pub fn component_ids(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.len];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for s in self.vertices() {
            if comp[s - 1] != usize::MAX {
                continue;
            }
            comp[s - 1] = next;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if comp[w - 1] == usize::MAX {
                        comp[w - 1] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.component_ids().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Number of connected components of the subgraph induced by `set`
    /// (members beyond the prefix are ignored).
    pub fn induced_components(&self, set: &VertexSet) -> usize {
        let mut seen = VertexSet::new(self.len.max(1));
        let mut count = 0;
        let mut stack = Vec::new();
        for s in set.iter().take_while(|&v| v <= self.len) {
            if seen.contains(s) {
                continue;
            }
            count += 1;
            seen.insert(s);
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if set.contains(w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// Closed neighborhoods as bitmasks (bit `v-1`), for prefixes of at most 64 vertices.
    pub fn closed_masks(&self) -> Vec<u64> {
        assert!(self.len <= 64, "bitmask view limited to 64 vertices");
        self.vertices()
            .map(|v| {
                self.neighbors(v)
                    .iter()
                    .fold(1u64 << (v - 1), |m, &u| m | 1u64 << (u - 1))
            })
            .collect()
    }
}

/// An ordered vertex-arrival stream. Entry `i` lists the neighbors of `v_i`
/// among `v_1..v_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrivalSequence {
    name: String,
    arrivals: Vec<Vec<Vertex>>,
    graph: Graph,
}

impl ArrivalSequence {
    /// Validates the entries and builds the final adjacency. Neighbor lists
    /// are normalized to ascending order.
    pub fn new(name: impl Into<String>, arrivals: Vec<Vec<Vertex>>) -> Result<Self> {
        if arrivals.is_empty() {
            return Err(Error::InvalidSequence {
                entry: 0,
                reason: "sequence has no vertices".into(),
            });
        }
        let n = arrivals.len();
        let mut adj = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(n);
        for (idx, entry) in arrivals.into_iter().enumerate() {
            let i = idx + 1;
            let mut sorted = entry;
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidSequence {
                        entry: i,
                        reason: format!("duplicate neighbor {}", w[0]),
                    });
                }
            }
            for &j in &sorted {
                if j == 0 || j >= i {
                    return Err(Error::InvalidSequence {
                        entry: i,
                        reason: format!("neighbor {j} is not an earlier vertex (must be in 1..{i})"),
                    });
                }
                adj[j - 1].push(i);
                adj[i - 1].push(j);
            }
            normalized.push(sorted);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self {
            name: name.into(),
            arrivals: normalized,
            graph: Graph { adj },
        })
    }

    /// Encodes an undirected edge list on `1..=n` in index order.
    pub fn from_edges(name: impl Into<String>, n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut arrivals = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a == b || a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidSequence {
                    entry: a.max(b),
                    reason: format!("bad edge ({a}, {b})"),
                });
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            arrivals[hi - 1].push(lo);
        }
        Self::new(name, arrivals)
    }

    /// Re-encodes the same final graph with vertex `order[k]` arriving at step `k+1`.
    pub fn permuted(&self, order: &[Vertex]) -> Result<Self> {
        let n = self.n();
        if order.len() != n {
            return Err(Error::Parameter("permutation length mismatch".into()));
        }
        let mut position = vec![0; n + 1];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k + 1;
        }
        let edges: Vec<_> = self
            .graph
            .edges()
            .into_iter()
            .map(|(u, v)| (position[u], position[v]))
            .collect();
        Self::from_edges(format!("{}~perm", self.name), n, &edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn n(&self) -> usize {
        self.arrivals.len()
    }

    pub fn arrivals(&self) -> &[Vec<Vertex>] {
        &self.arrivals
    }

    /// Neighbors of `v_i` among earlier vertices.
    pub fn earlier_neighbors(&self, i: Vertex) -> &[Vertex] {
        &self.arrivals[i - 1]
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn prefix(&self, i: usize) -> Prefix<'_> {
        self.graph.prefix(i)
    }

    pub fn full(&self) -> Prefix<'_> {
        self.graph.full()
    }

    /// True when every prefix graph is connected.
    pub fn is_always_connected(&self) -> bool {
        self.first_disconnected_vertex().is_none()
    }

    /// First `v_i`, `i > 1`, arriving without an earlier neighbor.
    pub fn first_disconnected_vertex(&self) -> Option<Vertex> {
        (2..=self.n()).find(|&i| self.arrivals[i - 1].is_empty())
    }
}

/// Adjacency for the final graph of `seq`, queryable for every prefix.
pub fn build_graph(seq: &ArrivalSequence) -> &Graph {
    seq.graph()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClassReport {
    pub n: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    pub always_connected: bool,
    pub connected: bool,
    /// BFS 2-coloring (0/1 per vertex, index `v-1`) when the graph is bipartite.
    pub bipartition: Option<Vec<u8>>,
    pub is_tree: bool,
}

impl GraphClassReport {
    pub fn bipartite(&self) -> bool {
        self.bipartition.is_some()
    }
}

pub fn classify(seq: &ArrivalSequence) -> GraphClassReport {
    let g = seq.graph();
    let full = g.full();
    let connected = full.component_count() == 1;
    let edge_count = g.edge_count();
    GraphClassReport {
        n: g.n(),
        edge_count,
        max_degree: g.max_degree(),
        always_connected: seq.is_always_connected(),
        connected,
        bipartition: two_coloring(g),
        is_tree: connected && edge_count + 1 == g.n(),
    }
}

/// BFS 2-coloring, each component rooted at its lowest vertex.
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut queue = VecDeque::new();
    for s in 1..=n {
        if color[s - 1] != u8::MAX {
            continue;
        }
        color[s - 1] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w - 1] == u8::MAX {
                    color[w - 1] = 1 - color[u - 1];
                    queue.push_back(w);
                } else if color[w - 1] == color[u - 1] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerAssignment {
    /// `layer[v-1] = L(v)`.
    pub layer: Vec<usize>,
    /// `layer_sizes[k]` = number of vertices with `L(v) = k`.
    pub layer_sizes: Vec<usize>,
}

impl LayerAssignment {
    pub fn of(&self, v: Vertex) -> usize {
        self.layer[v - 1]
    }

    pub fn count(&self) -> usize {
        self.layer_sizes.len()
    }
}

/// `L(v_1) = 0`, `L(v_i) = 1 + min L` over the earlier neighbors of `v_i`.
pub fn layers(seq: &ArrivalSequence) -> Result<LayerAssignment> {
    let mut layer = Vec::with_capacity(seq.n());
    layer.push(0);
    for i in 2..=seq.n() {
        let l = seq
            .earlier_neighbors(i)
            .iter()
            .map(|&j| layer[j - 1])
            .min()
            .ok_or(Error::NotAlwaysConnected { vertex: i })?;
        layer.push(l + 1);
    }
    let mut layer_sizes = vec![0; layer.iter().max().map_or(0, |m| m + 1)];
    for &l in &layer {
        layer_sizes[l] += 1;
    }
    Ok(LayerAssignment { layer, layer_sizes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(arrivals: Vec<Vec<Vertex>>) -> ArrivalSequence {
        ArrivalSequence::new("t", arrivals).unwrap()
    }

    #[test]
    fn path_and_star_edges() {
        let p3 = seq(vec![vec![], vec![1], vec![2]]);
        assert_eq!(p3.graph().edges(), vec![(1, 2), (2, 3)]);
        let star = seq(vec![vec![], vec![1], vec![1], vec![1]]);
        assert_eq!(star.graph().edges(), vec![(1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn forward_and_duplicate_references_rejected() {
        let err = ArrivalSequence::new("bad", vec![vec![], vec![2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidSequence { entry: 2, .. }));
        let err = ArrivalSequence::new("bad", vec![vec![], vec![5]]).unwrap_err();
        assert!(matches!(err, Error::InvalidSequence { entry: 2, .. }));
        let err = ArrivalSequence::new("dup", vec![vec![], vec![1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::InvalidSequence { entry: 3, .. }));
        assert!(ArrivalSequence::new("empty", vec![]).is_err());
    }

    #[test]
    fn prefix_adjacency_filters_later_vertices() {
        let s = seq(vec![vec![], vec![1], vec![1], vec![2, 3]]);
        assert_eq!(s.prefix(2).neighbors(1), &[2]);
        assert_eq!(s.prefix(3).neighbors(1), &[2, 3]);
        assert_eq!(s.prefix(4).neighbors(2), &[1, 4]);
        assert!(s.prefix(1).is_isolated(1));
    }

    #[test]
    fn classify_path_and_interleaved_stars() {
        let p6 = seq((1..=6).map(|i| if i == 1 { vec![] } else { vec![i - 1] }).collect());
        let r = classify(&p6);
        assert!(r.always_connected && r.is_tree && r.bipartite());
        assert_eq!(r.max_degree, 2);

        // Centers 1 and 2, leaves alternate between them.
        let stars = seq(vec![vec![], vec![], vec![1], vec![2], vec![1], vec![2]]);
        let r = classify(&stars);
        assert!(!r.always_connected);
        assert!(!r.connected);
        assert!(!r.is_tree);
        assert!(r.bipartite());
    }

    #[test]
    fn bipartite_witness_colors_edges_properly() {
        let c4 = seq(vec![vec![], vec![1], vec![2], vec![1, 3]]);
        let col = two_coloring(c4.graph()).unwrap();
        assert_eq!(col, vec![0, 1, 0, 1]);
        let c3 = seq(vec![vec![], vec![1], vec![1, 2]]);
        assert!(two_coloring(c3.graph()).is_none());
    }

    #[test]
    fn layers_follow_recurrence() {
        let p4 = seq(vec![vec![], vec![1], vec![2], vec![3]]);
        assert_eq!(layers(&p4).unwrap().layer, vec![0, 1, 2, 3]);
        let fan = seq(vec![vec![], vec![1], vec![2], vec![3], vec![1, 2, 3, 4]]);
        let l = layers(&fan).unwrap();
        assert_eq!(l.layer, vec![0, 1, 2, 3, 1]);
        assert_eq!(l.layer_sizes, vec![1, 2, 1, 1]);
        let split = seq(vec![vec![], vec![]]);
        assert_eq!(layers(&split), Err(Error::NotAlwaysConnected { vertex: 2 }));
    }

    #[test]
    fn induced_components_counts() {
        let p9 = seq((1..=9).map(|i| if i == 1 { vec![] } else { vec![i - 1] }).collect());
        let full = p9.full();
        assert_eq!(full.induced_components(&VertexSet::from_vertices(9, [2, 5, 8])), 3);
        assert_eq!(full.induced_components(&VertexSet::new(9)), 0);
        assert_eq!(full.induced_components(&VertexSet::from_vertices(9, [1, 2, 3])), 1);
    }

    #[test]
    fn permutation_preserves_graph_shape() {
        let s = seq(vec![vec![], vec![1], vec![1], vec![2, 3]]);
        let p = s.permuted(&[4, 3, 2, 1]).unwrap();
        assert_eq!(p.graph().edge_count(), 4);
        assert_eq!(p.graph().max_degree(), 2);
    }
}
