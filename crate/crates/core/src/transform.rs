//! Constructive transformations between dominating-set flavors, each with a
//! size certificate.
//!
//! * [`connectify`]: dominating set to connected dominating set, at most
//!   `2(c(S) - 1)` extra vertices.
//! * [`incremental_connectify`]: incremental DS chain to incremental CDS
//!   chain, one extra vertex per newly born component.
//! * [`tree_incremental_from_set`]: dominating set of a tree to an
//!   incremental DS chain of size at most `|S| + c(S)`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::domination::{components_of, is_feasible, is_valid_chain, SolutionChain, Variant};
use crate::error::{Error, Result};
use crate::graph::{classify, ArrivalSequence, Prefix, Vertex};
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Connectify,
    IncConnectify,
    TreeGreedy,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::Connectify => "connectify",
            TransformKind::IncConnectify => "inc-connectify",
            TransformKind::TreeGreedy => "tree-greedy",
        })
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "connectify" => Ok(TransformKind::Connectify),
            "inc-connectify" => Ok(TransformKind::IncConnectify),
            "tree-greedy" => Ok(TransformKind::TreeGreedy),
            _ => Err(Error::Unknown {
                kind: "transform",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformOutput {
    Set(VertexSet),
    Chain(SolutionChain),
}

impl TransformOutput {
    pub fn final_set(&self) -> VertexSet {
        match self {
            TransformOutput::Set(s) => s.clone(),
            TransformOutput::Chain(c) => c.final_set(),
        }
    }
}

impl fmt::Display for TransformOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformOutput::Set(s) => write!(f, "{s}"),
            TransformOutput::Chain(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformCertificate {
    pub kind: TransformKind,
    /// `|S|` or `|R|`.
    pub input_size: usize,
    /// `c(S)` or `c(R)`, taken on the final graph.
    pub input_components: usize,
    pub output: TransformOutput,
    pub output_size: usize,
    pub bound: usize,
    pub satisfied: bool,
    /// Merges (connectify), extra vertices (inc-connectify) or bad vertices (tree-greedy).
    pub steps: usize,
    /// inc-connectify: arrivals that were selected on arrival with no selected
    /// neighbor, i.e. components of the chain at birth.
    pub births: Option<usize>,
    /// inc-connectify: `|R| + births - 1`, which the procedure never exceeds.
    pub births_bound: Option<usize>,
    /// tree-greedy: most marks any component of `S` received.
    pub max_marks: Option<usize>,
}

impl fmt::Display for TransformCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "input_size: {}", self.input_size)?;
        writeln!(f, "input_components: {}", self.input_components)?;
        writeln!(f, "output: {}", self.output)?;
        writeln!(f, "output_size: {}", self.output_size)?;
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "satisfied: {}", self.satisfied)?;
        writeln!(f, "steps: {}", self.steps)?;
        if let Some(b) = self.births {
            writeln!(f, "births: {b}")?;
        }
        if let Some(b) = self.births_bound {
            writeln!(f, "births_bound: {b}")?;
        }
        if let Some(m) = self.max_marks {
            writeln!(f, "max_marks: {m}")?;
        }
        Ok(())
    }
}

/// Component label (0-based) of each member of `set` in `g`, indexed by `v-1`.
fn label_components(g: Prefix<'_>, set: &VertexSet) -> (Vec<Option<usize>>, usize) {
    let mut label = vec![None; g.n()];
    let mut count = 0;
    for start in set.iter().filter(|&v| v <= g.n()) {
        if label[start - 1].is_some() {
            continue;
        }
        label[start - 1] = Some(count);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in g.neighbors(v) {
                if set.contains(u) && label[u - 1].is_none() {
                    label[u - 1] = Some(count);
                    queue.push_back(u);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Distinct component labels among the neighbors of `w`.
fn touching(g: Prefix<'_>, label: &[Option<usize>], w: Vertex) -> Vec<usize> {
    let mut out: Vec<usize> = g.neighbors(w).iter().filter_map(|&u| label[u - 1]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn require_dominating(seq: &ArrivalSequence, set: &VertexSet) -> Result<()> {
    if set.iter().any(|v| v > seq.n()) {
        return Err(Error::Precondition(format!("set {set} names vertices beyond n = {}", seq.n())));
    }
    if !is_feasible(Variant::Ds, seq.full(), set) {
        return Err(Error::Precondition(format!("{set} does not dominate the graph")));
    }
    Ok(())
}

/// Grows `S` into a connected dominating set by repeatedly selecting a
/// shortest (at most two vertices) path joining two of its components.
/// Among candidate paths, single vertices win, then the smallest pair.
pub fn connectify(seq: &ArrivalSequence, set: &VertexSet) -> Result<TransformCertificate> {
    let g = seq.full();
    if g.component_count() != 1 {
        return Err(Error::Precondition("connectify needs a connected graph".into()));
    }
    let set = set.with_universe(seq.n());
    require_dominating(seq, &set)?;
    let input_components = components_of(g, &set);
    let mut cur = set.clone();
    let mut merges = 0;
    loop {
        let (label, count) = label_components(g, &cur);
        if count <= 1 {
            break;
        }
        let path = connecting_path(g, &cur, &label).ok_or_else(|| {
            Error::Precondition(format!("no connecting path of length <= 2 for {cur}; is the set dominating?"))
        })?;
        for v in path {
            cur.insert(v);
        }
        merges += 1;
    }
    let bound = set.len() + 2 * (input_components - 1);
    Ok(TransformCertificate {
        kind: TransformKind::Connectify,
        input_size: set.len(),
        input_components,
        output_size: cur.len(),
        satisfied: cur.len() <= bound && is_feasible(Variant::Cds, g, &cur),
        output: TransformOutput::Set(cur),
        bound,
        steps: merges,
        births: None,
        births_bound: None,
        max_marks: None,
    })
}

fn connecting_path(g: Prefix<'_>, cur: &VertexSet, label: &[Option<usize>]) -> Option<Vec<Vertex>> {
    let outside = || g.vertices().filter(|&w| !cur.contains(w));
    if let Some(w) = outside().find(|&w| touching(g, label, w).len() >= 2) {
        return Some(vec![w]);
    }
    for a in outside() {
        let ta = touching(g, label, a);
        if ta.is_empty() {
            continue;
        }
        for &b in g.neighbors(a).iter().filter(|&&b| b > a && !cur.contains(b)) {
            let tb = touching(g, label, b);
            let same_single = ta.len() == 1 && tb.len() == 1 && ta[0] == tb[0];
            if !tb.is_empty() && !same_single {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

/// Replays `R` and, whenever the selection stops being connected inside
/// `G_i`, adds the lowest-index vertex adjacent to two of its components.
pub fn incremental_connectify(seq: &ArrivalSequence, chain: &SolutionChain) -> Result<TransformCertificate> {
    if !seq.is_always_connected() {
        return Err(Error::Precondition("inc-connectify needs an always-connected sequence".into()));
    }
    if !is_valid_chain(Variant::Ds, seq, chain) {
        return Err(Error::Precondition(format!("{chain} is not a valid incremental dominating set")));
    }
    let n = seq.n();
    let mut out = SolutionChain::new(n);
    let mut cur = VertexSet::new(n);
    let mut extras = 0;
    let mut births = 0;
    let mut r_cur = VertexSet::new(n);
    for i in 1..=n {
        let g = seq.prefix(i);
        for v in chain.added_in_step(i) {
            r_cur.insert(v);
            if cur.insert(v) {
                out.select(v, i)?;
            }
        }
        if r_cur.contains(i) && !g.neighbors(i).iter().any(|&u| r_cur.contains(u)) {
            births += 1;
        }
        loop {
            let (label, count) = label_components(g, &cur);
            if count <= 1 {
                break;
            }
            let w = g
                .vertices()
                .find(|&w| !cur.contains(w) && touching(g, &label, w).len() >= 2)
                .ok_or_else(|| Error::Precondition(format!("no single connector at step {i}")))?;
            cur.insert(w);
            out.select(w, i)?;
            extras += 1;
        }
    }
    let input_size = chain.size();
    let input_components = components_of(seq.full(), &chain.final_set());
    let bound = input_size + input_components - 1;
    let output_size = out.size();
    let valid = is_valid_chain(Variant::Cds, seq, &out);
    Ok(TransformCertificate {
        kind: TransformKind::IncConnectify,
        input_size,
        input_components,
        output: TransformOutput::Chain(out),
        output_size,
        bound,
        satisfied: valid && output_size <= bound,
        steps: extras,
        births: Some(births),
        births_bound: Some(input_size + births - 1),
        max_marks: None,
    })
}

/// Selects `v_1` and every member of `S` on arrival, plus any arrival not yet
/// dominated (a bad vertex). Each bad vertex marks the component of `S`
/// holding its lowest-index dominator; on trees no component is marked twice.
pub fn tree_incremental_from_set(seq: &ArrivalSequence, set: &VertexSet) -> Result<TransformCertificate> {
    let report = classify(seq);
    if !report.is_tree {
        return Err(Error::Precondition("tree-greedy needs a tree".into()));
    }
    if !report.always_connected {
        return Err(Error::Precondition("tree-greedy needs an always-connected order".into()));
    }
    let set = set.with_universe(seq.n());
    require_dominating(seq, &set)?;
    let g = seq.full();
    let (label, input_components) = label_components(g, &set);
    let mut marks = vec![0usize; input_components];
    let n = seq.n();
    let mut out = SolutionChain::new(n);
    let mut cur = VertexSet::new(n);
    let mut bad = 0;
    for i in 1..=n {
        let dominated = seq.earlier_neighbors(i).iter().any(|&u| cur.contains(u));
        let take = set.contains(i) || i == 1 || !dominated;
        if !take {
            continue;
        }
        if !set.contains(i) {
            bad += 1;
            let host = g
                .neighbors(i)
                .iter()
                .copied()
                .find(|&u| set.contains(u))
                .expect("S dominates every vertex outside it");
            if let Some(c) = label[host - 1] {
                marks[c] += 1;
            }
        }
        cur.insert(i);
        out.select(i, i)?;
    }
    let bound = set.len() + input_components;
    let output_size = out.size();
    let max_marks = marks.iter().copied().max().unwrap_or(0);
    let valid = is_valid_chain(Variant::Ds, seq, &out);
    Ok(TransformCertificate {
        kind: TransformKind::TreeGreedy,
        input_size: set.len(),
        input_components,
        output: TransformOutput::Chain(out),
        output_size,
        bound,
        satisfied: valid && output_size <= bound,
        steps: bad,
        births: None,
        births_bound: None,
        max_marks: Some(max_marks),
    })
}
