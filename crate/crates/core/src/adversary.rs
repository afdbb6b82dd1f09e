//! Adaptive adversaries. Each one grows the instance one vertex at a time and
//! decides the next arrival from the algorithm's current selection.

use std::fmt;
use std::str::FromStr;

use crate::domination::{SolutionChain, Variant};
use crate::error::{Error, Result};
use crate::graph::{ArrivalSequence, Vertex};
use crate::online::{run_online, OnlinePolicy, OnlineSession};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdversaryKind {
    Tree,
    TwoLayer,
}

impl fmt::Display for AdversaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdversaryKind::Tree => "tree",
            AdversaryKind::TwoLayer => "two-layer",
        })
    }
}

impl FromStr for AdversaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(AdversaryKind::Tree),
            "two-layer" => Ok(AdversaryKind::TwoLayer),
            _ => Err(Error::Unknown {
                kind: "adversary",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversaryTranscript {
    pub adversary: AdversaryKind,
    pub algorithm: String,
    pub variant: Variant,
    pub sequence: ArrivalSequence,
    pub chain: SolutionChain,
    /// One tag per step explaining where the arrival was attached.
    pub rationale: Vec<String>,
}

impl AdversaryTranscript {
    pub fn size(&self) -> usize {
        self.chain.size()
    }

    /// Re-runs `policy` on the recorded sequence and checks it reproduces the chain.
    pub fn replays_with(&self, policy: &mut dyn OnlinePolicy) -> Result<bool> {
        let run = run_online(policy, self.variant, &self.sequence)?;
        Ok(run.chain == self.chain)
    }
}

/// Drives a policy while the adversary appends arrivals.
struct Duel<'p> {
    policy: &'p mut dyn OnlinePolicy,
    session: OnlineSession,
    arrivals: Vec<Vec<Vertex>>,
    seq: Option<ArrivalSequence>,
    rationale: Vec<String>,
    name: String,
}

impl<'p> Duel<'p> {
    fn new(policy: &'p mut dyn OnlinePolicy, variant: Variant, name: String) -> Self {
        Self {
            policy,
            session: OnlineSession::new(variant),
            arrivals: Vec::new(),
            seq: None,
            rationale: Vec::new(),
            name,
        }
    }

    fn present(&mut self, earlier: Vec<Vertex>, tag: String) -> Result<()> {
        self.arrivals.push(earlier);
        let seq = ArrivalSequence::new(self.name.clone(), self.arrivals.clone())?;
        self.session.advance(&seq, self.policy)?;
        self.seq = Some(seq);
        self.rationale.push(tag);
        Ok(())
    }

    fn is_selected(&self, v: Vertex) -> bool {
        self.session.selected(self.arrivals.len()).contains(v)
    }

    fn finish(self, adversary: AdversaryKind) -> AdversaryTranscript {
        let sequence = self.seq.expect("at least one arrival");
        AdversaryTranscript {
            adversary,
            algorithm: self.policy.name(),
            variant: self.session.variant(),
            chain: self.session.chain(sequence.n()),
            sequence,
            rationale: self.rationale,
        }
    }
}

/// Builds a tree on `n` vertices. Each arrival hangs off the single arrived
/// vertex the algorithm has not selected, or off `v_1` when everything is
/// selected. At most one arrived vertex stays unselected after every step.
pub fn tree_adversary(n: usize, policy: &mut dyn OnlinePolicy, variant: Variant) -> Result<AdversaryTranscript> {
    if n == 0 {
        return Err(Error::Parameter("tree adversary needs n >= 1".into()));
    }
    let name = format!("tree-adversary-n{n}-{}", policy.name());
    let mut duel = Duel::new(policy, variant, name);
    duel.present(Vec::new(), "root".into())?;
    for i in 2..=n {
        let unselected: Vec<Vertex> = (1..i).filter(|&v| !duel.is_selected(v)).collect();
        match unselected.as_slice() {
            [] => duel.present(vec![1], "all-selected:attach-v1".into())?,
            [u] => duel.present(vec![*u], format!("attach-unselected:v{u}"))?,
            more => {
                return Err(Error::Precondition(format!(
                    "{} left {} vertices unselected before step {i}",
                    duel.policy.name(),
                    more.len()
                )))
            }
        }
    }
    let unselected = (1..=n).filter(|&v| !duel.is_selected(v)).count();
    if unselected > 1 {
        return Err(Error::Precondition(format!(
            "{} left {unselected} vertices unselected",
            duel.policy.name()
        )));
    }
    Ok(duel.finish(AdversaryKind::Tree))
}

/// Root, `delta` first-layer vertices, then `w_1..w_{delta-1}` with nested
/// neighborhoods `|N(w_i)| = delta - i + 1`, each keeping as many unselected
/// first-layer vertices as possible (lowest indices first).
pub fn two_layer_adversary(
    delta: usize,
    policy: &mut dyn OnlinePolicy,
    variant: Variant,
) -> Result<AdversaryTranscript> {
    if delta < 2 {
        return Err(Error::Parameter("two-layer adversary needs delta >= 2".into()));
    }
    if variant == Variant::Ids {
        return Err(Error::Parameter("two-layer adversary covers DS, CDS and TDS only".into()));
    }
    let name = format!("two-layer-adversary-d{delta}-{}", policy.name());
    let mut duel = Duel::new(policy, variant, name);
    duel.present(Vec::new(), "root".into())?;
    for j in 1..=delta {
        duel.present(vec![1], format!("first-layer:u{j}"))?;
    }
    let mut nbrs: Vec<Vertex> = (2..=delta + 1).collect();
    for i in 1..delta {
        let size = delta - i + 1;
        let mut ranked = nbrs.clone();
        ranked.sort_by_key(|&u| (duel.is_selected(u), u));
        ranked.truncate(size);
        ranked.sort_unstable();
        let free = ranked.iter().filter(|&&u| !duel.is_selected(u)).count();
        nbrs = ranked;
        duel.present(nbrs.clone(), format!("second-layer:w{i}:unselected={free}/{size}"))?;
    }
    Ok(duel.finish(AdversaryKind::TwoLayer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::is_valid_chain;
    use crate::graph::{classify, layers};
    use crate::online::Algorithm;

    #[test]
    fn tree_adversary_forces_n_minus_one() {
        for (alg, variant) in [
            (Algorithm::Parent, Variant::Ds),
            (Algorithm::GreedyIds, Variant::Ids),
            (Algorithm::FirstParent, Variant::Tds),
        ] {
            let mut policy = alg;
            let t = tree_adversary(10, &mut policy, variant).unwrap();
            assert!(t.size() >= 9, "{alg}: {}", t.size());
            assert!(classify(&t.sequence).is_tree);
            assert!(is_valid_chain(variant, &t.sequence, &t.chain));
            let mut again = alg;
            assert!(t.replays_with(&mut again).unwrap());
        }
        let t = tree_adversary(1, &mut Algorithm::Parent, Variant::Ds).unwrap();
        assert_eq!(t.size(), 1);
    }

    #[test]
    fn two_layer_shape() {
        let t = two_layer_adversary(4, &mut Algorithm::FirstParent, Variant::Ds).unwrap();
        assert_eq!(t.sequence.n(), 8);
        assert!(t.size() >= 4);
        let report = classify(&t.sequence);
        assert!(report.always_connected && report.bipartite());
        assert_eq!(layers(&t.sequence).unwrap().layer_sizes, vec![1, 4, 3]);
        for i in 6..8 {
            let outer = t.sequence.earlier_neighbors(i);
            let inner = t.sequence.earlier_neighbors(i + 1);
            assert_eq!(inner.len() + 1, outer.len());
            assert!(inner.iter().all(|u| outer.contains(u)));
        }
    }

    #[test]
    fn two_layer_rejects_ids() {
        assert!(two_layer_adversary(3, &mut Algorithm::GreedyIds, Variant::Ids).is_err());
    }
}
