//! Exact baselines.
//!
//! * [`opt_off`]: minimum feasible set for the final graph (pruned subset search).
//! * [`opt_inc`]: minimum final size over all valid incremental chains
//!   (memoized depth-first search over `(step, D_step)` states).
//! * [`naive`]: plain exhaustive chain enumeration, used as an oracle.
//!
//! All three work on `u64` bitmasks (bit `v-1` is vertex `v`), so instances
//! are limited to [`MAX_EXACT_VERTICES`] vertices regardless of the caps.

mod incremental;
pub mod naive;
mod offline;

use std::fmt;
use std::str::FromStr;

pub use incremental::opt_inc;
pub use offline::opt_off;

use crate::domination::{SolutionChain, Variant};
use crate::error::{Error, Result};
use crate::graph::{ArrivalSequence, Prefix, Vertex};
use crate::vertex_set::VertexSet;

pub const MAX_EXACT_VERTICES: usize = 64;
pub const DEFAULT_CAP_OFF: usize = 20;
pub const DEFAULT_CAP_INC: usize = 14;
pub const CAP_OVERRIDE_ENV: &str = "DOMINO_CAP_OVERRIDE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Baseline {
    Offline,
    Incremental,
}

impl Baseline {
    pub fn as_str(self) -> &'static str {
        match self {
            Baseline::Offline => "off",
            Baseline::Incremental => "inc",
        }
    }
}

impl fmt::Display for Baseline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Baseline {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "off" => Ok(Baseline::Offline),
            "inc" => Ok(Baseline::Incremental),
            _ => Err(Error::Unknown {
                kind: "baseline",
                name: s.to_string(),
            }),
        }
    }
}

/// Largest instance each solver will attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverCaps {
    pub off: usize,
    pub inc: usize,
}

impl Default for SolverCaps {
    fn default() -> Self {
        Self {
            off: DEFAULT_CAP_OFF,
            inc: DEFAULT_CAP_INC,
        }
    }
}

impl SolverCaps {
    pub fn new(off: usize, inc: usize) -> Result<Self> {
        let caps = Self { off, inc };
        caps.validate()?;
        Ok(caps)
    }

    pub fn validate(&self) -> Result<()> {
        if self.off > MAX_EXACT_VERTICES || self.inc > MAX_EXACT_VERTICES {
            return Err(Error::Config(format!(
                "solver caps ({}, {}) exceed the bitmask limit of {MAX_EXACT_VERTICES}",
                self.off, self.inc
            )));
        }
        Ok(())
    }

    /// Applies `DOMINO_CAP_OVERRIDE`, when set, to both caps.
    pub fn with_env_override(self) -> Result<Self> {
        match std::env::var(CAP_OVERRIDE_ENV) {
            Ok(raw) => {
                let cap: usize = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{CAP_OVERRIDE_ENV}={raw} is not a number")))?;
                Self::new(cap, cap)
            }
            Err(_) => Ok(self),
        }
    }

    pub fn get(&self, baseline: Baseline) -> usize {
        match baseline {
            Baseline::Offline => self.off,
            Baseline::Incremental => self.inc,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Set(VertexSet),
    Chain(SolutionChain),
}

impl Witness {
    pub fn final_set(&self) -> VertexSet {
        match self {
            Witness::Set(s) => s.clone(),
            Witness::Chain(c) => c.final_set(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Set(s) => write!(f, "{s}"),
            Witness::Chain(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub variant: Variant,
    pub baseline: Baseline,
    pub size: usize,
    pub witness: Witness,
    pub nodes_explored: u64,
}

impl SolveResult {
    pub fn chain(&self) -> Option<&SolutionChain> {
        match &self.witness {
            Witness::Chain(c) => Some(c),
            Witness::Set(_) => None,
        }
    }
}

/// Dispatches on the baseline.
pub fn solve(variant: Variant, baseline: Baseline, seq: &ArrivalSequence, caps: &SolverCaps) -> Result<SolveResult> {
    match baseline {
        Baseline::Offline => opt_off(variant, seq, caps.off),
        Baseline::Incremental => opt_inc(variant, seq, caps.inc),
    }
}

pub(crate) fn check_cap(baseline: Baseline, n: usize, cap: usize) -> Result<()> {
    if n > cap.min(MAX_EXACT_VERTICES) {
        return Err(Error::CapExceeded {
            baseline: baseline.as_str(),
            n,
            cap: cap.min(MAX_EXACT_VERTICES),
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn bit(v: Vertex) -> u64 {
    1u64 << (v - 1)
}

pub(crate) fn mask_to_set(universe: usize, mask: u64) -> VertexSet {
    VertexSet::from_vertices(universe, mask_vertices(mask))
}

pub(crate) fn mask_vertices(mask: u64) -> impl Iterator<Item = Vertex> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let tz = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(tz + 1)
    })
}

/// Bitmask view of one prefix graph.
#[derive(Debug, Clone)]
pub(crate) struct MaskGraph {
    pub n: usize,
    pub all: u64,
    pub open: Vec<u64>,
    pub closed: Vec<u64>,
    pub components: Vec<u64>,
    pub non_isolated: u64,
}

impl MaskGraph {
    pub fn new(g: Prefix<'_>) -> Self {
        let n = g.n();
        assert!(n <= MAX_EXACT_VERTICES);
        let open: Vec<u64> = g
            .vertices()
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | bit(u)))
            .collect();
        let closed: Vec<u64> = open.iter().enumerate().map(|(i, &m)| m | 1u64 << i).collect();
        let ids = g.component_ids();
        let count = ids.iter().max().map_or(0, |m| m + 1);
        let mut components = vec![0u64; count];
        for (i, &c) in ids.iter().enumerate() {
            components[c] |= 1u64 << i;
        }
        let non_isolated = open
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .fold(0u64, |acc, (i, _)| acc | 1u64 << i);
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Self {
            n,
            all,
            open,
            closed,
            components,
            non_isolated,
        }
    }

    #[inline]
    pub fn closed_cover(&self, mask: u64) -> u64 {
        mask_vertices(mask).fold(0, |acc, v| acc | self.closed[v - 1])
    }

    #[inline]
    pub fn open_cover(&self, mask: u64) -> u64 {
        mask_vertices(mask).fold(0, |acc, v| acc | self.open[v - 1])
    }

    /// Is the subgraph induced by `mask` connected (empty counts as connected)?
    pub fn connected_within(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let mut reached = mask & mask.wrapping_neg();
        loop {
            let grown = (self.closed_cover(reached)) & mask;
            if grown == reached {
                return reached == mask;
            }
            reached = grown;
        }
    }

    pub fn is_independent(&self, mask: u64) -> bool {
        mask_vertices(mask).all(|v| self.open[v - 1] & mask == 0)
    }

    pub fn feasible(&self, variant: Variant, mask: u64) -> bool {
        if mask & !self.all != 0 {
            return false;
        }
        match variant {
            Variant::Ds => self.closed_cover(mask) == self.all,
            Variant::Cds => {
                self.closed_cover(mask) == self.all
                    && self.components.iter().all(|&c| self.connected_within(mask & c))
            }
            Variant::Tds => self.open_cover(mask) & self.non_isolated == self.non_isolated,
            Variant::Ids => self.closed_cover(mask) == self.all && self.is_independent(mask),
        }
    }
}
