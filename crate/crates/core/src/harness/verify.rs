//! Named invariant suites. Each suite builds a seeded instance pool, runs
//! per-instance checks and collects human-readable failure lines.

use std::fmt;

use crate::constructions::{generate, FamilySpec};
use crate::domination::{is_feasible, is_valid_chain, SolutionChain, Variant};
use crate::error::{Error, Result};
use crate::exact::naive::{all_chains, visit_chains};
use crate::exact::{mask_to_set, opt_inc, opt_off, Baseline, SolverCaps};
use crate::graph::{classify, layers, ArrivalSequence, Vertex};
use crate::online::{run_online, Algorithm};
use crate::transform::{connectify, incremental_connectify, tree_incremental_from_set};
use crate::vertex_set::VertexSet;

use super::random::{random_pool, RandomModel, DEFAULT_DENSITY};

pub const SUITE_NAMES: [&str; 6] = [
    "chain-validity",
    "degree-bounds",
    "tds-prefix-connected",
    "ids-uniqueness",
    "transformations",
    "layer-inequalities",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteSummary {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteSummary {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, failures: Vec<String>) {
        self.checked += 1;
        self.failures.extend(failures);
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} instances, {} failures",
            self.name,
            self.checked,
            self.failures.len()
        )?;
        for line in self.failures.iter().take(10) {
            write!(f, "\n  {line}")?;
        }
        if self.failures.len() > 10 {
            write!(f, "\n  ... {} more", self.failures.len() - 10)?;
        }
        Ok(())
    }
}

/// Knobs shared by all suites.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Instances drawn per random model.
    pub pool: usize,
    pub caps: SolverCaps,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            pool: 100,
            caps: SolverCaps::default(),
        }
    }
}

/// Runs one named suite, or every suite for `all`.
pub fn verify_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<SuiteSummary>> {
    if name == "all" {
        return SUITE_NAMES.iter().map(|s| run_one(s, opts)).collect();
    }
    Ok(vec![run_one(name, opts)?])
}

fn run_one(name: &str, opts: &SuiteOptions) -> Result<SuiteSummary> {
    let mut summary = SuiteSummary::new(name);
    let seed = opts.seed;
    match name {
        "chain-validity" => {
            let mut pool = random_pool(RandomModel::AlwaysConnected, 1..=14, opts.pool, DEFAULT_DENSITY, seed)?;
            pool.extend(random_pool(RandomModel::Tree, 1..=14, opts.pool, 0.0, seed + 1)?);
            pool.extend(random_pool(RandomModel::Bipartite, 2..=18, opts.pool, DEFAULT_DENSITY, seed + 2)?);
            for seq in &pool {
                summary.absorb(check_chain_validity(seq, &opts.caps)?);
            }
        }
        "degree-bounds" => {
            let mut pool = family_pool()?;
            pool.extend(random_pool(RandomModel::AlwaysConnected, 2..=12, opts.pool, DEFAULT_DENSITY, seed)?);
            for seq in &pool {
                let record = OptimaRecord::measure(seq, &opts.caps)?;
                summary.absorb(record.violations());
            }
        }
        "tds-prefix-connected" => {
            let pool = random_pool(RandomModel::AlwaysConnected, 1..=8, opts.pool, DEFAULT_DENSITY, seed)?;
            for seq in &pool {
                summary.absorb(check_tds_prefix_connected(seq)?);
            }
        }
        "ids-uniqueness" => {
            let mut pool = random_pool(RandomModel::AlwaysConnected, 1..=7, opts.pool, DEFAULT_DENSITY, seed)?;
            for n in 1..=7 {
                pool.push(generate(&FamilySpec::PathStandard { n })?);
            }
            pool.extend(star_pool(7)?);
            for seq in &pool {
                summary.absorb(check_ids_uniqueness(seq)?);
            }
        }
        "transformations" => {
            let mut pool = random_pool(RandomModel::AlwaysConnected, 1..=12, opts.pool, DEFAULT_DENSITY, seed)?;
            pool.extend(random_pool(RandomModel::Tree, 1..=14, opts.pool, 0.0, seed + 1)?);
            for seq in &pool {
                summary.absorb(check_transformations(seq, &opts.caps)?);
            }
            for (label, failures) in transformation_tightness()? {
                summary.checked += 1;
                summary.failures.extend(failures.into_iter().map(|f| format!("{label}: {f}")));
            }
        }
        "layer-inequalities" => {
            let pool = random_pool(RandomModel::Bipartite, 2..=24, opts.pool, DEFAULT_DENSITY, seed)?;
            for seq in &pool {
                summary.absorb(check_layer_inequalities(seq, &opts.caps)?);
            }
        }
        other => {
            return Err(Error::Unknown {
                kind: "suite",
                name: other.to_string(),
            })
        }
    }
    Ok(summary)
}

/// Stars on `2..=max_n` vertices with the center arriving first, second and last.
pub fn star_pool(max_n: usize) -> Result<Vec<ArrivalSequence>> {
    use crate::constructions::CenterPos;
    let mut out = Vec::new();
    for n in 2..=max_n {
        for center in [CenterPos::First, CenterPos::Second, CenterPos::Last] {
            out.push(generate(&FamilySpec::Star { n, center })?);
        }
    }
    Ok(out)
}

/// Small members of every construction family.
pub fn family_pool() -> Result<Vec<ArrivalSequence>> {
    let specs = [
        "path:n=7",
        "path:n=12",
        "star:n=6",
        "disjoint-stars:i=2,delta=5",
        "fan:delta=5",
        "alternating-fan:k=2,delta=4",
        "alternating-fan:k=3,delta=4",
        "modular-bridge:k=2,delta=4",
        "bridge:k=2,delta=5",
        "rotor:delta=2",
        "rotor:delta=4",
        "rotor:delta=6",
        "rotor:delta=8",
        "two-sided-fan:n=6",
        "two-sided-fan:n=10",
        "pendant-path:m=8",
        "ids-pendant-path:n=5,delta=4",
    ];
    specs
        .iter()
        .map(|s| {
            let (family, params) = s.split_once(':').unwrap_or((s, ""));
            generate(&FamilySpec::from_params(family, params)?)
        })
        .collect()
}

fn variant_slot(v: Variant) -> usize {
    Variant::ALL.iter().position(|&x| x == v).expect("listed variant")
}

/// Exact optima of one instance plus any algorithm sizes observed on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimaRecord {
    pub instance: String,
    pub n: usize,
    pub delta: usize,
    pub connected: bool,
    pub always_connected: bool,
    pub has_isolated: bool,
    off: [Option<usize>; 4],
    inc: [Option<usize>; 4],
    pub algorithm_sizes: Vec<(String, Variant, usize)>,
}

impl OptimaRecord {
    pub fn new(seq: &ArrivalSequence) -> Self {
        let report = classify(seq);
        let g = seq.full();
        Self {
            instance: seq.name().to_string(),
            n: seq.n(),
            delta: report.max_degree,
            connected: report.connected,
            always_connected: report.always_connected,
            has_isolated: g.vertices().any(|v| g.is_isolated(v)),
            off: [None; 4],
            inc: [None; 4],
            algorithm_sizes: Vec::new(),
        }
    }

    /// Solves every variant under both baselines; instances above a cap keep
    /// the corresponding entries empty.
    pub fn measure(seq: &ArrivalSequence, caps: &SolverCaps) -> Result<Self> {
        let mut record = Self::new(seq);
        for variant in Variant::ALL {
            for baseline in [Baseline::Offline, Baseline::Incremental] {
                let result = match baseline {
                    Baseline::Offline => opt_off(variant, seq, caps.off),
                    Baseline::Incremental => opt_inc(variant, seq, caps.inc),
                };
                match result {
                    Ok(r) => record.set(baseline, variant, r.size),
                    Err(Error::CapExceeded { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(record)
    }

    pub fn set(&mut self, baseline: Baseline, variant: Variant, size: usize) {
        let slot = variant_slot(variant);
        match baseline {
            Baseline::Offline => self.off[slot] = Some(size),
            Baseline::Incremental => self.inc[slot] = Some(size),
        }
    }

    pub fn get(&self, baseline: Baseline, variant: Variant) -> Option<usize> {
        let slot = variant_slot(variant);
        match baseline {
            Baseline::Offline => self.off[slot],
            Baseline::Incremental => self.inc[slot],
        }
    }

    pub fn add_algorithm(&mut self, name: impl Into<String>, variant: Variant, size: usize) {
        self.algorithm_sizes.push((name.into(), variant, size));
    }

    /// Degree lower bounds, the optimum sandwich and the incremental
    /// variant ordering, over whatever values are present.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut fail = |msg: String| out.push(format!("{}: {msg}", self.instance));
        let (n, delta) = (self.n, self.delta);
        let off = |v| self.get(Baseline::Offline, v);
        let inc = |v| self.get(Baseline::Incremental, v);

        if let Some(g) = off(Variant::Ds) {
            if g * (delta + 1) < n {
                fail(format!("gamma {g} < n/(delta+1) = {n}/{}", delta + 1));
            }
        }
        if let Some(g) = off(Variant::Tds) {
            if !self.has_isolated && delta > 0 && g * delta < n {
                fail(format!("gamma_T {g} < n/delta = {n}/{delta}"));
            }
        }
        if let Some(g) = off(Variant::Cds) {
            if self.connected && delta >= 2 && g * (delta - 1) + 2 < n {
                fail(format!("gamma_C {g} < (n-2)/(delta-1) = {}/{}", n - 2, delta - 1));
            }
        }
        if let (Some(g), Some(gc)) = (off(Variant::Ds), off(Variant::Cds)) {
            if self.connected && g > gc {
                fail(format!("gamma {g} > gamma_C {gc}"));
            }
        }
        for v in Variant::ALL {
            if let (Some(a), Some(b)) = (off(v), inc(v)) {
                if a > b {
                    fail(format!("{v}: opt_off {a} > opt_inc {b}"));
                }
            }
        }
        for (alg, v, size) in &self.algorithm_sizes {
            let floor = inc(*v).or(off(*v));
            if let Some(opt) = floor {
                if opt > *size {
                    fail(format!("{v}: {alg} size {size} below optimum {opt}"));
                }
            }
        }
        if n >= 3 && self.always_connected {
            if let (Some(d), Some(t), Some(c)) = (inc(Variant::Ds), inc(Variant::Tds), inc(Variant::Cds)) {
                if d > t || t > c + 1 {
                    fail(format!("incremental ordering broken: ds {d}, tds {t}, cds {c}"));
                }
            }
        }
        out
    }
}

/// Which (algorithm, variant) pairs are expected to stay feasible on
/// always-connected input.
pub fn supported_pairs() -> Vec<(Algorithm, Variant)> {
    vec![
        (Algorithm::Parent, Variant::Ds),
        (Algorithm::Parent, Variant::Cds),
        (Algorithm::FirstParent, Variant::Ds),
        (Algorithm::FirstParent, Variant::Cds),
        (Algorithm::FirstParent, Variant::Tds),
        (Algorithm::GreedyIds, Variant::Ds),
        (Algorithm::GreedyIds, Variant::Ids),
        (Algorithm::EvenLayer(0), Variant::Ds),
        (Algorithm::EvenLayer(1), Variant::Ds),
    ]
}

/// Online outputs are valid chains; Parent and FirstParent stay connected
/// at every prefix; opt_inc witnesses are valid; on bipartite input the
/// smaller side plus `v_1` is a valid chain; the better even-layer parity
/// stays within `ceil(n/2) + 1`.
pub fn check_chain_validity(seq: &ArrivalSequence, caps: &SolverCaps) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let name = seq.name();
    let always = seq.is_always_connected();
    let mut even_best = usize::MAX;
    for (alg, variant) in supported_pairs() {
        let mut policy = alg;
        match run_online(&mut policy, variant, seq) {
            Ok(run) => {
                if !is_valid_chain(variant, seq, &run.chain) {
                    out.push(format!("{name}: {alg}/{variant} chain invalid"));
                }
                if always
                    && matches!(alg, Algorithm::Parent | Algorithm::FirstParent)
                    && variant != Variant::Tds
                    && !is_valid_chain(Variant::Cds, seq, &run.chain)
                {
                    out.push(format!("{name}: {alg}/{variant} chain not connected at every prefix"));
                }
                if let Algorithm::EvenLayer(_) = alg {
                    even_best = even_best.min(run.size());
                }
            }
            Err(e) if always => out.push(format!("{name}: {alg}/{variant} failed: {e}")),
            Err(_) => {}
        }
    }
    if always && even_best > seq.n().div_ceil(2) + 1 {
        out.push(format!("{name}: best even-layer size {even_best} > ceil(n/2)+1"));
    }
    if seq.n() <= caps.inc {
        for variant in Variant::ALL {
            let r = opt_inc(variant, seq, caps.inc)?;
            let chain = r.chain().expect("incremental witness is a chain");
            if !is_valid_chain(variant, seq, chain) || chain.size() != r.size {
                out.push(format!("{name}: opt_inc {variant} witness invalid"));
            }
        }
    }
    if always {
        if let Some(coloring) = crate::graph::two_coloring(seq.graph()) {
            let n = seq.n();
            let zeros = coloring.iter().filter(|&&c| c == 0).count();
            let smaller = u8::from(2 * zeros > n);
            let members = (1..=n).filter(|&v| v == 1 || coloring[v - 1] == smaller);
            let set = VertexSet::from_vertices(n, members);
            let chain = SolutionChain::at_arrival(n, &set);
            if !is_valid_chain(Variant::Ds, seq, &chain) {
                out.push(format!("{name}: smaller partite set plus v1 is not a valid chain"));
            }
        }
    }
    Ok(out)
}

/// Every valid TDS chain of an always-connected sequence has connected sets.
pub fn check_tds_prefix_connected(seq: &ArrivalSequence) -> Result<Vec<String>> {
    if !seq.is_always_connected() {
        return Err(Error::Precondition(format!("{} is not always-connected", seq.name())));
    }
    let n = seq.n();
    let mut out = Vec::new();
    let mut reported = false;
    visit_chains(
        Variant::Tds,
        seq,
        |partial| {
            let i = partial.len();
            let set = mask_to_set(n, partial[i - 1]);
            if !reported && seq.prefix(i).induced_components(&set) > 1 {
                out.push(format!("{}: valid TDS prefix D_{i} = {set} is disconnected", seq.name()));
                reported = true;
            }
            true
        },
        |_| true,
    )?;
    Ok(out)
}

/// Exactly one valid IDS chain exists, and GreedyIDS produces it.
pub fn check_ids_uniqueness(seq: &ArrivalSequence) -> Result<Vec<String>> {
    let chains = all_chains(Variant::Ids, seq, 2)?;
    let greedy = run_online(&mut Algorithm::GreedyIds, Variant::Ids, seq)?;
    let name = seq.name();
    Ok(match chains.as_slice() {
        [only] if *only == greedy.chain => Vec::new(),
        [only] => vec![format!("{name}: unique IDS chain {only} differs from greedy {}", greedy.chain)],
        [] => vec![format!("{name}: no valid IDS chain")],
        _ => vec![format!("{name}: more than one valid IDS chain")],
    })
}

/// All three transformations on exact witnesses: bounds hold and outputs
/// are feasible. Tree-only checks run when the final graph is a tree.
pub fn check_transformations(seq: &ArrivalSequence, caps: &SolverCaps) -> Result<Vec<String>> {
    let name = seq.name();
    let mut out = Vec::new();
    let report = classify(seq);
    let s = opt_off(Variant::Ds, seq, caps.off)?.witness.final_set();

    if report.connected {
        let cert = connectify(seq, &s)?;
        let set = cert.output.final_set();
        if !is_feasible(Variant::Cds, seq.full(), &set) {
            out.push(format!("{name}: connectify output is not a CDS"));
        }
        if !cert.satisfied {
            out.push(format!("{name}: connectify size {} > bound {}", cert.output_size, cert.bound));
        }
    }
    if report.always_connected {
        let inc = opt_inc(Variant::Ds, seq, caps.inc)?;
        let chain = inc.chain().expect("incremental witness is a chain");
        let cert = incremental_connectify(seq, chain)?;
        match &cert.output {
            crate::transform::TransformOutput::Chain(c) if is_valid_chain(Variant::Cds, seq, c) => {}
            _ => out.push(format!("{name}: inc-connectify output is not a valid CDS chain")),
        }
        if !cert.satisfied {
            out.push(format!(
                "{name}: inc-connectify size {} > |R|+c(R)-1 = {} (births bound {})",
                cert.output_size,
                cert.bound,
                cert.births_bound.unwrap_or(0)
            ));
        }
        if cert.births_bound.is_some_and(|b| cert.output_size > b) {
            out.push(format!("{name}: inc-connectify exceeds its births bound"));
        }
    }
    if report.is_tree && report.always_connected {
        let cert = tree_incremental_from_set(seq, &s)?;
        match &cert.output {
            crate::transform::TransformOutput::Chain(c) if is_valid_chain(Variant::Ds, seq, c) => {}
            _ => out.push(format!("{name}: tree-greedy output is not a valid DS chain")),
        }
        if !cert.satisfied {
            out.push(format!("{name}: tree-greedy size {} > bound {}", cert.output_size, cert.bound));
        }
        if cert.max_marks.is_some_and(|m| m > 1) {
            out.push(format!("{name}: a component of S was marked twice"));
        }
    }
    Ok(out)
}

/// The tightness families: each certificate must meet its bound exactly.
pub fn transformation_tightness() -> Result<Vec<(String, Vec<String>)>> {
    let mut rows = Vec::new();
    let exact = |size: usize, bound: usize, expect: usize| -> Vec<String> {
        if size == bound && bound == expect {
            Vec::new()
        } else {
            vec![format!("size {size}, bound {bound}, expected {expect}")]
        }
    };
    for n in [6, 9, 12] {
        let seq = generate(&FamilySpec::PathStandard { n })?;
        let s = VertexSet::from_vertices(n, (2..=n).step_by(3));
        let cert = connectify(&seq, &s)?;
        rows.push((format!("connectify path n={n}"), exact(cert.output_size, cert.bound, n - 2)));
    }
    for n in [4, 8, 12] {
        let seq = generate(&FamilySpec::PathStandard { n })?;
        let pairs: Vec<(Vertex, usize)> = (1..=n).step_by(2).map(|v| (v, v)).collect();
        let chain = SolutionChain::from_pairs(n, &pairs)?;
        let cert = incremental_connectify(&seq, &chain)?;
        rows.push((format!("inc-connectify path n={n}"), exact(cert.output_size, cert.bound, n - 1)));
    }
    for m in [2, 8, 14] {
        let seq = generate(&FamilySpec::PendantPath { m })?;
        let s = VertexSet::from_vertices(seq.n(), (2..=m).step_by(3));
        let cert = tree_incremental_from_set(&seq, &s)?;
        rows.push((format!("tree-greedy pendant-path m={m}"), exact(cert.output_size, cert.bound, 2 * (m + 1) / 3)));
    }
    Ok(rows)
}

/// FirstParent (DS) per-layer counts satisfy `s_i <= l_i` and
/// `s_i <= l_{i+1}` for every layer `i >= 1`; when `opt_inc(DS) <= 3` the
/// instance has at most 6 layers.
pub fn check_layer_inequalities(seq: &ArrivalSequence, caps: &SolverCaps) -> Result<Vec<String>> {
    let name = seq.name();
    let la = layers(seq)?;
    let run = run_online(&mut Algorithm::FirstParent, Variant::Ds, seq)?;
    let s = run
        .per_layer_selected
        .ok_or_else(|| Error::Precondition(format!("{name}: layers undefined")))?;
    let l = &la.layer_sizes;
    let mut out = Vec::new();
    for i in 1..s.len() {
        let next = l.get(i + 1).copied().unwrap_or(0);
        if s[i] > l[i] {
            out.push(format!("{name}: s_{i} = {} > l_{i} = {}", s[i], l[i]));
        }
        if s[i] > next {
            out.push(format!("{name}: s_{i} = {} > l_{} = {next}", s[i], i + 1));
        }
    }
    if seq.n() <= caps.inc {
        let opt = opt_inc(Variant::Ds, seq, caps.inc)?.size;
        if opt <= 3 && la.count() > 6 {
            out.push(format!("{name}: opt_inc(DS) = {opt} but {} layers", la.count()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteOptions {
        SuiteOptions {
            seed: 3,
            pool: 12,
            caps: SolverCaps::default(),
        }
    }

    #[test]
    fn every_suite_passes_on_a_small_pool() {
        for name in ["chain-validity", "degree-bounds", "tds-prefix-connected", "ids-uniqueness", "layer-inequalities"] {
            let s = &verify_suite(name, &quick()).unwrap()[0];
            assert!(s.passed(), "{s}");
            assert!(s.checked > 0);
        }
    }

    #[test]
    fn tightness_rows_are_exact() {
        for (label, failures) in transformation_tightness().unwrap() {
            assert!(failures.is_empty(), "{label}: {failures:?}");
        }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(verify_suite("nope", &quick()).is_err());
    }

    #[test]
    fn record_flags_broken_sandwich() {
        let seq = generate(&FamilySpec::PathStandard { n: 4 }).unwrap();
        let mut r = OptimaRecord::new(&seq);
        r.set(Baseline::Offline, Variant::Ds, 3);
        r.set(Baseline::Incremental, Variant::Ds, 2);
        assert_eq!(r.violations().len(), 1);
    }
}
