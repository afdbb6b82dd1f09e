//! Experiment driver: expands instance sources, runs every
//! (instance, variant, algorithm) combination, computes strict ratios against
//! the exact baselines and renders tables.

mod config;
pub mod random;
pub mod verify;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub use config::{ExperimentConfig, InstanceSource, RowAlgorithm, TableFormat};
pub use random::{random_pool, random_sequence, rng_from_seed, RandomModel};
pub use verify::{verify_suite, OptimaRecord, SuiteOptions, SuiteSummary, SUITE_NAMES};

use crate::adversary::{tree_adversary, two_layer_adversary, AdversaryKind};
use crate::constructions::generate;
use crate::domination::Variant;
use crate::error::{Error, Result};
use crate::exact::{opt_inc, opt_off, Baseline, SolverCaps};
use crate::format::parse;
use crate::graph::ArrivalSequence;
use crate::online::{run_online, Algorithm};

pub const CSV_HEADER: [&str; 11] = [
    "instance",
    "variant",
    "algorithm",
    "alg_size",
    "opt_inc",
    "opt_off",
    "ratio_inc",
    "ratio_off",
    "n",
    "delta",
    "notes",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub instance: String,
    pub variant: Variant,
    pub algorithm: String,
    pub alg_size: Option<usize>,
    pub opt_inc: Option<usize>,
    pub opt_off: Option<usize>,
    pub n: usize,
    pub delta: usize,
    pub notes: Vec<String>,
}

impl RatioReport {
    /// `alg_size / opt_inc` as an exact fraction, when both are known and `opt_inc > 0`.
    pub fn ratio_inc(&self) -> Option<(usize, usize)> {
        fraction(self.alg_size, self.opt_inc)
    }

    pub fn ratio_off(&self) -> Option<(usize, usize)> {
        fraction(self.alg_size, self.opt_off)
    }

    /// `opt_off <= opt_inc <= alg_size` over whichever values are present.
    pub fn sandwich_holds(&self) -> bool {
        let le = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        };
        le(self.opt_off, self.opt_inc) && le(self.opt_inc, self.alg_size) && le(self.opt_off, self.alg_size)
    }
}

fn fraction(num: Option<usize>, den: Option<usize>) -> Option<(usize, usize)> {
    match (num, den) {
        (Some(a), Some(b)) if b > 0 => Some((a, b)),
        _ => None,
    }
}

/// `num / den` rounded half-to-even to three decimals, computed exactly.
pub fn format_ratio(num: usize, den: usize) -> String {
    assert!(den > 0);
    let scaled = num as u128 * 1000;
    let (den, mut q) = (den as u128, scaled / den as u128);
    let rem = scaled % den;
    if 2 * rem > den || (2 * rem == den && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:03}", q / 1000, q % 1000)
}

struct Baselines {
    opt_inc: Option<usize>,
    opt_off: Option<usize>,
    notes: Vec<String>,
}

fn compute_baselines(seq: &ArrivalSequence, variant: Variant, wanted: &[Baseline], need_inc: bool, caps: &SolverCaps) -> Baselines {
    let mut notes = Vec::new();
    let mut capped = false;
    let mut run = |baseline: Baseline| {
        let result = match baseline {
            Baseline::Offline => opt_off(variant, seq, caps.off),
            Baseline::Incremental => opt_inc(variant, seq, caps.inc),
        };
        match result {
            Ok(r) => Some(r.size),
            Err(Error::CapExceeded { .. }) => {
                capped = true;
                None
            }
            Err(e) => {
                notes.push(format!("{baseline} failed: {e}"));
                None
            }
        }
    };
    let opt_off = wanted.contains(&Baseline::Offline).then(|| run(Baseline::Offline)).flatten();
    let opt_inc = (need_inc || wanted.contains(&Baseline::Incremental))
        .then(|| run(Baseline::Incremental))
        .flatten();
    if capped {
        notes.insert(0, "cap".into());
    }
    Baselines { opt_inc, opt_off, notes }
}

enum WorkItem {
    Static { seq: ArrivalSequence, variant: Variant },
    Duel { kind: AdversaryKind, size: usize, variant: Variant, algorithm: Algorithm },
}

fn expand_sources(cfg: &ExperimentConfig) -> Result<Vec<WorkItem>> {
    let mut statics = Vec::new();
    let mut items = Vec::new();
    for (k, source) in cfg.sources.iter().enumerate() {
        match source {
            InstanceSource::Family(spec) => statics.push(generate(spec)?),
            InstanceSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let mut seq = parse(&text)?;
                if seq.name().is_empty() {
                    seq.set_name(path.file_stem().map_or("instance".into(), |s| s.to_string_lossy().into_owned()));
                }
                statics.push(seq);
            }
            InstanceSource::Inline(seq) => statics.push(seq.clone()),
            InstanceSource::Random {
                model,
                n_min,
                n_max,
                count,
                density,
            } => {
                let seed = cfg.seed.wrapping_add(k as u64);
                statics.extend(random_pool(*model, *n_min..=*n_max, *count, *density, seed)?);
            }
            InstanceSource::Adversary { kind, size } => {
                for &variant in &cfg.variants {
                    for alg in &cfg.algorithms {
                        if let RowAlgorithm::Online(algorithm) = *alg {
                            items.push(WorkItem::Duel {
                                kind: *kind,
                                size: *size,
                                variant,
                                algorithm,
                            });
                        }
                    }
                }
            }
        }
    }
    for seq in statics {
        for &variant in &cfg.variants {
            items.push(WorkItem::Static { seq: seq.clone(), variant });
        }
    }
    Ok(items)
}

fn run_item(item: &WorkItem, cfg: &ExperimentConfig) -> Vec<RatioReport> {
    match item {
        WorkItem::Static { seq, variant } => {
            let need_inc = cfg.algorithms.contains(&RowAlgorithm::OptInc);
            let base = compute_baselines(seq, *variant, &cfg.baselines, need_inc, &cfg.caps);
            let show_inc = cfg.baselines.contains(&Baseline::Incremental);
            cfg.algorithms
                .iter()
                .map(|alg| {
                    let mut notes = base.notes.clone();
                    let alg_size = match alg {
                        RowAlgorithm::OptInc => base.opt_inc,
                        RowAlgorithm::Online(a) => match run_online(&mut a.to_owned(), *variant, seq) {
                            Ok(run) => Some(run.size()),
                            Err(e) => {
                                notes.push(format!("failed: {e}"));
                                None
                            }
                        },
                    };
                    report(seq, *variant, alg.to_string(), alg_size, show_inc.then_some(base.opt_inc).flatten(), base.opt_off, notes)
                })
                .collect()
        }
        WorkItem::Duel {
            kind,
            size,
            variant,
            algorithm,
        } => {
            let mut policy = *algorithm;
            let transcript = match kind {
                AdversaryKind::Tree => tree_adversary(*size, &mut policy, *variant),
                AdversaryKind::TwoLayer => two_layer_adversary(*size, &mut policy, *variant),
            };
            match transcript {
                Ok(t) => {
                    let base = compute_baselines(&t.sequence, *variant, &cfg.baselines, false, &cfg.caps);
                    vec![report(
                        &t.sequence,
                        *variant,
                        algorithm.to_string(),
                        Some(t.size()),
                        base.opt_inc,
                        base.opt_off,
                        base.notes,
                    )]
                }
                Err(e) => vec![RatioReport {
                    instance: format!("{kind}-adversary-{size}-{algorithm}"),
                    variant: *variant,
                    algorithm: algorithm.to_string(),
                    alg_size: None,
                    opt_inc: None,
                    opt_off: None,
                    n: 0,
                    delta: 0,
                    notes: vec![format!("failed: {e}")],
                }],
            }
        }
    }
}

fn report(
    seq: &ArrivalSequence,
    variant: Variant,
    algorithm: String,
    alg_size: Option<usize>,
    opt_inc: Option<usize>,
    opt_off: Option<usize>,
    mut notes: Vec<String>,
) -> RatioReport {
    let mut r = RatioReport {
        instance: seq.name().to_string(),
        variant,
        algorithm,
        alg_size,
        opt_inc,
        opt_off,
        n: seq.n(),
        delta: seq.graph().max_degree(),
        notes: Vec::new(),
    };
    if !r.sandwich_holds() {
        notes.push("sandwich-violation".into());
    }
    r.notes = notes;
    r
}

/// Runs the whole grid. Rows come back sorted by instance, variant, algorithm;
/// the result does not depend on thread scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RatioReport>> {
    cfg.validate()?;
    let items = expand_sources(cfg)?;
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::new());
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(k) else { break };
                let out = run_item(item, cfg);
                rows.lock().expect("no worker panicked").extend(out);
            });
        }
    });
    let mut rows = rows.into_inner().expect("no worker panicked");
    rows.sort_by(|a, b| {
        natural_cmp(&a.instance, &b.instance)
            .then(a.variant.cmp(&b.variant))
            .then(a.algorithm.cmp(&b.algorithm))
    });
    Ok(rows)
}

/// Compares digit runs numerically, so `path-n4` sorts before `path-n10`.
pub fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let run = |s: &[u8]| s.iter().take_while(|b| b.is_ascii_digit()).count();
                let (i, j) = (run(x), run(y));
                let strip = |s: &[u8]| {
                    let k = s.iter().take_while(|&&b| b == b'0').count();
                    s[k..].to_vec()
                };
                let (p, q) = (strip(&x[..i]), strip(&y[..j]));
                let ord = p.len().cmp(&q.len()).then_with(|| p.cmp(&q)).then(i.cmp(&j));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[i..];
                y = &y[j..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn cells(r: &RatioReport) -> [String; 11] {
    let opt = |v: Option<usize>| v.map_or(String::new(), |v| v.to_string());
    let ratio = |f: Option<(usize, usize)>| f.map_or(String::new(), |(a, b)| format_ratio(a, b));
    [
        r.instance.clone(),
        r.variant.as_str().to_string(),
        r.algorithm.clone(),
        opt(r.alg_size),
        opt(r.opt_inc),
        opt(r.opt_off),
        ratio(r.ratio_inc()),
        ratio(r.ratio_off()),
        r.n.to_string(),
        r.delta.to_string(),
        r.notes.join("; "),
    ]
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn emit_table(reports: &[RatioReport], format: TableFormat) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::Precondition("no report rows to render".into()));
    }
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            out.push_str(&CSV_HEADER.join(","));
            out.push('\n');
            for r in reports {
                let row: Vec<String> = cells(r).iter().map(|c| csv_field(c)).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        TableFormat::Markdown => {
            out.push_str(&format!("| {} |\n", CSV_HEADER.join(" | ")));
            out.push_str(&format!("|{}\n", "---|".repeat(CSV_HEADER.len())));
            for r in reports {
                let row: Vec<String> = cells(r).iter().map(|c| c.replace('|', "\\|")).collect();
                out.push_str(&format!("| {} |\n", row.join(" | ")));
            }
        }
    }
    Ok(out)
}
