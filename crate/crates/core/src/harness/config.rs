//! Flat `key = value` experiment configuration. Repeating a key appends to
//! the corresponding list; `#` starts a comment.
//!
//! ```text
//! family = rotor:delta=4
//! random = connected:n=4..12,count=20,density=0.3
//! adversary = tree:25
//! file = instances/fan.txt
//! variant = cds
//! algorithm = parent
//! algorithm = opt-inc
//! baseline = off
//! baseline = inc
//! cap_off = 20
//! cap_inc = 14
//! seed = 42
//! out = results.csv
//! format = csv
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::adversary::AdversaryKind;
use crate::constructions::FamilySpec;
use crate::domination::Variant;
use crate::error::{Error, Result};
use crate::exact::{Baseline, SolverCaps};
use crate::graph::ArrivalSequence;
use crate::online::Algorithm;

use super::random::{RandomModel, DEFAULT_DENSITY};

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    Family(FamilySpec),
    File(PathBuf),
    /// Adaptive instance built against each algorithm; `size` is `n` for the
    /// tree adversary and `delta` for the two-layer one.
    Adversary { kind: AdversaryKind, size: usize },
    Random {
        model: RandomModel,
        n_min: usize,
        n_max: usize,
        count: usize,
        density: f64,
    },
    Inline(ArrivalSequence),
}

impl InstanceSource {
    fn parse(key: &str, value: &str) -> Result<Self> {
        match key {
            "family" => {
                let (name, params) = value.split_once(':').unwrap_or((value, ""));
                Ok(InstanceSource::Family(FamilySpec::from_params(name.trim(), params)?))
            }
            "file" => Ok(InstanceSource::File(PathBuf::from(value))),
            "adversary" => {
                let (kind, size) = value
                    .split_once(':')
                    .ok_or_else(|| Error::Config(format!("adversary expects `kind:size`, got `{value}`")))?;
                Ok(InstanceSource::Adversary {
                    kind: kind.trim().parse()?,
                    size: parse_num("adversary size", size)?,
                })
            }
            "random" => parse_random(value),
            _ => unreachable!("caller filters keys"),
        }
    }
}

fn parse_num<T: FromStr>(what: &str, raw: &str) -> Result<T> {
    raw.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{what}: cannot parse `{}`", raw.trim())))
}

fn parse_random(value: &str) -> Result<InstanceSource> {
    let (model, rest) = value.split_once(':').unwrap_or((value, ""));
    let model: RandomModel = model.trim().parse()?;
    let (mut n_min, mut n_max, mut count, mut density) = (4, 10, 10, DEFAULT_DENSITY);
    for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("random: expected key=value, got `{part}`")))?;
        match k.trim() {
            "n" => match v.split_once("..") {
                Some((lo, hi)) => {
                    n_min = parse_num("random n", lo)?;
                    n_max = parse_num("random n", hi)?;
                }
                None => {
                    n_min = parse_num("random n", v)?;
                    n_max = n_min;
                }
            },
            "count" => count = parse_num("random count", v)?,
            "density" => density = parse_num("random density", v)?,
            other => return Err(Error::Config(format!("random: unknown key `{other}`"))),
        }
    }
    if n_min == 0 || n_min > n_max {
        return Err(Error::Config(format!("random: bad size range {n_min}..{n_max}")));
    }
    Ok(InstanceSource::Random {
        model,
        n_min,
        n_max,
        count,
        density,
    })
}

/// An algorithm column: an online policy, or the incremental optimum itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowAlgorithm {
    Online(Algorithm),
    OptInc,
}

impl fmt::Display for RowAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowAlgorithm::Online(a) => write!(f, "{a}"),
            RowAlgorithm::OptInc => f.write_str("opt-inc"),
        }
    }
}

impl FromStr for RowAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "opt-inc" => Ok(RowAlgorithm::OptInc),
            _ => Ok(RowAlgorithm::Online(s.parse()?)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "md" | "markdown" => Ok(TableFormat::Markdown),
            _ => Err(Error::Unknown {
                kind: "format",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub sources: Vec<InstanceSource>,
    pub variants: Vec<Variant>,
    pub algorithms: Vec<RowAlgorithm>,
    pub baselines: Vec<Baseline>,
    pub caps: SolverCaps,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: TableFormat,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            sources: Vec::new(),
            variants: vec![Variant::Ds],
            algorithms: vec![RowAlgorithm::Online(Algorithm::Parent)],
            baselines: vec![Baseline::Offline, Baseline::Incremental],
            caps: SolverCaps::default(),
            seed: 0,
            out: None,
            format: TableFormat::Csv,
        }
    }
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        let (mut variants, mut algorithms, mut baselines) = (Vec::new(), Vec::new(), Vec::new());
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", idx + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let at = |e: Error| {
                let msg = match e {
                    Error::Config(inner) => inner,
                    other => other.to_string(),
                };
                Error::Config(format!("line {}: {msg}", idx + 1))
            };
            match key {
                "family" | "file" | "adversary" | "random" => {
                    cfg.sources.push(InstanceSource::parse(key, value).map_err(at)?)
                }
                "variant" => variants.push(value.parse().map_err(at)?),
                "algorithm" => algorithms.push(value.parse().map_err(at)?),
                "baseline" => baselines.push(value.parse().map_err(at)?),
                "cap_off" => cfg.caps.off = parse_num("cap_off", value).map_err(at)?,
                "cap_inc" => cfg.caps.inc = parse_num("cap_inc", value).map_err(at)?,
                "seed" => cfg.seed = parse_num("seed", value).map_err(at)?,
                "out" => cfg.out = Some(PathBuf::from(value)),
                "format" => cfg.format = value.parse().map_err(at)?,
                other => return Err(Error::Config(format!("line {}: unknown key `{other}`", idx + 1))),
            }
        }
        if !variants.is_empty() {
            cfg.variants = variants;
        }
        if !algorithms.is_empty() {
            cfg.algorithms = algorithms;
        }
        if !baselines.is_empty() {
            cfg.baselines = baselines;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.caps.validate()?;
        if self.sources.is_empty() {
            return Err(Error::Config("no instance source given".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_repeated_keys() {
        let cfg = ExperimentConfig::parse(
            "# rotor sweep\nfamily = rotor:delta=4\nfamily = rotor:delta=6\nvariant = cds\nvariant = tds\n\
             algorithm = opt-inc\nbaseline = off\nseed = 9\nformat = md\n",
        )
        .unwrap();
        assert_eq!(cfg.sources.len(), 2);
        assert_eq!(cfg.variants, vec![Variant::Cds, Variant::Tds]);
        assert_eq!(cfg.algorithms, vec![RowAlgorithm::OptInc]);
        assert_eq!(cfg.baselines, vec![Baseline::Offline]);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.format, TableFormat::Markdown);
    }

    #[test]
    fn random_source_syntax() {
        let cfg = ExperimentConfig::parse("random = bipartite:n=5..9,count=3,density=0.5\n").unwrap();
        assert_eq!(
            cfg.sources[0],
            InstanceSource::Random {
                model: RandomModel::Bipartite,
                n_min: 5,
                n_max: 9,
                count: 3,
                density: 0.5
            }
        );
    }

    #[test]
    fn rejects_bad_config() {
        assert!(ExperimentConfig::parse("colour = red\nfamily = fan:delta=3\n").is_err());
        assert!(ExperimentConfig::parse("variant = ds\n").is_err());
        assert!(ExperimentConfig::parse("family = fan:delta=3\ncap_inc = 99\n").is_err());
        assert!(ExperimentConfig::parse("family = rotor:delta=3\n").is_err());
    }
}
