//! Seeded random instance models. Every model attaches each arrival to at
//! least one earlier vertex, so all prefixes are connected.

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{ArrivalSequence, Vertex};

pub const DEFAULT_DENSITY: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RandomModel {
    /// Uniform attachment: each arrival picks one earlier vertex.
    Tree,
    /// Each arrival connects to a nonempty random subset of earlier vertices.
    AlwaysConnected,
    /// Like `AlwaysConnected`, restricted to the opposite side of a 2-coloring.
    Bipartite,
}

impl fmt::Display for RandomModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RandomModel::Tree => "tree",
            RandomModel::AlwaysConnected => "connected",
            RandomModel::Bipartite => "bipartite",
        })
    }
}

impl FromStr for RandomModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tree" => Ok(RandomModel::Tree),
            "connected" | "always-connected" => Ok(RandomModel::AlwaysConnected),
            "bipartite" => Ok(RandomModel::Bipartite),
            _ => Err(Error::Unknown {
                kind: "random model",
                name: s.to_string(),
            }),
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One random instance on `n` vertices. `density` is the chance that each
/// additional eligible earlier vertex becomes a neighbor.
pub fn random_sequence<R: Rng>(model: RandomModel, n: usize, density: f64, rng: &mut R) -> Result<ArrivalSequence> {
    if n == 0 {
        return Err(Error::Parameter("random instances need n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::Parameter(format!("density {density} is outside [0, 1]")));
    }
    let mut arrivals: Vec<Vec<Vertex>> = vec![Vec::new()];
    let mut side = vec![0u8];
    for i in 2..=n {
        let eligible: Vec<Vertex> = match model {
            RandomModel::Bipartite => {
                let anchor = rng.random_range(1..i);
                let s = 1 - side[anchor - 1];
                side.push(s);
                (1..i).filter(|&j| side[j - 1] != s).collect()
            }
            _ => (1..i).collect(),
        };
        let anchor = *eligible.choose(rng).expect("earlier vertices exist");
        let mut nbrs = vec![anchor];
        if model != RandomModel::Tree {
            nbrs.extend(eligible.iter().copied().filter(|&j| j != anchor && rng.random_bool(density)));
        }
        arrivals.push(nbrs);
    }
    let name = format!("random-{model}-n{n}");
    ArrivalSequence::new(name, arrivals)
}

/// `count` instances with sizes drawn uniformly from `sizes`, named with
/// the seed and index so rows stay distinguishable.
pub fn random_pool(
    model: RandomModel,
    sizes: std::ops::RangeInclusive<usize>,
    count: usize,
    density: f64,
    seed: u64,
) -> Result<Vec<ArrivalSequence>> {
    let mut rng = rng_from_seed(seed);
    (0..count)
        .map(|k| {
            let n = rng.random_range(sizes.clone());
            let mut seq = random_sequence(model, n, density, &mut rng)?;
            seq.set_name(format!("random-{model}-s{seed}-{k:04}-n{n}"));
            Ok(seq)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::classify;

    #[test]
    fn models_respect_their_class() {
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let t = random_sequence(RandomModel::Tree, 12, 0.5, &mut rng).unwrap();
            let r = classify(&t);
            assert!(r.is_tree && r.always_connected);

            let c = random_sequence(RandomModel::AlwaysConnected, 12, 0.3, &mut rng).unwrap();
            assert!(classify(&c).always_connected);

            let b = random_sequence(RandomModel::Bipartite, 12, 0.4, &mut rng).unwrap();
            let r = classify(&b);
            assert!(r.always_connected && r.bipartite());
        }
    }

    #[test]
    fn pools_are_reproducible() {
        let a = random_pool(RandomModel::AlwaysConnected, 3..=9, 20, 0.3, 11).unwrap();
        let b = random_pool(RandomModel::AlwaysConnected, 3..=9, 20, 0.3, 11).unwrap();
        assert_eq!(a, b);
        let c = random_pool(RandomModel::AlwaysConnected, 3..=9, 20, 0.3, 12).unwrap();
        assert_ne!(a, c);
    }
}
