//! Static adversarial families, each emitted in its adversarial order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{ArrivalSequence, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CenterPos {
    First,
    Second,
    Last,
}

impl FromStr for CenterPos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(CenterPos::First),
            "second" => Ok(CenterPos::Second),
            "last" => Ok(CenterPos::Last),
            _ => Err(Error::Parameter(format!("center must be first, second or last, not `{s}`"))),
        }
    }
}

impl fmt::Display for CenterPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CenterPos::First => "first",
            CenterPos::Second => "second",
            CenterPos::Last => "last",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// Path in standard order: a leaf first, each vertex attached to the previous one.
    PathStandard { n: usize },
    /// `K_{1,n-1}`.
    Star { n: usize, center: CenterPos },
    /// `copies` stars `K_{1,delta}`, each center arriving after its leaves.
    DisjointStars { copies: usize, delta: usize },
    /// Path `P_delta` in standard order, then an apex adjacent to all of it.
    Fan { delta: usize },
    /// `k` fans chained through shared path endpoints.
    AlternatingFan { k: usize, delta: usize },
    /// Path on `k(delta-1)` vertices, then chords `u_1..u_k`; `u_i` sees section `i`
    /// and its matching partner.
    ModularBridge { k: usize, delta: usize },
    /// `ModularBridge(k, delta-1)` plus the edges `u_{2i} u_{2i+1}`.
    Bridge { k: usize, delta: usize },
    /// Star `K_{1,delta}` plus a perfect matching on the leaves; matched pairs
    /// arrive together and the center comes last.
    Rotor { delta: usize },
    /// Path on `n-2` vertices, one apex on the odd positions, one on the even
    /// ones; the two apexes are adjacent.
    TwoSidedFan { n: usize },
    /// Path `P_m` with `m` pendants on each of `v_2, v_5, …, v_m`.
    PendantPath { m: usize },
    /// Path `P_{n_path}` with `delta-2` pendants on every even vertex, arriving
    /// after the whole path.
    IdsPendantPath { n_path: usize, delta: usize },
}

pub const FAMILY_NAMES: [&str; 11] = [
    "path",
    "star",
    "disjoint-stars",
    "fan",
    "alternating-fan",
    "modular-bridge",
    "bridge",
    "rotor",
    "two-sided-fan",
    "pendant-path",
    "ids-pendant-path",
];

impl FamilySpec {
    /// Parses a family name plus `key=value` pairs separated by commas.
    pub fn from_params(family: &str, params: &str) -> Result<Self> {
        let mut kv = Params::parse(params)?;
        let spec = match family {
            "path" | "path-standard" => FamilySpec::PathStandard { n: kv.num("n")? },
            "star" => FamilySpec::Star {
                n: kv.num("n")?,
                center: kv.take("center").as_deref().unwrap_or("first").parse()?,
            },
            "disjoint-stars" => FamilySpec::DisjointStars {
                copies: kv.num_any(&["i", "copies"])?,
                delta: kv.num("delta")?,
            },
            "fan" => FamilySpec::Fan { delta: kv.num("delta")? },
            "alternating-fan" => FamilySpec::AlternatingFan {
                k: kv.num("k")?,
                delta: kv.num("delta")?,
            },
            "modular-bridge" => FamilySpec::ModularBridge {
                k: kv.num("k")?,
                delta: kv.num("delta")?,
            },
            "bridge" => FamilySpec::Bridge {
                k: kv.num("k")?,
                delta: kv.num("delta")?,
            },
            "rotor" => FamilySpec::Rotor { delta: kv.num("delta")? },
            "two-sided-fan" => FamilySpec::TwoSidedFan { n: kv.num("n")? },
            "pendant-path" => FamilySpec::PendantPath { m: kv.num("m")? },
            "ids-pendant-path" => FamilySpec::IdsPendantPath {
                n_path: kv.num_any(&["n_path", "n"])?,
                delta: kv.num("delta")?,
            },
            other => {
                return Err(Error::Unknown {
                    kind: "family",
                    name: other.to_string(),
                })
            }
        };
        kv.finish()?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn family(&self) -> &'static str {
        match self {
            FamilySpec::PathStandard { .. } => "path",
            FamilySpec::Star { .. } => "star",
            FamilySpec::DisjointStars { .. } => "disjoint-stars",
            FamilySpec::Fan { .. } => "fan",
            FamilySpec::AlternatingFan { .. } => "alternating-fan",
            FamilySpec::ModularBridge { .. } => "modular-bridge",
            FamilySpec::Bridge { .. } => "bridge",
            FamilySpec::Rotor { .. } => "rotor",
            FamilySpec::TwoSidedFan { .. } => "two-sided-fan",
            FamilySpec::PendantPath { .. } => "pendant-path",
            FamilySpec::IdsPendantPath { .. } => "ids-pendant-path",
        }
    }

    /// Instance name, e.g. `alternating-fan-k3-d4`.
    pub fn instance_name(&self) -> String {
        let f = self.family();
        match *self {
            FamilySpec::PathStandard { n } | FamilySpec::TwoSidedFan { n } => format!("{f}-n{n}"),
            FamilySpec::Star { n, center } => format!("{f}-n{n}-{center}"),
            FamilySpec::DisjointStars { copies, delta } => format!("{f}-i{copies}-d{delta}"),
            FamilySpec::Fan { delta } | FamilySpec::Rotor { delta } => format!("{f}-d{delta}"),
            FamilySpec::AlternatingFan { k, delta }
            | FamilySpec::ModularBridge { k, delta }
            | FamilySpec::Bridge { k, delta } => format!("{f}-k{k}-d{delta}"),
            FamilySpec::PendantPath { m } => format!("{f}-m{m}"),
            FamilySpec::IdsPendantPath { n_path, delta } => format!("{f}-n{n_path}-d{delta}"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Parameter(format!("{}: {msg}", self.family())));
        match *self {
            FamilySpec::PathStandard { n } if n < 1 => fail("needs n >= 1".into()),
            FamilySpec::Star { n, .. } if n < 2 => fail("needs n >= 2".into()),
            FamilySpec::DisjointStars { copies, delta } if copies < 1 || delta < 1 => {
                fail("needs i >= 1 and delta >= 1".into())
            }
            FamilySpec::Fan { delta } if delta < 2 => fail("needs delta >= 2".into()),
            FamilySpec::AlternatingFan { k, delta } if k < 1 || delta < 4 => {
                fail("needs k >= 1 and delta >= 4".into())
            }
            FamilySpec::ModularBridge { k, delta } if k < 2 || k % 2 != 0 || delta < 2 => {
                fail(format!("needs even k >= 2 and delta >= 2 (got k={k}, delta={delta})"))
            }
            FamilySpec::Bridge { k, delta } if k < 2 || k % 2 != 0 || delta < 3 => {
                fail(format!("needs even k >= 2 and delta >= 3 (got k={k}, delta={delta})"))
            }
            FamilySpec::Rotor { delta } if delta < 2 || delta % 2 != 0 => {
                fail(format!("needs even delta >= 2 (got {delta})"))
            }
            FamilySpec::TwoSidedFan { n } if n < 4 => fail("needs n >= 4".into()),
            FamilySpec::PendantPath { m } if m % 6 != 2 => fail(format!("needs m = 2 mod 6 (got {m})")),
            FamilySpec::IdsPendantPath { n_path, delta } if n_path < 2 || delta < 2 => {
                fail("needs n_path >= 2 and delta >= 2".into())
            }
            _ => Ok(()),
        }
    }

    /// The declared maximum degree, for families that fix one.
    pub fn declared_delta(&self) -> Option<usize> {
        match *self {
            FamilySpec::Star { n, .. } => Some(n - 1),
            FamilySpec::DisjointStars { delta, .. }
            | FamilySpec::Fan { delta }
            | FamilySpec::AlternatingFan { delta, .. }
            | FamilySpec::Rotor { delta } => Some(delta),
            // With two sections there is no bridge edge, so no chord reaches delta.
            FamilySpec::Bridge { k, delta } if k >= 4 => Some(delta),
            FamilySpec::IdsPendantPath { n_path, delta } if n_path >= 3 => Some(delta),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.instance_name())
    }
}

struct Params(BTreeMap<String, String>);

impl Params {
    fn parse(raw: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in raw.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("expected key=value, found `{part}`")))?;
            map.insert(k.trim().to_ascii_lowercase(), v.trim().to_string());
        }
        Ok(Params(map))
    }

    fn take(&mut self, key: &str) -> Option<String> {
        self.0.remove(key)
    }

    fn num(&mut self, key: &str) -> Result<usize> {
        self.num_any(&[key])
    }

    fn num_any(&mut self, keys: &[&str]) -> Result<usize> {
        let raw = keys
            .iter()
            .find_map(|k| self.take(k))
            .ok_or_else(|| Error::Parameter(format!("missing parameter `{}`", keys[0])))?;
        raw.parse()
            .map_err(|_| Error::Parameter(format!("`{}` must be a non-negative integer, got `{raw}`", keys[0])))
    }

    fn finish(self) -> Result<()> {
        match self.0.keys().next() {
            Some(k) => Err(Error::Parameter(format!("unexpected parameter `{k}`"))),
            None => Ok(()),
        }
    }
}

/// Edge-list builder that hands out vertex indices in arrival order.
struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn new() -> Self {
        Self { n: 0, edges: Vec::new() }
    }

    fn vertex(&mut self, earlier: impl IntoIterator<Item = Vertex>) -> Vertex {
        self.n += 1;
        let v = self.n;
        self.edges.extend(earlier.into_iter().map(|u| (u, v)));
        v
    }

    /// Appends a standard-order path of `len` vertices, optionally hanging
    /// off `attach`.
    fn path(&mut self, len: usize, attach: Option<Vertex>) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(len);
        let mut prev = attach;
        for _ in 0..len {
            let v = self.vertex(prev);
            out.push(v);
            prev = Some(v);
        }
        out
    }

    fn finish(self, name: String) -> ArrivalSequence {
        ArrivalSequence::from_edges(name, self.n, &self.edges).expect("builders only emit backward edges")
    }
}

pub fn generate(spec: &FamilySpec) -> Result<ArrivalSequence> {
    spec.validate()?;
    let mut b = Builder::new();
    match *spec {
        FamilySpec::PathStandard { n } => {
            b.path(n, None);
        }
        FamilySpec::Star { n, center } => match center {
            CenterPos::First => {
                let c = b.vertex(None);
                for _ in 1..n {
                    b.vertex([c]);
                }
            }
            CenterPos::Second => {
                let leaf = b.vertex(None);
                let c = b.vertex([leaf]);
                for _ in 2..n {
                    b.vertex([c]);
                }
            }
            CenterPos::Last => {
                let leaves: Vec<_> = (1..n).map(|_| b.vertex(None)).collect();
                b.vertex(leaves);
            }
        },
        FamilySpec::DisjointStars { copies, delta } => {
            for _ in 0..copies {
                let leaves: Vec<_> = (0..delta).map(|_| b.vertex(None)).collect();
                b.vertex(leaves);
            }
        }
        FamilySpec::Fan { delta } => {
            let path = b.path(delta, None);
            b.vertex(path);
        }
        FamilySpec::AlternatingFan { k, delta } => {
            let mut last = None;
            for _ in 0..k {
                let mut path: Vec<Vertex> = last.into_iter().collect();
                path.extend(b.path(delta - path.len(), last));
                last = path.last().copied();
                b.vertex(path);
            }
        }
        FamilySpec::ModularBridge { k, delta } => modular_bridge(&mut b, k, delta, false),
        FamilySpec::Bridge { k, delta } => modular_bridge(&mut b, k, delta - 1, true),
        FamilySpec::Rotor { delta } => {
            let mut leaves = Vec::with_capacity(delta);
            for _ in 0..delta / 2 {
                let a = b.vertex(None);
                let c = b.vertex([a]);
                leaves.extend([a, c]);
            }
            b.vertex(leaves);
        }
        FamilySpec::TwoSidedFan { n } => {
            let path = b.path(n - 2, None);
            let odd = b.vertex(path.iter().copied().step_by(2));
            b.vertex(path.iter().copied().skip(1).step_by(2).chain([odd]));
        }
        FamilySpec::PendantPath { m } => {
            let path = b.path(m, None);
            for host in path.iter().copied().skip(1).step_by(3) {
                for _ in 0..m {
                    b.vertex([host]);
                }
            }
        }
        FamilySpec::IdsPendantPath { n_path, delta } => {
            let path = b.path(n_path, None);
            for host in path.iter().copied().skip(1).step_by(2) {
                for _ in 0..delta - 2 {
                    b.vertex([host]);
                }
            }
        }
    }
    Ok(b.finish(spec.instance_name()))
}

fn modular_bridge(b: &mut Builder, k: usize, delta: usize, bridged: bool) {
    let section = delta - 1;
    let path = b.path(k * section, None);
    let mut chords = Vec::with_capacity(k);
    for i in 0..k {
        let mut nbrs: Vec<Vertex> = path[i * section..(i + 1) * section].to_vec();
        // `i` is 0-based: odd `i` closes a matching pair, even `i > 0` is a bridge edge.
        if i % 2 == 1 || (bridged && i > 0) {
            nbrs.push(chords[i - 1]);
        }
        chords.push(b.vertex(nbrs));
    }
}

/// Chord vertices `u_1..u_k` of a (modular) bridge, as arrival indices.
pub fn chord_vertices(spec: &FamilySpec) -> Option<Vec<Vertex>> {
    let (k, section) = match *spec {
        FamilySpec::ModularBridge { k, delta } => (k, delta - 1),
        FamilySpec::Bridge { k, delta } => (k, delta - 2),
        _ => return None,
    };
    let base = k * section;
    Some((1..=k).map(|i| base + i).collect())
}
