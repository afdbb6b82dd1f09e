use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed arrival sequence (forward reference, duplicate neighbor, bad count).
    #[error("invalid sequence at entry {entry}: {reason}")]
    InvalidSequence { entry: usize, reason: String },

    #[error("parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("not always-connected: vertex {vertex} has no earlier neighbor")]
    NotAlwaysConnected { vertex: Vertex },

    #[error("policy {policy} returned vertex {vertex} at step {step}, which has not arrived yet")]
    ContractViolation {
        policy: String,
        step: usize,
        vertex: Vertex,
    },

    #[error("{policy} left the {variant} selection infeasible at step {step}")]
    Infeasible {
        policy: String,
        variant: String,
        step: usize,
    },

    #[error("instance has {n} vertices, above the {baseline} solver cap of {cap} (raise --cap-{baseline} or DOMINO_CAP_OVERRIDE)")]
    CapExceeded {
        baseline: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
