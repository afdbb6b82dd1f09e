pub mod adversary;
pub mod constructions;
pub mod domination;
pub mod error;
pub mod exact;
pub mod format;
pub mod graph;
pub mod harness;
pub mod online;
pub mod transform;
pub mod vertex_set;
