use thiserror::Error;

use crate::topology::NodeId;

/// Errors surfaced by the toolkit's algorithms and codecs.
#[derive(Debug, Error)]
pub enum MeshError {
    /// Random generation could not produce a network where every receiver
    /// is connected to the source within the retry budget.
    #[error("unsatisfiable: no connected placement found after {attempts} attempts (density too low)")]
    Unsatisfiable { attempts: u32 },

    /// A receiver has no path from the source.
    #[error("receiver {0} is unreachable from the source")]
    UnreachableReceiver(NodeId),

    /// A cover target is not covered by any candidate.
    #[error("target {0} is not covered by any candidate")]
    Uncoverable(NodeId),

    /// A node that must transmit has no send channel assigned.
    #[error("node {0} has no send channel assigned")]
    MissingSendChannel(NodeId),

    /// A tree edge where the child's receive channel differs from the
    /// parent's send channel.
    #[error("link contract violated on edge {parent} -> {child}: child receives on {child_ri:?}, parent sends on {parent_si:?}")]
    ContractViolation {
        parent: NodeId,
        child: NodeId,
        parent_si: Option<u32>,
        child_ri: Option<u32>,
    },

    /// No path exists between the requested endpoints.
    #[error("no path from {start} to {goal}")]
    NoPath { start: NodeId, goal: NodeId },

    /// A document or text record could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Structurally valid input that violates a precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, MeshError>;
