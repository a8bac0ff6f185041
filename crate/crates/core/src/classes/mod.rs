//! Triangle streams and the graph classes built from them: chains, cycles,
//! circuits, bridges, trees, notches and nets. Generators return the
//! witnessing structure alongside the graph; recognizers check the
//! defining predicates directly.

mod gen;
mod order;
mod recognize;
mod reduce;
mod spec_str;

pub use gen::*;
pub use order::*;
pub use recognize::*;
pub use reduce::*;
pub use spec_str::*;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, GraphError, NodeId, Triangle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("{what} needs at least {min}, got {got}")]
    TooSmall { what: &'static str, min: usize, got: usize },
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("a notch needs at least 3 leaf knots, the tree has {0}")]
    InsufficientLeaves(usize),
    #[error("not a triangle net: {0}")]
    NotANet(String),
    #[error("seed {0} is not a triangle of the graph")]
    SeedNotTriangle(Triangle),
    #[error("stream is neither a triangle cycle nor a triangle circuit")]
    NotCycleOrCircuit,
    #[error("bad generator spec `{spec}`: {msg}")]
    Spec { spec: String, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn too_small(what: &'static str, min: usize, got: usize) -> Result<(), ClassError> {
    if got < min {
        Err(ClassError::TooSmall { what, min, got })
    } else {
        Ok(())
    }
}

/// An ordered sequence of triangles in which every inner triangle shares
/// one edge with its predecessor and a different edge with its successor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TriangleStream(Vec<Triangle>);

impl TriangleStream {
    /// Validates the stream conditions.
    pub fn new(triangles: Vec<Triangle>) -> Option<Self> {
        is_stream(&triangles).then_some(TriangleStream(triangles))
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Triangle {
        self.0[0]
    }

    pub fn last(&self) -> Triangle {
        self.0[self.0.len() - 1]
    }

    /// Node set spanned by the stream.
    pub fn vertices(&self) -> BTreeSet<NodeId> {
        stream_vertices(&self.0)
    }

    /// Edge set spanned by the stream.
    pub fn edges(&self) -> BTreeSet<Edge> {
        stream_edges(&self.0)
    }

    /// Side classification of every triangle.
    pub fn roles(&self) -> Vec<StreamRole> {
        stream_roles(&self.0)
    }
}

impl AsRef<[Triangle]> for TriangleStream {
    fn as_ref(&self) -> &[Triangle] {
        &self.0
    }
}

/// Whether consecutive triangles share an edge and every inner triangle
/// uses two different edges for its two neighbors. Triangles must be
/// pairwise distinct.
pub fn is_stream(ts: &[Triangle]) -> bool {
    if ts.is_empty() {
        return false;
    }
    let mut sorted = ts.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let links: Option<Vec<Edge>> = ts.windows(2).map(|w| w[0].common_edge(&w[1])).collect();
    match links {
        None => false,
        Some(links) => links.windows(2).all(|w| w[0] != w[1]),
    }
}

pub fn stream_vertices(ts: &[Triangle]) -> BTreeSet<NodeId> {
    ts.iter().flat_map(|t| t.nodes()).collect()
}

pub fn stream_edges(ts: &[Triangle]) -> BTreeSet<Edge> {
    ts.iter().flat_map(|t| t.edges()).collect()
}

/// Per-triangle side classification within a stream. A side is inner
/// when another triangle of the stream contains it; a node is a pendant
/// when the side opposite it is inner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StreamRole {
    pub triangle: Triangle,
    pub pendants: BTreeSet<NodeId>,
    pub inner_sides: BTreeSet<Edge>,
    pub outer_sides: BTreeSet<Edge>,
}

pub fn stream_roles(ts: &[Triangle]) -> Vec<StreamRole> {
    ts.iter()
        .enumerate()
        .map(|(i, t)| {
            let mut role = StreamRole {
                triangle: *t,
                pendants: BTreeSet::new(),
                inner_sides: BTreeSet::new(),
                outer_sides: BTreeSet::new(),
            };
            for e in t.edges() {
                let inner = ts.iter().enumerate().any(|(j, o)| j != i && o.has_edge(e));
                if inner {
                    role.inner_sides.insert(e);
                    role.pendants.insert(t.opposite(e).expect("own edge"));
                } else {
                    role.outer_sides.insert(e);
                }
            }
            role
        })
        .collect()
}

/// Class labels reported by the recognizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    Chain,
    Cycle,
    Circuit,
    Bridge,
    Tree,
    Notch,
    Net,
    Wheel,
    Trilateration,
    WheelExtension,
    None,
}
