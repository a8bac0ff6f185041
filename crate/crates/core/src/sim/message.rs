use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::bars::{BarId, BarInfo, ReachBody};
use crate::graph::{NodeId, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SignalKind {
    NbrList,
    Triangle,
    Visit,
    VisitNode,
    Child,
    Cycle,
    Stitch,
    Mark,
    /// Simulator-generated phase trigger, delivered on a node's own channel.
    Start,
}

impl fmt::Display for SignalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignalKind::NbrList => "NBR_LIST",
            SignalKind::Triangle => "TRIANGLE",
            SignalKind::Visit => "VISIT",
            SignalKind::VisitNode => "VISIT_NODE",
            SignalKind::Child => "CHILD",
            SignalKind::Cycle => "CYCLE",
            SignalKind::Stitch => "STITCH",
            SignalKind::Mark => "MARK",
            SignalKind::Start => "START",
        };
        f.write_str(s)
    }
}

/// Sub-steps separated by quiescence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Step {
    NbrLists,
    Bfs,
    Tree,
    Anchors,
    Reach,
    Detect,
    Stitch,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Start(Step),
    NbrList(Vec<NodeId>),
    Triangle(Triangle),
    /// BFS offer from triangle `from` at `depth` to triangle `to`.
    Visit { from: Triangle, to: Triangle, depth: usize },
    /// Settled root path of `from`, ending at `from`.
    RootPath { from: Triangle, to: Triangle, path: Vec<Triangle> },
    Child { child: Triangle, parent: Triangle },
    /// Tree triangle `tri` telling a node it is that triangle's pendant.
    Anchor { tri: Triangle, path: Vec<Triangle> },
    /// A pendant or extended node passing on what it can reach.
    Reach { from: NodeId, body: Arc<ReachBody> },
    /// Bar announcement, spread down the bar's BFS tree from `origin`.
    Cycle { bar: Arc<BarInfo>, origin: NodeId },
    Stitch,
    Join { bar: BarId, member: NodeId },
    Mark { bar: BarId, origin: NodeId },
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Start(s) => write!(f, "{s:?}"),
            Payload::NbrList(l) => write!(f, "{l:?}"),
            Payload::Triangle(t) => write!(f, "{t}"),
            Payload::Visit { from, to, depth } => write!(f, "{from}->{to} depth={depth}"),
            Payload::RootPath { from, to, path } => write!(f, "{from}->{to} path={}", path.len()),
            Payload::Child { child, parent } => write!(f, "{child}->{parent}"),
            Payload::Anchor { tri, path } => write!(f, "{tri} depth={}", path.len() - 1),
            Payload::Reach { from, body } => write!(f, "from={from} reach={}", body.len()),
            Payload::Cycle { bar, origin } => write!(f, "{} origin={origin}", bar.id),
            Payload::Stitch => write!(f, "-"),
            Payload::Join { bar, member } => write!(f, "{bar} member={member}"),
            Payload::Mark { bar, origin } => write!(f, "{bar} origin={origin}"),
        }
    }
}

/// A one-hop transmission. `target` is the final addressee; when it
/// differs from `dst` the receiver relays.
#[derive(Debug, Clone)]
pub struct Message {
    pub kind: SignalKind,
    pub src: NodeId,
    pub dst: NodeId,
    pub target: NodeId,
    pub payload: Payload,
    pub send_clock: u64,
}

/// What a handler asks to send: the simulator picks the first hop.
#[derive(Debug, Clone)]
pub struct Outgoing {
    pub kind: SignalKind,
    pub target: NodeId,
    pub payload: Payload,
}

impl Outgoing {
    pub fn new(kind: SignalKind, target: NodeId, payload: Payload) -> Self {
        Outgoing { kind, target, payload }
    }
}

/// Convenience for fan-outs.
pub fn to_all(kind: SignalKind, targets: impl IntoIterator<Item = NodeId>, payload: &Payload) -> Vec<Outgoing> {
    let set: BTreeSet<NodeId> = targets.into_iter().collect();
    set.into_iter().map(|t| Outgoing::new(kind, t, payload.clone())).collect()
}
