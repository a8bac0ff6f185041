//! Elementary bars as the protocol sees them, and the checks a node runs on
//! locally gathered tree paths before announcing one.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::classes::{
    chain_end_pendants, circuit_knot, is_triangle_cycle, is_triangle_tree, stream_edges, stream_vertices, verify_net, ClassLabel,
};
use crate::ftg::tree_path;
use crate::graph::{edge, Edge, Graph, NodeId, Triangle};

/// Canonical identifier of an elementary bar, built from its witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BarId {
    /// Closing pair of a base cycle, smaller first.
    Cycle { closing: (Triangle, Triangle) },
    /// End triangles of the stream and their shared knot.
    Circuit { ends: (Triangle, Triangle), knot: NodeId },
    /// Bridging edge and the anchor triangles of its two ends.
    Bridge { ends: (NodeId, NodeId), anchors: (Triangle, Triangle) },
    /// Extended nodes and the pendants they attach to.
    Net { extended: Vec<NodeId>, pendants: Vec<NodeId> },
    /// A hub and one biconnected block of its neighborhood: wheels on a
    /// common hub, glued along shared spokes.
    Fan { hub: NodeId, rim: Vec<NodeId> },
}

impl BarId {
    pub fn kind(&self) -> ClassLabel {
        match self {
            BarId::Cycle { .. } => ClassLabel::Cycle,
            BarId::Circuit { .. } => ClassLabel::Circuit,
            BarId::Bridge { .. } => ClassLabel::Bridge,
            BarId::Net { .. } => ClassLabel::Net,
            BarId::Fan { .. } => ClassLabel::Wheel,
        }
    }
}

impl fmt::Display for BarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarId::Cycle { closing: (a, b) } => write!(f, "cycle[{a}{b}]"),
            BarId::Circuit { ends: (a, b), knot } => write!(f, "circuit[{a}{knot}{b}]"),
            BarId::Bridge { ends: (p, q), anchors: (a, b) } => write!(f, "bridge[{p}-{q}{a}{b}]"),
            BarId::Net { extended, pendants } => write!(f, "net[{extended:?}{pendants:?}]"),
            BarId::Fan { hub, rim } => write!(f, "fan[{hub}{rim:?}]"),
        }
    }
}

/// Everything a member needs to take part in stitching: the node set and
/// the edges that make the bar rigid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarInfo {
    pub id: BarId,
    pub nodes: BTreeSet<NodeId>,
    pub edges: BTreeSet<Edge>,
    pub triangles: Vec<Triangle>,
}

impl BarInfo {
    fn from_stream(id: BarId, ts: &[Triangle], extra: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges = stream_edges(ts);
        edges.extend(extra);
        let mut nodes = stream_vertices(ts);
        nodes.extend(edges.iter().flat_map(|&(u, v)| [u, v]));
        BarInfo { id, nodes, edges, triangles: ts.to_vec() }
    }

    /// Least member: collects join notices for the bar.
    pub fn coordinator(&self) -> NodeId {
        *self.nodes.first().expect("bars are non-empty")
    }

    fn adjacency(&self) -> BTreeMap<NodeId, Vec<NodeId>> {
        let mut adj: BTreeMap<NodeId, Vec<NodeId>> = BTreeMap::new();
        for &(u, v) in &self.edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        for list in adj.values_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// BFS parents over bar edges from `root`; each node's parent is the
    /// first to reach it, scanning in id order.
    fn bfs_parents(&self, root: NodeId) -> BTreeMap<NodeId, NodeId> {
        let adj = self.adjacency();
        let mut parent = BTreeMap::from([(root, root)]);
        let mut frontier = vec![root];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for u in frontier {
                for &v in adj.get(&u).into_iter().flatten() {
                    if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(v) {
                        e.insert(u);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        parent
    }

    /// Next hop from `from` toward `to` along bar edges.
    pub fn next_hop(&self, from: NodeId, to: NodeId) -> Option<NodeId> {
        if from == to {
            return Some(to);
        }
        self.bfs_parents(to).get(&from).copied()
    }

    /// Children of `v` in the bar's BFS tree rooted at `root`.
    pub fn tree_children(&self, root: NodeId, v: NodeId) -> Vec<NodeId> {
        self.bfs_parents(root).into_iter().filter(|&(w, p)| p == v && w != root).map(|(w, _)| w).collect()
    }

    /// Neighbors of `v` in the bar's BFS tree rooted at the coordinator.
    /// Floods along this one tree reach every member whichever member
    /// starts them.
    pub fn tree_neighbors(&self, v: NodeId) -> Vec<NodeId> {
        let root = self.coordinator();
        let parents = self.bfs_parents(root);
        parents
            .iter()
            .filter(|&(&w, &p)| w != root && (p == v || w == v))
            .map(|(&w, &p)| if w == v { p } else { w })
            .collect()
    }

    /// Bar neighbors of `v`.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }
}

/// What a node has learned about its surroundings during the reach step:
/// tree nodes with their anchors, and extended nodes with the senders
/// they heard.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReachBody(BTreeMap<NodeId, Reach>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reach {
    /// Anchor triangles with their root paths.
    Pendant(BTreeMap<Triangle, Vec<Triangle>>),
    Extended(BTreeSet<NodeId>),
}

impl ReachBody {
    pub fn pendant(v: NodeId, anchors: BTreeMap<Triangle, Vec<Triangle>>) -> Self {
        ReachBody(BTreeMap::from([(v, Reach::Pendant(anchors))]))
    }

    pub fn extended(v: NodeId, heard: BTreeSet<NodeId>) -> Self {
        ReachBody(BTreeMap::from([(v, Reach::Extended(heard))]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: NodeId) -> Option<&Reach> {
        self.0.get(&v)
    }

    /// Union; returns whether anything was new.
    pub fn merge(&mut self, other: &ReachBody) -> bool {
        let mut grew = false;
        for (&v, r) in &other.0 {
            match (self.0.get_mut(&v), r) {
                (None, _) => {
                    self.0.insert(v, r.clone());
                    grew = true;
                }
                (Some(Reach::Pendant(mine)), Reach::Pendant(theirs)) => {
                    for (t, p) in theirs {
                        if !mine.contains_key(t) {
                            mine.insert(*t, p.clone());
                            grew = true;
                        }
                    }
                }
                (Some(Reach::Extended(mine)), Reach::Extended(theirs)) => {
                    let before = mine.len();
                    mine.extend(theirs.iter().copied());
                    grew |= mine.len() > before;
                }
                // a node is either anchored or not; mixed reports cannot occur
                (Some(_), _) => {}
            }
        }
        grew
    }

    pub fn pendants(&self) -> impl Iterator<Item = (NodeId, &BTreeMap<Triangle, Vec<Triangle>>)> {
        self.0.iter().filter_map(|(&v, r)| match r {
            Reach::Pendant(a) => Some((v, a)),
            Reach::Extended(_) => None,
        })
    }

    pub fn extended_nodes(&self) -> impl Iterator<Item = (NodeId, &BTreeSet<NodeId>)> {
        self.0.iter().filter_map(|(&v, r)| match r {
            Reach::Extended(h) => Some((v, h)),
            Reach::Pendant(_) => None,
        })
    }
}

/// No two non-consecutive triangles share a side, apart from the first and
/// last when `closed`.
fn chordless(ts: &[Triangle], closed: bool) -> bool {
    let m = ts.len();
    (0..m).all(|i| {
        (i + 2..m).all(|j| (closed && i == 0 && j == m - 1) || ts[i].common_edge(&ts[j]).is_none())
    })
}

/// Base cycle closed by the non-tree pair `(a, b)`.
pub fn cycle_bar(a: Triangle, path_a: &[Triangle], b: Triangle, path_b: &[Triangle]) -> Option<BarInfo> {
    let stream = tree_path(path_a, path_b);
    if !is_triangle_cycle(&stream) || !chordless(&stream, true) {
        return None;
    }
    let closing = if a < b { (a, b) } else { (b, a) };
    Some(BarInfo::from_stream(BarId::Cycle { closing }, &stream, []))
}

/// Tree path between two anchors of `knot`, when it is a triangle circuit
/// knotted there.
pub fn circuit_bar(knot: NodeId, a: Triangle, path_a: &[Triangle], b: Triangle, path_b: &[Triangle]) -> Option<BarInfo> {
    let stream = tree_path(path_a, path_b);
    let clean = stream_vertices(&stream).len() == stream.len() + 1 && chordless(&stream, false);
    if circuit_knot(&stream) != Some(knot) || !clean {
        return None;
    }
    let ends = if a < b { (a, b) } else { (b, a) };
    Some(BarInfo::from_stream(BarId::Circuit { ends, knot }, &stream, []))
}

/// Tree path between anchors of adjacent tree nodes `p` and `q`, when it
/// is a chain ending at them.
pub fn bridge_bar(p: NodeId, a: Triangle, path_a: &[Triangle], q: NodeId, b: Triangle, path_b: &[Triangle]) -> Option<BarInfo> {
    let stream = tree_path(path_a, path_b);
    let (x, y) = chain_end_pendants(&stream)?;
    let clean = stream_vertices(&stream).len() == stream.len() + 2 && chordless(&stream, false);
    if ((x, y) != (p, q) && (x, y) != (q, p)) || !clean {
        return None;
    }
    let (ends, anchors) = if p < q { ((p, q), (a, b)) } else { ((q, p), (b, a)) };
    Some(BarInfo::from_stream(BarId::Bridge { ends, anchors }, &stream, [edge(p, q)]))
}

/// One bar per biconnected block of `hub`'s neighborhood. Coning a
/// 2-connected graph gives a globally rigid one in the plane, and the cone
/// over a block is a union of wheels on `hub` sharing at least three nodes.
pub fn fan_bars(hub: NodeId, nbrs: &[NodeId], lists: &BTreeMap<NodeId, Vec<NodeId>>) -> Vec<BarInfo> {
    let idx: BTreeMap<NodeId, usize> = nbrs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let link_edges: Vec<(usize, usize)> = lists
        .iter()
        .filter_map(|(&a, list)| Some((idx.get(&a)?, list)))
        .flat_map(|(&i, list)| list.iter().filter_map(|b| idx.get(b)).filter(move |&&j| i < j).map(move |&j| (i, j)))
        .collect();
    let Ok(link) = Graph::from_edges(nbrs.len(), link_edges) else {
        return Vec::new();
    };
    link.blocks()
        .into_iter()
        .map(|block| {
            let rim: Vec<NodeId> = block.iter().map(|&i| nbrs[i]).collect();
            let (sub, _) = link.induced(&block);
            let mut edges: BTreeSet<Edge> = rim.iter().map(|&v| edge(hub, v)).collect();
            let mut triangles = Vec::new();
            for (i, j) in sub.edges() {
                edges.insert(edge(rim[i], rim[j]));
                triangles.push(Triangle::new(hub, rim[i], rim[j]));
            }
            triangles.sort();
            let mut nodes: BTreeSet<NodeId> = rim.iter().copied().collect();
            nodes.insert(hub);
            BarInfo { id: BarId::Fan { hub, rim }, nodes, edges, triangles }
        })
        .collect()
}

/// Tree triangles spanning the given anchors, parents before children.
fn steiner_subtree(paths: &[&Vec<Triangle>]) -> Vec<Triangle> {
    let common = paths
        .iter()
        .map(|p| p.len())
        .min()
        .map(|shortest| (0..shortest).take_while(|&i| paths.iter().all(|p| p[i] == paths[0][i])).count())
        .unwrap_or(0);
    let mut by_depth: BTreeSet<(usize, Triangle)> = BTreeSet::new();
    for p in paths {
        for (d, &t) in p.iter().enumerate().skip(common.saturating_sub(1)) {
            by_depth.insert((d, t));
        }
    }
    by_depth.into_iter().map(|(_, t)| t).collect()
}

/// The shortest root path ending at a triangle that `v` enters as a
/// pendant, i.e. whose parent does not contain `v`. Later triangles at `v`
/// belong to whatever else is glued there.
fn entry_path(v: NodeId, anchors: &BTreeMap<Triangle, Vec<Triangle>>) -> Option<&Vec<Triangle>> {
    anchors
        .iter()
        .filter(|(_, p)| p.len() < 2 || !p[p.len() - 2].contains(v))
        .min_by_key(|(t, p)| (p.len(), **t))
        .map(|(_, p)| p)
}

/// Net with the given pendants and extended nodes, using only the edges
/// the reach step reported. Extended nodes that cannot be ordered are
/// dropped; `must` has to survive.
///
/// The tree paths can pass through triangles of other bars glued onto the
/// net, so when the spanned triangles do not verify, triangles are dropped
/// one at a time, shallowest first, as long as the rest stays
/// flip-connected and still contains every pendant.
fn net_from(body: &ReachBody, pendants: &BTreeSet<NodeId>, extended: &BTreeMap<NodeId, BTreeSet<NodeId>>, must: NodeId) -> Option<BarInfo> {
    let paths: Vec<&Vec<Triangle>> =
        body.pendants().filter(|(v, _)| pendants.contains(v)).filter_map(|(v, a)| entry_path(v, a)).collect();
    if paths.is_empty() {
        return None;
    }
    let covered: BTreeSet<NodeId> =
        body.pendants().filter(|(v, a)| pendants.contains(v) && entry_path(*v, a).is_some()).map(|(v, _)| v).collect();
    let attempt = |set: &[Triangle]| tree_order(set).and_then(|tree| net_on_tree(&tree, pendants, extended, must));
    let mut set = steiner_subtree(&paths);
    if let Some(bar) = attempt(&set) {
        return Some(bar);
    }
    loop {
        let drop = (0..set.len()).find(|&i| {
            let mut rest = set.clone();
            rest.remove(i);
            stream_vertices(&rest).is_superset(&covered) && tree_order_any(&rest).is_some()
        })?;
        set.remove(drop);
        if let Some(bar) = attempt(&set) {
            return Some(bar);
        }
    }
}

/// Breadth-first order over shared edges from `set[0]`; `None` if some
/// triangle is unreachable.
fn tree_order_any(set: &[Triangle]) -> Option<Vec<Triangle>> {
    let (&first, rest) = set.split_first()?;
    let mut order = vec![first];
    let mut rest = rest.to_vec();
    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        let (adjacent, other): (Vec<Triangle>, Vec<Triangle>) = rest.into_iter().partition(|u| t.common_edge(u).is_some());
        order.extend(adjacent);
        rest = other;
        i += 1;
    }
    rest.is_empty().then_some(order)
}

fn tree_order(set: &[Triangle]) -> Option<Vec<Triangle>> {
    tree_order_any(set).filter(|order| is_triangle_tree(order))
}

fn net_on_tree(
    tree: &[Triangle],
    pendants: &BTreeSet<NodeId>,
    extended: &BTreeMap<NodeId, BTreeSet<NodeId>>,
    must: NodeId,
) -> Option<BarInfo> {
    let tree_nodes = stream_vertices(tree);
    // greedy order: each extended node needs three earlier attachments
    let mut order: Vec<NodeId> = Vec::new();
    let mut placed: BTreeSet<NodeId> = pendants.iter().copied().filter(|v| tree_nodes.contains(v)).collect();
    loop {
        let next = extended
            .iter()
            .find(|&(x, heard)| !placed.contains(x) && heard.iter().filter(|h| placed.contains(h)).count() >= 3);
        let Some((&x, _)) = next else { break };
        order.push(x);
        placed.insert(x);
    }
    if !order.contains(&must) {
        return None;
    }
    let mut extending = BTreeSet::new();
    for &x in &order {
        for &h in &extended[&x] {
            if placed.contains(&h) {
                extending.insert(edge(x, h));
            }
        }
    }
    let mut edges = stream_edges(tree);
    edges.extend(extending.iter().copied());
    let n = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let g = Graph::from_edges(n, edges.iter().copied()).ok()?;
    verify_net(&g, tree, &order).ok()?;
    let used_pendants: Vec<NodeId> = placed.iter().copied().filter(|v| !order.contains(v)).collect();
    let mut ext_sorted = order.clone();
    ext_sorted.sort_unstable();
    let id = BarId::Net { extended: ext_sorted, pendants: used_pendants };
    Some(BarInfo::from_stream(id, tree, extending))
}

/// Nets an extended node `x` can vouch for: first everything it has
/// reached, then, failing that, notches on triples of its own pendant
/// senders.
pub fn net_bars(x: NodeId, body: &ReachBody, heard: &BTreeSet<NodeId>) -> Vec<BarInfo> {
    let pendants: BTreeSet<NodeId> = body.pendants().map(|(v, _)| v).collect();
    let extended: BTreeMap<NodeId, BTreeSet<NodeId>> = body.extended_nodes().map(|(v, h)| (v, h.clone())).collect();
    if let Some(bar) = net_from(body, &pendants, &extended, x) {
        return vec![bar];
    }
    let own: Vec<NodeId> = heard.iter().copied().filter(|v| pendants.contains(v)).collect();
    let solo = BTreeMap::from([(x, heard.clone())]);
    let mut out = Vec::new();
    for i in 0..own.len() {
        for j in i + 1..own.len() {
            for k in j + 1..own.len() {
                let triple = BTreeSet::from([own[i], own[j], own[k]]);
                if let Some(bar) = net_from(body, &triple, &solo, x) {
                    out.push(bar);
                }
            }
        }
    }
    out
}
