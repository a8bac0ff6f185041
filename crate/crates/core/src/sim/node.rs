use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Serialize;

use super::bars::{bridge_bar, circuit_bar, cycle_bar, fan_bars, net_bars, BarId, BarInfo, Reach, ReachBody};
use super::message::{to_all, Message, Outgoing, Payload, SignalKind, Step};
use crate::graph::{NodeId, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriStatus {
    Unvisited,
    Visited,
}

/// Per-triangle state, held by the triangle's leader (its least node).
#[derive(Debug, Clone, Serialize)]
pub struct TriangleRecord {
    pub tri: Triangle,
    pub nbrs: BTreeSet<Triangle>,
    pub status: TriStatus,
    pub parent: Option<Triangle>,
    pub children: BTreeSet<Triangle>,
    pub depth: Option<usize>,
    /// Root path ending at this triangle, once visited.
    pub root_path: Vec<Triangle>,
    /// Latest root path reported by each neighbor.
    #[serde(skip)]
    pub heard: BTreeMap<Triangle, Vec<Triangle>>,
    pub element_lst: BTreeSet<BarId>,
}

impl TriangleRecord {
    fn new(tri: Triangle) -> Self {
        TriangleRecord {
            tri,
            nbrs: BTreeSet::new(),
            status: TriStatus::Unvisited,
            parent: None,
            children: BTreeSet::new(),
            depth: None,
            root_path: Vec::new(),
            heard: BTreeMap::new(),
            element_lst: BTreeSet::new(),
        }
    }

    /// `(depth, parent)`, the key the breadth-first search minimizes.
    fn key(&self) -> Option<(usize, Triangle)> {
        Some((self.depth?, self.parent?))
    }

}

#[derive(Debug, Clone, Serialize)]
pub struct NodeState {
    pub id: NodeId,
    pub nbrs: Vec<NodeId>,
    /// Seed triangle, known only to its own members.
    pub seed: Option<Triangle>,
    pub trngls: BTreeMap<Triangle, TriangleRecord>,
    /// Neighbor lists as received; they describe this node's link.
    #[serde(skip)]
    pub nbr_lists: BTreeMap<NodeId, Vec<NodeId>>,
    /// Triangles announced to this node; a record created later still
    /// links to them.
    #[serde(skip)]
    pub announced: BTreeSet<Triangle>,
    /// Tree triangles containing this node, with their root paths.
    #[serde(skip)]
    pub anchors: BTreeMap<Triangle, Vec<Triangle>>,
    #[serde(skip)]
    pub heard: BTreeMap<NodeId, Arc<ReachBody>>,
    #[serde(skip)]
    body: Arc<ReachBody>,
    pub extended: bool,
    #[serde(skip)]
    pub bars: BTreeMap<BarId, Arc<BarInfo>>,
    pub localizable: bool,
    stitched: BTreeSet<NodeId>,
    joins: BTreeMap<BarId, BTreeSet<NodeId>>,
    marked: BTreeSet<BarId>,
    /// Lamport timestamp.
    pub lamport: u64,
    /// Neighbor lists and triangle announcements received.
    pub phase1_receipts: usize,
    pub sent: usize,
    pub received: usize,
}

impl NodeState {
    pub fn new(id: NodeId, nbrs: Vec<NodeId>, seed: Option<Triangle>) -> Self {
        NodeState {
            id,
            nbrs,
            seed,
            trngls: BTreeMap::new(),
            nbr_lists: BTreeMap::new(),
            announced: BTreeSet::new(),
            anchors: BTreeMap::new(),
            heard: BTreeMap::new(),
            body: Arc::default(),
            extended: false,
            bars: BTreeMap::new(),
            localizable: false,
            stitched: BTreeSet::new(),
            joins: BTreeMap::new(),
            marked: BTreeSet::new(),
            lamport: 0,
            phase1_receipts: 0,
            sent: 0,
            received: 0,
        }
    }

    pub fn handle(&mut self, msg: &Message) -> Vec<Outgoing> {
        match &msg.payload {
            Payload::Start(step) => self.start(*step),
            Payload::NbrList(list) => self.handle_recv_nbr_list(msg.src, list),
            Payload::Triangle(t) => self.handle_recv_triangle(*t),
            Payload::Visit { from, to, depth } => self.handle_visit_triangle(*from, *to, *depth),
            Payload::RootPath { from, to, path } => self.handle_root_path(*from, *to, path),
            Payload::Child { child, parent } => {
                if let Some(rec) = self.trngls.get_mut(parent) {
                    rec.children.insert(*child);
                }
                Vec::new()
            }
            Payload::Anchor { tri, path } => {
                self.anchors.insert(*tri, path.clone());
                Vec::new()
            }
            Payload::Reach { from, body } => self.handle_visit_node(*from, body),
            Payload::Cycle { bar, origin } => self.handle_cycle(msg.src, *origin, bar),
            Payload::Stitch => self.handle_stitch(msg.src),
            Payload::Join { bar, member } => self.handle_join(bar, *member),
            Payload::Mark { bar, origin } => self.handle_mark(*origin, bar),
        }
    }

    fn start(&mut self, step: Step) -> Vec<Outgoing> {
        match step {
            Step::NbrLists => to_all(SignalKind::NbrList, self.nbrs.clone(), &Payload::NbrList(self.nbrs.clone())),
            Step::Bfs => self.start_bfs(),
            Step::Tree => self.start_tree(),
            Step::Anchors => self.start_anchors(),
            Step::Reach => self.start_reach(),
            Step::Detect => self.handle_elementary_bars(),
            Step::Stitch => self.become_localizable(),
        }
    }

    /// A neighbor's list reveals the triangles through that neighbor; the
    /// leader records each new one, links it to the triangles it already
    /// leads and announces it to the other two members.
    pub fn handle_recv_nbr_list(&mut self, from: NodeId, list: &[NodeId]) -> Vec<Outgoing> {
        self.phase1_receipts += 1;
        self.nbr_lists.insert(from, list.to_vec());
        let mut out = Vec::new();
        for &k in list {
            if k == self.id || !self.nbrs.contains(&k) {
                continue;
            }
            let t = Triangle::new(self.id, from, k);
            if t.leader() != self.id || self.trngls.contains_key(&t) {
                continue;
            }
            let mut rec = TriangleRecord::new(t);
            for (other, orec) in self.trngls.iter_mut() {
                if other.common_edge(&t).is_some() {
                    orec.nbrs.insert(t);
                    rec.nbrs.insert(*other);
                }
            }
            rec.nbrs.extend(self.announced.iter().filter(|a| a.common_edge(&t).is_some()));
            self.trngls.insert(t, rec);
            out.extend(to_all(SignalKind::Triangle, [from, k], &Payload::Triangle(t)));
        }
        out
    }

    /// Links the announced triangle into every local record sharing a side
    /// with it. A member that is not the leader passes the announcement on
    /// to its other neighbors.
    pub fn handle_recv_triangle(&mut self, t: Triangle) -> Vec<Outgoing> {
        self.phase1_receipts += 1;
        self.announced.insert(t);
        for (other, rec) in self.trngls.iter_mut() {
            if *other != t && other.common_edge(&t).is_some() {
                rec.nbrs.insert(t);
            }
        }
        if !t.contains(self.id) || t.leader() == self.id {
            return Vec::new();
        }
        let skip = t.nodes();
        let targets: Vec<NodeId> = self.nbrs.iter().copied().filter(|v| !skip.contains(v)).collect();
        to_all(SignalKind::Triangle, targets, &Payload::Triangle(t))
    }

    fn start_bfs(&mut self) -> Vec<Outgoing> {
        let Some(seed) = self.seed.filter(|s| s.leader() == self.id) else {
            return Vec::new();
        };
        let Some(rec) = self.trngls.get_mut(&seed) else {
            return Vec::new();
        };
        rec.status = TriStatus::Visited;
        rec.depth = Some(0);
        offers(rec)
    }

    /// Breadth-first offer. The record keeps the lexicographically least
    /// `(depth, parent)` seen and re-offers only when its depth drops; the
    /// fixpoint is the tree whose parents are the least neighbors on the
    /// previous layer.
    pub fn handle_visit_triangle(&mut self, from: Triangle, to: Triangle, depth: usize) -> Vec<Outgoing> {
        let Some(rec) = self.trngls.get_mut(&to) else {
            return Vec::new();
        };
        if rec.depth == Some(0) {
            return Vec::new();
        }
        let cand = (depth + 1, from);
        let cur = rec.key();
        if cur.is_some_and(|c| c <= cand) {
            return Vec::new();
        }
        rec.status = TriStatus::Visited;
        rec.parent = Some(from);
        rec.depth = Some(depth + 1);
        if cur.is_some_and(|c| c.0 == cand.0) {
            Vec::new()
        } else {
            offers(rec)
        }
    }

    /// Children report to their parents; the root starts handing root
    /// paths down.
    fn start_tree(&mut self) -> Vec<Outgoing> {
        let mut out = Vec::new();
        for rec in self.trngls.values_mut().filter(|r| r.status == TriStatus::Visited) {
            match rec.parent {
                Some(parent) => {
                    out.push(Outgoing::new(SignalKind::Child, parent.leader(), Payload::Child { child: rec.tri, parent }))
                }
                None => {
                    rec.root_path = vec![rec.tri];
                    out.extend(path_offers(rec));
                }
            }
        }
        out
    }

    /// A neighbor's root path. Neighbors keep it for cycle checks; a child
    /// extends its parent's and passes its own on.
    pub fn handle_root_path(&mut self, from: Triangle, to: Triangle, path: &[Triangle]) -> Vec<Outgoing> {
        let Some(rec) = self.trngls.get_mut(&to) else {
            return Vec::new();
        };
        rec.heard.insert(from, path.to_vec());
        if rec.parent != Some(from) {
            return Vec::new();
        }
        rec.root_path = path.to_vec();
        rec.root_path.push(to);
        path_offers(rec)
    }

    fn start_anchors(&mut self) -> Vec<Outgoing> {
        let mut out = Vec::new();
        for rec in self.trngls.values().filter(|r| r.status == TriStatus::Visited) {
            // every member hears, so a knot or bridge end is found whichever
            // way the tree happens to enter its triangles
            let anchor = Payload::Anchor { tri: rec.tri, path: rec.root_path.clone() };
            out.extend(to_all(SignalKind::VisitNode, rec.tri.nodes(), &anchor));
        }
        out
    }

    fn start_reach(&mut self) -> Vec<Outgoing> {
        if self.anchors.is_empty() {
            return Vec::new();
        }
        self.body = Arc::new(ReachBody::pendant(self.id, self.anchors.clone()));
        let near: BTreeSet<NodeId> = self.anchors.keys().flat_map(|t| t.nodes()).collect();
        let targets: Vec<NodeId> = self.nbrs.iter().copied().filter(|v| !near.contains(v)).collect();
        to_all(SignalKind::VisitNode, targets, &Payload::Reach { from: self.id, body: self.body.clone() })
    }

    /// Reach report from a pendant or extended neighbor. A node outside the
    /// tree that has heard from three such senders is an extended node and
    /// keeps passing on the union of what it heard.
    pub fn handle_visit_node(&mut self, from: NodeId, body: &Arc<ReachBody>) -> Vec<Outgoing> {
        self.heard.insert(from, body.clone());
        if !self.anchors.is_empty() || self.heard.len() < 3 {
            return Vec::new();
        }
        self.extended = true;
        let mut next = ReachBody::default();
        for b in self.heard.values() {
            next.merge(b);
        }
        next.merge(&ReachBody::extended(self.id, self.heard.keys().copied().collect()));
        if *self.body == next {
            return Vec::new();
        }
        self.body = Arc::new(next);
        let tree_nbrs: BTreeSet<NodeId> =
            self.heard.iter().filter(|(&v, b)| matches!(b.get(v), Some(Reach::Pendant(_)))).map(|(&v, _)| v).collect();
        let targets: Vec<NodeId> = self.nbrs.iter().copied().filter(|v| !tree_nbrs.contains(v)).collect();
        to_all(SignalKind::VisitNode, targets, &Payload::Reach { from: self.id, body: self.body.clone() })
    }

    /// Runs every local check on the gathered tree paths and floods each
    /// bar found to its members.
    pub fn handle_elementary_bars(&mut self) -> Vec<Outgoing> {
        let mut found: Vec<BarInfo> = Vec::new();
        for rec in self.trngls.values().filter(|r| r.status == TriStatus::Visited) {
            for (&u, path_u) in &rec.heard {
                let tree_edge = rec.parent == Some(u) || rec.children.contains(&u);
                if rec.tri < u && !tree_edge {
                    found.extend(cycle_bar(rec.tri, &rec.root_path, u, path_u));
                }
            }
        }
        let anchors: Vec<(&Triangle, &Vec<Triangle>)> = self.anchors.iter().collect();
        for (i, &(a, pa)) in anchors.iter().enumerate() {
            for &(b, pb) in &anchors[i + 1..] {
                found.extend(circuit_bar(self.id, *a, pa, *b, pb));
            }
        }
        if !self.anchors.is_empty() {
            for (&q, body) in self.heard.range(self.id + 1..) {
                let Some(Reach::Pendant(theirs)) = body.get(q) else { continue };
                for (a, pa) in &self.anchors {
                    for (b, pb) in theirs {
                        found.extend(bridge_bar(self.id, *a, pa, q, *b, pb));
                    }
                }
            }
        }
        found.extend(fan_bars(self.id, &self.nbrs, &self.nbr_lists));
        if self.extended {
            let senders: BTreeSet<NodeId> = self.heard.keys().copied().collect();
            found.extend(net_bars(self.id, &self.body, &senders));
        }
        found.sort_by(|a, b| b.nodes.len().cmp(&a.nodes.len()).then_with(|| a.id.cmp(&b.id)));
        let mut out = Vec::new();
        for bar in found {
            out.extend(self.handle_cycle(self.id, self.id, &Arc::new(bar)));
        }
        out
    }

    fn handle_cycle(&mut self, from: NodeId, origin: NodeId, bar: &Arc<BarInfo>) -> Vec<Outgoing> {
        if self.bars.contains_key(&bar.id) || self.bars.values().any(|known| covers(known, bar)) {
            return Vec::new();
        }
        self.bars.insert(bar.id.clone(), bar.clone());
        for t in &bar.triangles {
            if let Some(rec) = self.trngls.get_mut(t) {
                rec.element_lst.insert(bar.id.clone());
            }
        }
        let payload = Payload::Cycle { bar: bar.clone(), origin };
        let onward: Vec<NodeId> = bar.tree_neighbors(self.id).into_iter().filter(|&w| w != from).collect();
        to_all(SignalKind::Cycle, onward, &payload)
    }

    fn become_localizable(&mut self) -> Vec<Outgoing> {
        if self.localizable {
            return Vec::new();
        }
        self.localizable = true;
        let mut out = to_all(SignalKind::Stitch, self.nbrs.clone(), &Payload::Stitch);
        let pending: Vec<BarId> = self.bars.keys().filter(|b| !self.marked.contains(*b)).cloned().collect();
        for bar in pending {
            out.extend(self.handle_join(&bar, self.id));
        }
        out
    }

    fn handle_stitch(&mut self, from: NodeId) -> Vec<Outgoing> {
        self.stitched.insert(from);
        if self.stitched.len() >= 3 {
            self.become_localizable()
        } else {
            Vec::new()
        }
    }

    /// Join notices travel along bar edges to the bar's coordinator, which
    /// activates the bar once three distinct members are localizable.
    fn handle_join(&mut self, bar_id: &BarId, member: NodeId) -> Vec<Outgoing> {
        let Some(bar) = self.bars.get(bar_id).cloned() else {
            return Vec::new();
        };
        let coord = bar.coordinator();
        if coord != self.id {
            return match bar.next_hop(self.id, coord) {
                Some(hop) => vec![Outgoing::new(SignalKind::Stitch, hop, Payload::Join { bar: bar_id.clone(), member })],
                None => Vec::new(),
            };
        }
        if self.marked.contains(bar_id) {
            return Vec::new();
        }
        let joined = self.joins.entry(bar_id.clone()).or_default();
        joined.insert(member);
        if joined.len() < 3 {
            return Vec::new();
        }
        self.handle_mark(self.id, bar_id)
    }

    fn handle_mark(&mut self, origin: NodeId, bar_id: &BarId) -> Vec<Outgoing> {
        if !self.marked.insert(bar_id.clone()) {
            return Vec::new();
        }
        let Some(bar) = self.bars.get(bar_id).cloned() else {
            return Vec::new();
        };
        let payload = Payload::Mark { bar: bar_id.clone(), origin };
        let mut out = to_all(SignalKind::Mark, bar.tree_children(origin, self.id), &payload);
        out.extend(self.become_localizable());
        out
    }
}

/// A bar inside a known one adds nothing to stitching; dropping it keeps
/// flooding proportional to the maximal bars. Equal node sets keep the
/// smaller id, so some copy of every maximal bar always survives.
fn covers(known: &BarInfo, bar: &BarInfo) -> bool {
    known.nodes.is_superset(&bar.nodes) && (known.nodes.len() > bar.nodes.len() || known.id < bar.id)
}

fn offers(rec: &TriangleRecord) -> Vec<Outgoing> {
    let depth = rec.depth.expect("offering triangles are visited");
    rec.nbrs
        .iter()
        .map(|&n| Outgoing::new(SignalKind::Visit, n.leader(), Payload::Visit { from: rec.tri, to: n, depth }))
        .collect()
}

fn path_offers(rec: &TriangleRecord) -> Vec<Outgoing> {
    rec.nbrs
        .iter()
        .map(|&n| {
            let payload = Payload::RootPath { from: rec.tri, to: n, path: rec.root_path.clone() };
            Outgoing::new(SignalKind::Visit, n.leader(), payload)
        })
        .collect()
}
