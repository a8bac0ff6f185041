//! Discrete-event simulation of the three-phase localizability protocol.
//!
//! Every node runs the same handlers and talks only to its neighbors.
//! Triangle-level messages go to the receiving triangle's leader, relayed
//! through a common neighbor when the leaders are not adjacent. Phases and
//! their sub-steps start when the network is quiescent.

mod bars;
mod message;
mod node;
mod scheduler;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

pub use bars::{BarId, BarInfo, Reach, ReachBody};
pub use message::{Message, Outgoing, Payload, SignalKind, Step};
pub use node::{NodeState, TriStatus, TriangleRecord};
pub use scheduler::Scheduler;

use crate::ftg::{FlipTriangleGraph, FlipTriangleTree};
use crate::graph::{Graph, NodeId, Triangle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("seed {0} is not a triangle of the graph")]
    SeedNotTriangle(Triangle),
    #[error("run did not settle within {ceiling} events (stopped in phase {phase})")]
    EventCeiling { phase: usize, ceiling: usize },
    #[error("no route from {from} to {to}")]
    Unroutable { from: NodeId, to: NodeId },
    #[error("phase {0} run out of order")]
    OutOfOrder(usize),
    #[error("no seed triangle; only triangle discovery can run")]
    NoSeed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub scheduler_seed: u64,
    pub trace: bool,
    /// Deliveries between distinct nodes allowed per run:
    /// `ceiling_factor * |E| + 100`. A node handing work to itself does
    /// not count.
    pub ceiling_factor: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig { scheduler_seed: 0, trace: false, ceiling_factor: 50 }
    }
}

/// One delivered message: receiver's Lamport clock after the receive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceLine {
    pub clock: u64,
    pub kind: SignalKind,
    pub src: NodeId,
    pub dst: NodeId,
    pub payload: String,
}

impl std::fmt::Display for TraceLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {} {} {} {}", self.clock, self.kind, self.src, self.dst, self.payload)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarSummary {
    pub id: BarId,
    pub nodes: BTreeSet<NodeId>,
    pub triangles: Vec<Triangle>,
}

/// Outcome of a full run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalizabilityReport {
    pub seed_triangle: Triangle,
    pub localizable_nodes: BTreeSet<NodeId>,
    pub elementary_bars: Vec<BarSummary>,
    /// One-hop transmissions, relays included.
    pub total_messages: usize,
    pub messages_per_phase: [usize; 3],
    /// Largest Lamport timestamp.
    pub max_clock: u64,
    /// Per node: neighbor lists and triangle announcements received.
    pub phase1_receipts: Vec<usize>,
    /// Per node: Lamport clock when triangle discovery went quiescent.
    pub phase1_clocks: Vec<u64>,
    pub sent: Vec<usize>,
    /// Every scheduler delivery, a node's hand-offs to itself included.
    pub events: usize,
}

/// Derived figures for message and clock budgets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub edges: usize,
    pub messages_per_edge: f64,
    pub max_clock: u64,
    pub messages_per_phase: [usize; 3],
    /// Nodes whose receipt count in the triangle-discovery phase exceeds
    /// three per neighbor.
    pub receipt_violations: Vec<NodeId>,
    /// Nodes whose Lamport clock after triangle discovery exceeds three
    /// per neighbor.
    pub clock_violations: Vec<NodeId>,
}

pub fn metrics(g: &Graph, report: &LocalizabilityReport) -> Metrics {
    Metrics {
        edges: g.edge_count(),
        messages_per_edge: report.total_messages as f64 / g.edge_count().max(1) as f64,
        max_clock: report.max_clock,
        messages_per_phase: report.messages_per_phase,
        receipt_violations: g.nodes().filter(|&v| report.phase1_receipts[v] > 3 * g.degree(v)).collect(),
        clock_violations: g.nodes().filter(|&v| report.phase1_clocks[v] > 3 * g.degree(v) as u64).collect(),
    }
}

pub struct Simulation {
    graph: Graph,
    seed: Option<Triangle>,
    nodes: Vec<NodeState>,
    sched: Scheduler,
    config: SimConfig,
    trace: Vec<TraceLine>,
    per_phase: [usize; 3],
    phase1_clocks: Vec<u64>,
    network_events: usize,
    phase: usize,
}

impl Simulation {
    pub fn new(graph: &Graph, seed: Triangle, config: SimConfig) -> Result<Self, SimError> {
        if !graph.is_triangle(seed) {
            return Err(SimError::SeedNotTriangle(seed));
        }
        Ok(Self::build(graph, Some(seed), config))
    }

    /// A simulation that can only run triangle discovery.
    pub fn unseeded(graph: &Graph, config: SimConfig) -> Self {
        Self::build(graph, None, config)
    }

    fn build(graph: &Graph, seed: Option<Triangle>, config: SimConfig) -> Self {
        let nodes = graph
            .nodes()
            .map(|v| NodeState::new(v, graph.neighbors(v).to_vec(), seed.filter(|t| t.contains(v))))
            .collect();
        Simulation {
            graph: graph.clone(),
            seed,
            nodes,
            sched: Scheduler::new(config.scheduler_seed),
            config,
            trace: Vec::new(),
            per_phase: [0; 3],
            phase1_clocks: Vec::new(),
            network_events: 0,
            phase: 0,
        }
    }

    pub fn nodes(&self) -> &[NodeState] {
        &self.nodes
    }

    pub fn trace(&self) -> &[TraceLine] {
        &self.trace
    }

    fn advance(&mut self, phase: usize) -> Result<(), SimError> {
        if self.phase + 1 != phase {
            return Err(SimError::OutOfOrder(phase));
        }
        self.phase = phase;
        Ok(())
    }

    /// Triangle discovery. Returns the FTG as assembled from the leaders'
    /// records.
    pub fn run_phase1(&mut self) -> Result<FlipTriangleGraph, SimError> {
        self.advance(1)?;
        let all: Vec<NodeId> = self.graph.nodes().collect();
        self.step(Step::NbrLists, &all)?;
        self.phase1_clocks = self.nodes.iter().map(|n| n.lamport).collect();
        let lists: BTreeMap<Triangle, BTreeSet<Triangle>> =
            self.nodes.iter().flat_map(|n| n.trngls.values().map(|r| (r.tri, r.nbrs.clone()))).collect();
        Ok(FlipTriangleGraph::from_adjacency(&lists))
    }

    /// Spanning tree of the seed's component and elementary bar detection.
    /// Returns the tree as the leaders hold it and the bars found.
    pub fn run_phase2(&mut self) -> Result<(FlipTriangleTree, Vec<BarInfo>), SimError> {
        let seed = self.seed.ok_or(SimError::NoSeed)?;
        self.advance(2)?;
        let all: Vec<NodeId> = self.graph.nodes().collect();
        self.step(Step::Bfs, &[seed.leader()])?;
        self.step(Step::Tree, &all)?;
        self.step(Step::Anchors, &all)?;
        self.step(Step::Reach, &all)?;
        self.step(Step::Detect, &all)?;
        let mut tree = FlipTriangleTree {
            root: seed,
            parent: BTreeMap::new(),
            children: BTreeMap::new(),
            depth: BTreeMap::new(),
        };
        for rec in self.nodes.iter().flat_map(|n| n.trngls.values()).filter(|r| r.status == TriStatus::Visited) {
            tree.depth.insert(rec.tri, rec.root_path.len() - 1);
            tree.children.insert(rec.tri, rec.children.iter().copied().collect());
            if let Some(p) = rec.parent {
                tree.parent.insert(rec.tri, p);
            }
        }
        let mut bars: BTreeMap<BarId, BarInfo> = BTreeMap::new();
        for n in &self.nodes {
            for (id, b) in &n.bars {
                bars.entry(id.clone()).or_insert_with(|| (**b).clone());
            }
        }
        Ok((tree, bars.into_values().collect()))
    }

    /// Stitching from the seed triangle.
    pub fn run_phase3(&mut self) -> Result<LocalizabilityReport, SimError> {
        let seed = self.seed.ok_or(SimError::NoSeed)?;
        self.advance(3)?;
        self.step(Step::Stitch, &seed.nodes())?;
        Ok(self.report(seed))
    }

    fn report(&self, seed: Triangle) -> LocalizabilityReport {
        let mut bars: BTreeMap<BarId, BarSummary> = BTreeMap::new();
        for n in &self.nodes {
            for (id, b) in &n.bars {
                bars.entry(id.clone()).or_insert_with(|| BarSummary {
                    id: id.clone(),
                    nodes: b.nodes.clone(),
                    triangles: b.triangles.clone(),
                });
            }
        }
        LocalizabilityReport {
            seed_triangle: seed,
            localizable_nodes: self.nodes.iter().filter(|n| n.localizable).map(|n| n.id).collect(),
            elementary_bars: bars.into_values().collect(),
            total_messages: self.per_phase.iter().sum(),
            messages_per_phase: self.per_phase,
            max_clock: self.nodes.iter().map(|n| n.lamport).max().unwrap_or(0),
            phase1_receipts: self.nodes.iter().map(|n| n.phase1_receipts).collect(),
            phase1_clocks: self.phase1_clocks.clone(),
            sent: self.nodes.iter().map(|n| n.sent).collect(),
            events: self.sched.delivered(),
        }
    }

    /// Triggers `step` at `starters` and runs until quiescent.
    fn step(&mut self, step: Step, starters: &[NodeId]) -> Result<(), SimError> {
        let ceiling = self.config.ceiling_factor * self.graph.edge_count() + 100;
        for &v in starters {
            self.sched.push(Message {
                kind: SignalKind::Start,
                src: v,
                dst: v,
                target: v,
                payload: Payload::Start(step),
                send_clock: 0,
            });
        }
        while let Some(msg) = self.sched.pop() {
            let at = msg.dst;
            if msg.src != at {
                self.network_events += 1;
                if self.network_events > ceiling {
                    return Err(SimError::EventCeiling { phase: self.phase, ceiling });
                }
            }
            let node = &mut self.nodes[at];
            node.lamport = node.lamport.max(msg.send_clock) + 1;
            if msg.src != at {
                node.received += 1;
            }
            if self.config.trace && msg.src != at {
                self.trace.push(TraceLine {
                    clock: node.lamport,
                    kind: msg.kind,
                    src: msg.src,
                    dst: at,
                    payload: msg.payload.to_string(),
                });
            }
            if msg.target != at {
                let relay = Outgoing::new(msg.kind, msg.target, msg.payload);
                self.send(at, relay)?;
                continue;
            }
            for out in self.nodes[at].handle(&msg) {
                self.send(at, out)?;
            }
        }
        Ok(())
    }

    fn send(&mut self, from: NodeId, out: Outgoing) -> Result<(), SimError> {
        let to = out.target;
        let hop = if to == from || self.graph.has_edge(from, to) {
            to
        } else {
            let common = self.graph.neighbors(from).iter().copied().filter(|&w| self.graph.has_edge(w, to)).min();
            common.ok_or(SimError::Unroutable { from, to })?
        };
        let node = &mut self.nodes[from];
        node.lamport += 1;
        if hop != from {
            node.sent += 1;
            self.per_phase[self.phase - 1] += 1;
        }
        self.sched.push(Message {
            kind: out.kind,
            src: from,
            dst: hop,
            target: to,
            payload: out.payload,
            send_clock: node.lamport,
        });
        Ok(())
    }
}

/// All three phases.
pub fn run_full(g: &Graph, seed: Triangle, config: SimConfig) -> Result<(LocalizabilityReport, Vec<TraceLine>), SimError> {
    let mut sim = Simulation::new(g, seed, config)?;
    sim.run_phase1()?;
    sim.run_phase2()?;
    let report = sim.run_phase3()?;
    Ok((report, sim.trace))
}

/// The set stitching converges to, computed centrally: the seed nodes, then
/// repeatedly any bar meeting the set in three nodes and any node with
/// three neighbors in the set.
pub fn stitch_closure(g: &Graph, seed: Triangle, bars: &[BarInfo]) -> BTreeSet<NodeId> {
    let mut set: BTreeSet<NodeId> = seed.nodes().into_iter().collect();
    loop {
        let before = set.len();
        for bar in bars {
            if bar.nodes.intersection(&set).count() >= 3 {
                set.extend(bar.nodes.iter().copied());
            }
        }
        for v in g.nodes() {
            if !set.contains(&v) && g.neighbors(v).iter().filter(|u| set.contains(u)).count() >= 3 {
                set.insert(v);
            }
        }
        if set.len() == before {
            return set;
        }
    }
}
