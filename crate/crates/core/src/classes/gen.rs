use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    is_triangle_tree, leaf_knots, too_small, tree_pendants, verify_net, verify_notch, ClassError, TriangleStream,
};
use crate::graph::{edge, Edge, Graph, NodeId, Triangle};

fn stream_of(ts: Vec<Triangle>) -> TriangleStream {
    TriangleStream::new(ts).expect("generator builds a valid stream")
}

fn graph_of(n: usize, edges: impl IntoIterator<Item = Edge>) -> Graph {
    Graph::from_edges(n, edges).expect("generator builds a simple graph")
}

/// Wheel on `n` nodes: hub 0, rim `1..n` in cyclic order.
pub fn gen_wheel(n: usize) -> Result<Graph, ClassError> {
    too_small("wheel", 4, n)?;
    let rim = n - 1;
    let edges = (1..n).flat_map(|i| [(0, i), (i, i % rim + 1)]);
    Ok(graph_of(n, edges))
}

/// Zigzag strip `v0 .. v(m+1)` with `T_i = (v(i-1), v(i), v(i+1))`.
pub fn gen_triangle_chain(m: usize) -> Result<(Graph, TriangleStream), ClassError> {
    too_small("triangle chain", 1, m)?;
    let ts: Vec<Triangle> = (1..=m).map(|i| Triangle::new(i - 1, i, i + 1)).collect();
    let g = graph_of(m + 2, ts.iter().flat_map(|t| t.edges()));
    Ok((g, stream_of(ts)))
}

/// The wheel on `m + 1` nodes read as a triangle cycle of `m` faces around
/// the hub.
pub fn gen_triangle_cycle(m: usize) -> Result<(Graph, TriangleStream), ClassError> {
    too_small("triangle cycle", 3, m)?;
    let g = gen_wheel(m + 1)?;
    let ts = (1..=m).map(|i| Triangle::new(0, i, i % m + 1)).collect();
    Ok((g, stream_of(ts)))
}

/// The square of an `n`-cycle: a triangle cycle of `n` triangles
/// `(i, i+1, i+2)` in which every node has degree 4, so it is not a wheel.
pub fn gen_cycle_square(n: usize) -> Result<(Graph, TriangleStream), ClassError> {
    too_small("cycle square", 7, n)?;
    let ts: Vec<Triangle> = (0..n).map(|i| Triangle::new(i, (i + 1) % n, (i + 2) % n)).collect();
    let g = graph_of(n, ts.iter().flat_map(|t| t.edges()));
    Ok((g, stream_of(ts)))
}

/// Zigzag strip whose last node is identified with the first, which
/// becomes the knot. Below four triangles the ends close into a cycle.
pub fn gen_triangle_circuit(m: usize) -> Result<(Graph, TriangleStream, NodeId), ClassError> {
    too_small("triangle circuit", 4, m)?;
    let v = |i: usize| if i == m + 1 { 0 } else { i };
    let ts: Vec<Triangle> = (1..=m).map(|i| Triangle::new(v(i - 1), v(i), v(i + 1))).collect();
    let g = graph_of(m + 1, ts.iter().flat_map(|t| t.edges()));
    Ok((g, stream_of(ts), 0))
}

/// A chain plus the edge joining its two end pendants.
pub fn gen_triangle_bridge(m: usize) -> Result<(Graph, TriangleStream, Edge), ClassError> {
    too_small("triangle bridge", 2, m)?;
    let (chain, ts) = gen_triangle_chain(m)?;
    let e = edge(0, m + 1);
    Ok((chain.with_edges([e])?, ts, e))
}

/// One step of a tree plan: the new triangle is glued onto side `side` of
/// triangle `parent`. Sides of a triangle stored as `[a, b, c]` are
/// `0 = ab`, `1 = ac`, `2 = bc`; a non-root triangle is stored as
/// `[shared, shared, pendant]`, so its side 0 is the one it hangs from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Attach {
    pub parent: usize,
    pub side: usize,
}

/// Gluing instructions for triangles `2..=m`; the root is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TreePlan(pub Vec<Attach>);

impl TreePlan {
    fn of(steps: &[(usize, usize)]) -> Self {
        TreePlan(steps.iter().map(|&(parent, side)| Attach { parent, side }).collect())
    }

    pub fn triangles(&self) -> usize {
        self.0.len() + 1
    }

    /// Eleven triangles, three of them leaves, none of them the root.
    pub fn fig4() -> Self {
        Self::of(&[(0, 0), (1, 1), (2, 1), (3, 1), (0, 1), (5, 1), (1, 2), (7, 1), (8, 2), (9, 1)])
    }

    /// Five triangles with three leaves, the generator of the small notch.
    pub fn fig6() -> Self {
        Self::of(&[(0, 0), (0, 1), (0, 2), (1, 1)])
    }

    /// Seven triangles, four leaves and two inner pendants; the generator
    /// tree of the net examples.
    pub fn fig8() -> Self {
        Self::of(&[(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (3, 1)])
    }

    /// A path of `m` triangles, each hung on the newest side of the last;
    /// this is the zigzag chain.
    pub fn linear(m: usize) -> Self {
        TreePlan((1..m).map(|i| Attach { parent: i - 1, side: 2 }).collect())
    }

    /// The root with a child on each of `m - 1` of its sides (`m <= 4`).
    pub fn star(m: usize) -> Self {
        TreePlan((1..m).map(|i| Attach { parent: 0, side: i - 1 }).collect())
    }

    /// A uniformly random valid plan of `m` triangles.
    pub fn random(m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut free: Vec<(usize, usize)> = vec![(0, 0), (0, 1), (0, 2)];
        let mut steps = Vec::new();
        for i in 1..m {
            let k = rng.gen_range(0..free.len());
            let (parent, side) = free.swap_remove(k);
            steps.push(Attach { parent, side });
            free.extend([(i, 1), (i, 2)]);
        }
        TreePlan(steps)
    }
}

/// Builds the triangle tree described by `plan`. Node ids follow creation
/// order: the root is `(0,1,2)` and the pendant of triangle `i` is `i + 2`.
pub fn gen_triangle_tree(plan: &TreePlan) -> Result<(Graph, Vec<Triangle>), ClassError> {
    let mut stored: Vec<[NodeId; 3]> = vec![[0, 1, 2]];
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (k, step) in plan.0.iter().enumerate() {
        let i = k + 1;
        if step.parent >= i || step.side > 2 {
            return Err(ClassError::InvalidPlan(format!("step {i}: no side {} on triangle {}", step.side, step.parent)));
        }
        if (step.parent > 0 && step.side == 0) || !used.insert((step.parent, step.side)) {
            return Err(ClassError::InvalidPlan(format!(
                "step {i}: side {} of triangle {} is already shared",
                step.side, step.parent
            )));
        }
        let [a, b, c] = stored[step.parent];
        let (x, y) = [(a, b), (a, c), (b, c)][step.side];
        stored.push([x, y, i + 2]);
    }
    let ts: Vec<Triangle> = stored.iter().map(|&[a, b, c]| Triangle::new(a, b, c)).collect();
    debug_assert!(is_triangle_tree(&ts));
    let g = graph_of(ts.len() + 2, ts.iter().flat_map(|t| t.edges()));
    Ok((g, ts))
}

/// The tree of `plan` plus an apex adjacent to every leaf knot.
pub fn gen_triangle_notch(plan: &TreePlan) -> Result<(Graph, Vec<Triangle>, NodeId), ClassError> {
    let (tree, ts) = gen_triangle_tree(plan)?;
    let knots = leaf_knots(&ts);
    if knots.len() < 3 {
        return Err(ClassError::InsufficientLeaves(knots.len()));
    }
    let apex = tree.n();
    let g = Graph::from_edges(apex + 1, tree.edges().chain(knots.iter().map(|&k| (apex, k))))?;
    verify_notch(&g, &ts, apex)?;
    Ok((g, ts, apex))
}

/// What an extended node attaches to: the pendant of tree triangle `i`
/// (for the root, its leaf knot) or the `k`-th extended node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NetAttach {
    Pendant(usize),
    Extended(usize),
}

/// Extended nodes in insertion order, each with its attachments.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ExtensionPlan(pub Vec<Vec<NetAttach>>);

impl ExtensionPlan {
    /// Two extended nodes; the first reaches every leaf knot through the
    /// second. Goes with [`TreePlan::fig8`].
    pub fn fig8b() -> Self {
        use NetAttach::*;
        ExtensionPlan(vec![vec![Pendant(2), Pendant(6), Pendant(5)], vec![Extended(0), Pendant(4), Pendant(3)]])
    }

    /// Two unconnected extended nodes splitting the leaf knots between
    /// them, so no extended node reaches all of them.
    pub fn fig8a() -> Self {
        use NetAttach::*;
        ExtensionPlan(vec![vec![Pendant(2), Pendant(6), Pendant(1)], vec![Pendant(4), Pendant(5), Pendant(3)]])
    }
}

/// A triangle net and its witnesses.
#[derive(Debug, Clone)]
pub struct Net {
    pub graph: Graph,
    pub tree: Vec<Triangle>,
    pub extended: Vec<NodeId>,
    pub apex: NodeId,
}

/// Builds the tree of `plan`, adds the extended nodes of `ext` and checks
/// the result is a triangle net.
pub fn gen_triangle_net(plan: &TreePlan, ext: &ExtensionPlan) -> Result<Net, ClassError> {
    let (tree, ts) = gen_triangle_tree(plan)?;
    let pendants = tree_pendants(&ts);
    let root_knot = super::leaf_triangles(&ts).into_iter().zip(leaf_knots(&ts)).find(|&(i, _)| i == 0).map(|(_, k)| k);
    let mut edges: Vec<Edge> = tree.edges().collect();
    let mut extended = Vec::new();
    for (k, attachments) in ext.0.iter().enumerate() {
        let x = tree.n() + k;
        for a in attachments {
            let target = match *a {
                NetAttach::Pendant(0) => root_knot
                    .ok_or_else(|| ClassError::InvalidPlan("the root triangle is not a leaf".into()))?,
                NetAttach::Pendant(i) => pendants
                    .get(i)
                    .copied()
                    .flatten()
                    .ok_or_else(|| ClassError::InvalidPlan(format!("no tree triangle {i}")))?,
                NetAttach::Extended(j) if j < k => tree.n() + j,
                NetAttach::Extended(j) => {
                    return Err(ClassError::InvalidPlan(format!("extended node {k} refers to later node {j}")))
                }
            };
            edges.push((x, target));
        }
        extended.push(x);
    }
    let graph = Graph::from_edges(tree.n() + extended.len(), edges)?;
    let apex = verify_net(&graph, &ts, &extended)?;
    Ok(Net { graph, tree: ts, extended, apex })
}

/// A random net: a random tree with enough leaves, a first extended node
/// on three leaf knots, and each later one on its predecessor plus two
/// fresh leaf knots. Leaf knots are pairwise non-adjacent, so no extended
/// node closes a triangle.
pub fn gen_random_net(m: usize, extended: usize, seed: u64) -> Result<Net, ClassError> {
    too_small("extended nodes", 1, extended)?;
    let need = 3 + 2 * (extended - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let plan = TreePlan::random(m, rng.gen());
        let (_, ts) = gen_triangle_tree(&plan)?;
        let leaves = super::leaf_triangles(&ts);
        if leaves.len() < need {
            continue;
        }
        let mut order = leaves.clone();
        order.shuffle(&mut rng);
        let mut rest = order.into_iter().map(NetAttach::Pendant);
        let mut steps = vec![rest.by_ref().take(3).collect::<Vec<_>>()];
        for k in 1..extended {
            let mut step = vec![NetAttach::Extended(k - 1)];
            step.extend(rest.by_ref().take(2));
            steps.push(step);
        }
        // leftover knots go to random extended nodes
        for a in rest {
            let k = rng.gen_range(0..extended);
            steps[k].push(a);
        }
        return gen_triangle_net(&plan, &ExtensionPlan(steps));
    }
    Err(ClassError::InvalidPlan(format!("no tree of {m} triangles with {need} leaves found")))
}

/// A graph built so that `ordering` is a trilateration ordering: starts
/// from a triangle and gives each new node three or more earlier
/// neighbors.
pub fn gen_trilateration(n: usize, seed: u64) -> Result<(Graph, Vec<NodeId>), ClassError> {
    too_small("trilateration graph", 4, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0, 1), (1, 2), (0, 2)];
    for v in 3..n {
        let k = if v == 3 { 3 } else { rng.gen_range(3..=v.min(4)) };
        let earlier: Vec<NodeId> = (0..v).collect();
        for &u in earlier.choose_multiple(&mut rng, k) {
            edges.push((u, v));
        }
    }
    Ok((graph_of(n, edges), (0..n).collect()))
}

/// One wheel of a wheel-extension plan; `shared` is how many of its nodes
/// already exist (ignored for the first wheel).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WheelSpec {
    pub size: usize,
    pub shared: usize,
}

/// A wheel subgraph witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WheelWitness {
    pub hub: NodeId,
    pub rim: Vec<NodeId>,
}

impl WheelWitness {
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        std::iter::once(self.hub).chain(self.rim.iter().copied())
    }

    pub fn edges(&self) -> Vec<Edge> {
        let k = self.rim.len();
        (0..k).flat_map(|i| [edge(self.hub, self.rim[i]), edge(self.rim[i], self.rim[(i + 1) % k])]).collect()
    }
}

/// Glues wheels one after another. Each new wheel takes an existing rim
/// node of an earlier wheel as its hub and that wheel's hub plus the
/// following rim nodes as the start of its own rim, so it shares exactly
/// `shared` nodes; the rest of its rim is new.
pub fn gen_wheel_extension(
    plan: &[WheelSpec],
    seed: u64,
) -> Result<(Graph, Vec<NodeId>, Vec<WheelWitness>), ClassError> {
    let Some(first) = plan.first() else {
        return Err(ClassError::InvalidPlan("empty wheel plan".into()));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (i, w) in plan.iter().enumerate() {
        if w.size < 4 {
            return Err(ClassError::InvalidPlan(format!("wheel {i} has {} < 4 nodes", w.size)));
        }
        if i > 0 && (w.shared < 3 || w.shared >= w.size) {
            return Err(ClassError::InvalidPlan(format!(
                "wheel {i} shares {} nodes; needs at least 3 and at least one new node",
                w.shared
            )));
        }
    }
    let mut wheels = vec![WheelWitness { hub: 0, rim: (1..first.size).collect() }];
    let mut next = first.size;
    for (i, w) in plan.iter().enumerate().skip(1) {
        let candidates: Vec<usize> = (0..wheels.len()).filter(|&j| wheels[j].rim.len() >= w.shared - 1).collect();
        let Some(&host) = candidates.choose(&mut rng) else {
            return Err(ClassError::InvalidPlan(format!("no earlier wheel can share {} nodes with wheel {i}", w.shared)));
        };
        let host = &wheels[host];
        let k = host.rim.len();
        let j = rng.gen_range(0..k);
        let hub = host.rim[j];
        let mut rim = vec![host.hub];
        rim.extend((1..w.shared - 1).map(|d| host.rim[(j + d) % k]));
        while rim.len() < w.size - 1 {
            rim.push(next);
            next += 1;
        }
        wheels.push(WheelWitness { hub, rim });
    }
    let g = graph_of(next, wheels.iter().flat_map(|w| w.edges()));
    Ok((g, (0..next).collect(), wheels))
}

/// A part of a stitched bar, described by a generator spec string.
#[derive(Debug, Clone)]
pub struct StitchedBar {
    pub graph: Graph,
    /// First triangle of the first part's stream.
    pub seed: Triangle,
    /// Node sets of the parts in the glued graph.
    pub parts: Vec<BTreeSet<NodeId>>,
}

/// Glues elementary bars one after another: the seed triangle of each new
/// part is identified with a random triangle of the previous part.
pub fn gen_stitched(parts: &[super::Generated], seed: u64) -> Result<StitchedBar, ClassError> {
    let Some(first) = parts.first() else {
        return Err(ClassError::InvalidPlan("no parts to stitch".into()));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Edge> = first.graph.edges().collect();
    let mut n = first.graph.n();
    let mut sets = vec![first.graph.nodes().collect::<BTreeSet<_>>()];
    let mut prev_triangles: Vec<Triangle> = first.graph.triangles();
    for part in &parts[1..] {
        let anchor = part.seed.ok_or_else(|| ClassError::InvalidPlan("part has no seed triangle".into()))?;
        let target = *prev_triangles.choose(&mut rng).expect("bars have triangles");
        let mut map = vec![usize::MAX; part.graph.n()];
        for (a, b) in anchor.nodes().into_iter().zip(target.nodes()) {
            map[a] = b;
        }
        for v in part.graph.nodes() {
            if map[v] == usize::MAX {
                map[v] = n;
                n += 1;
            }
        }
        edges.extend(part.graph.edges().map(|(u, v)| (map[u], map[v])));
        sets.push(part.graph.nodes().map(|v| map[v]).collect());
        prev_triangles = part
            .graph
            .triangles()
            .iter()
            .map(|t| {
                let [a, b, c] = t.nodes();
                Triangle::new(map[a], map[b], map[c])
            })
            .collect();
    }
    let seed_triangle = first.seed.ok_or_else(|| ClassError::InvalidPlan("part has no seed triangle".into()))?;
    Ok(StitchedBar { graph: graph_of(n, edges), seed: seed_triangle, parts: sets })
}

/// Hangs a chain of `m` triangles off edge `at` of `base`: the chain's
/// first two nodes are identified with the edge's ends.
pub fn graft_chain(base: &Graph, at: Edge, m: usize) -> Result<Graph, ClassError> {
    if !base.has_edge(at.0, at.1) {
        return Err(ClassError::InvalidPlan(format!("{at:?} is not an edge")));
    }
    let (chain, _) = gen_triangle_chain(m)?;
    let off = base.n() - 2;
    let map = |v: NodeId| match v {
        0 => at.0,
        1 => at.1,
        v => v + off,
    };
    Ok(base.with_edges(chain.edges().map(|(u, v)| (map(u), map(v))))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::*;
    use crate::graph::complete;

    #[test]
    fn wheel_sizes() {
        assert_eq!(gen_wheel(4).unwrap(), complete(4));
        let w5 = gen_wheel(5).unwrap();
        assert_eq!((w5.n(), w5.edge_count(), w5.triangles().len()), (5, 8, 4));
        assert!(matches!(gen_wheel(3), Err(ClassError::TooSmall { .. })));
    }

    #[test]
    fn chain_counts() {
        let (g, s) = gen_triangle_chain(1).unwrap();
        assert_eq!((g.n(), s.len()), (3, 1));
        let (g, s) = gen_triangle_chain(4).unwrap();
        assert_eq!(g.n(), 6);
        assert!(is_triangle_chain(s.triangles()));
        let (g, _) = gen_triangle_chain(10).unwrap();
        assert_eq!((g.n(), g.edge_count()), (12, 21));
    }

    #[test]
    fn cycles() {
        let (g, s) = gen_triangle_cycle(3).unwrap();
        assert_eq!(g, complete(4));
        assert!(is_triangle_cycle(s.triangles()));
        let (g, s) = gen_triangle_cycle(4).unwrap();
        assert_eq!(g, gen_wheel(5).unwrap());
        assert!(is_triangle_cycle(s.triangles()));
        for n in 7..12 {
            let (g, s) = gen_cycle_square(n).unwrap();
            assert!(is_triangle_cycle(s.triangles()));
            assert!(wheel_hub(&g).is_none());
            assert_eq!(g.triangles().len(), n);
        }
    }

    #[test]
    fn circuits() {
        let (g, s, knot) = gen_triangle_circuit(4).unwrap();
        assert_eq!((g.n(), g.degree(knot)), (5, 4));
        assert_eq!(circuit_knot(s.triangles()), Some(knot));
        assert!(!is_triangle_cycle(s.triangles()));
        for m in 5..10 {
            let (_, s, knot) = gen_triangle_circuit(m).unwrap();
            assert_eq!(circuit_knot(s.triangles()), Some(knot));
        }
        assert!(gen_triangle_circuit(3).is_err());
    }

    #[test]
    fn bridges() {
        let (g, s, e) = gen_triangle_bridge(2).unwrap();
        assert_eq!(g, complete(4));
        assert_eq!(bridging_edge(&g, s.triangles()), Some(e));
        let (g, s, e) = gen_triangle_bridge(4).unwrap();
        assert_eq!(bridging_edge(&g, s.triangles()), Some(e));
        assert!(matches!(gen_triangle_bridge(1), Err(ClassError::TooSmall { .. })));
    }

    #[test]
    fn tree_plans() {
        let (g, s) = gen_triangle_tree(&TreePlan::default()).unwrap();
        assert_eq!((g.n(), s.len()), (3, 1));
        let (_, s) = gen_triangle_tree(&TreePlan::fig4()).unwrap();
        assert_eq!(s.len(), 11);
        assert_eq!(leaf_triangles(&s), vec![4, 6, 10]);
        let (_, s) = gen_triangle_tree(&TreePlan::star(4)).unwrap();
        assert_eq!(leaf_triangles(&s), vec![1, 2, 3]);
        assert!(gen_triangle_tree(&TreePlan::star(5)).is_err());
        let bad = TreePlan(vec![Attach { parent: 0, side: 0 }, Attach { parent: 0, side: 0 }]);
        assert!(matches!(gen_triangle_tree(&bad), Err(ClassError::InvalidPlan(_))));
        let bad = TreePlan(vec![Attach { parent: 0, side: 0 }, Attach { parent: 1, side: 0 }]);
        assert!(matches!(gen_triangle_tree(&bad), Err(ClassError::InvalidPlan(_))));
        for seed in 0..20 {
            let (_, s) = gen_triangle_tree(&TreePlan::random(12, seed)).unwrap();
            assert!(is_triangle_tree(&s));
        }
    }

    #[test]
    fn linear_plan_is_a_chain() {
        let (_, s) = gen_triangle_tree(&TreePlan::linear(6)).unwrap();
        assert!(is_triangle_chain(&s));
    }

    #[test]
    fn notches() {
        let (g, _, apex) = gen_triangle_notch(&TreePlan::fig6()).unwrap();
        assert_eq!(g.degree(apex), 3);
        let (g, _, apex) = gen_triangle_notch(&TreePlan::fig4()).unwrap();
        assert_eq!(g.degree(apex), 3);
        assert_eq!(gen_triangle_notch(&TreePlan::linear(5)).unwrap_err(), ClassError::InsufficientLeaves(2));
    }

    #[test]
    fn fig8_nets() {
        let net = gen_triangle_net(&TreePlan::fig8(), &ExtensionPlan::fig8b()).unwrap();
        assert_eq!(net.apex, *net.extended.last().unwrap());
        match gen_triangle_net(&TreePlan::fig8(), &ExtensionPlan::fig8a()) {
            Err(ClassError::NotANet(msg)) => assert!(msg.contains("reaches every leaf knot"), "{msg}"),
            other => panic!("expected NotANet, got {other:?}"),
        }
    }

    #[test]
    fn notch_is_a_net() {
        let (g, ts, apex) = gen_triangle_notch(&TreePlan::fig4()).unwrap();
        assert_eq!(verify_net(&g, &ts, &[apex]), Ok(apex));
    }

    #[test]
    fn random_nets() {
        for seed in 0..10 {
            let net = gen_random_net(16, 2, seed).unwrap();
            assert_eq!(net.extended.len(), 2);
        }
    }

    #[test]
    fn trilateration_graphs() {
        let (g, _) = gen_trilateration(4, 0).unwrap();
        assert_eq!(g, complete(4));
        assert!(gen_trilateration(3, 0).is_err());
    }

    #[test]
    fn wheel_extensions() {
        let (g, _, w) = gen_wheel_extension(&[WheelSpec { size: 4, shared: 0 }], 0).unwrap();
        assert_eq!(g, complete(4));
        assert_eq!(w.len(), 1);
        let plan = [WheelSpec { size: 5, shared: 0 }, WheelSpec { size: 5, shared: 3 }];
        let (g, _, w) = gen_wheel_extension(&plan, 1).unwrap();
        assert_eq!(g.n(), 7);
        let shared: BTreeSet<_> = w[0].nodes().filter(|v| w[1].nodes().any(|u| u == *v)).collect();
        assert_eq!(shared.len(), 3);
        let bad = [WheelSpec { size: 5, shared: 0 }, WheelSpec { size: 4, shared: 2 }];
        assert!(matches!(gen_wheel_extension(&bad, 1), Err(ClassError::InvalidPlan(_))));
    }

    #[test]
    fn grafting() {
        let g = graft_chain(&complete(4), (0, 1), 3).unwrap();
        assert_eq!(g.n(), 4 + 3);
        assert_eq!(g.edge_count(), 6 + 7 - 1);
    }
}
