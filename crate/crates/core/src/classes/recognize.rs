use std::collections::{BTreeSet, VecDeque};

use super::{is_stream, stream_roles, ClassError, ClassLabel};
use crate::graph::{edge, Edge, Graph, NodeId, Triangle};

fn end_pendants(ts: &[Triangle]) -> (BTreeSet<NodeId>, BTreeSet<NodeId>) {
    let roles = stream_roles(ts);
    (roles[0].pendants.clone(), roles[roles.len() - 1].pendants.clone())
}

/// Unique pendants of the first and last triangle, when both exist and
/// differ.
pub fn chain_end_pendants(ts: &[Triangle]) -> Option<(NodeId, NodeId)> {
    if ts.len() < 2 || !is_stream(ts) {
        return None;
    }
    let (a, b) = end_pendants(ts);
    if a.len() != 1 || b.len() != 1 {
        return None;
    }
    let (p, q) = (*a.first()?, *b.first()?);
    (p != q).then_some((p, q))
}

/// A single triangle counts as the trivial chain.
pub fn is_triangle_chain(ts: &[Triangle]) -> bool {
    ts.len() == 1 || chain_end_pendants(ts).is_some()
}

/// A closed stream: the first and last triangles share an edge different
/// from their links into the stream, and every triangle ends up with
/// exactly two inner sides and one outer side.
pub fn is_triangle_cycle(ts: &[Triangle]) -> bool {
    let m = ts.len();
    if m < 3 || !is_stream(ts) {
        return false;
    }
    let Some(close) = ts[0].common_edge(&ts[m - 1]) else {
        return false;
    };
    let first_link = ts[0].common_edge(&ts[1]);
    let last_link = ts[m - 2].common_edge(&ts[m - 1]);
    if Some(close) == first_link || Some(close) == last_link {
        return false;
    }
    stream_roles(ts).iter().all(|r| r.inner_sides.len() == 2 && r.outer_sides.len() == 1)
}

/// The circuit knot: the one pendant the first and last triangles have in
/// common, provided the stream is not a triangle cycle.
pub fn circuit_knot(ts: &[Triangle]) -> Option<NodeId> {
    if ts.len() < 2 || !is_stream(ts) || is_triangle_cycle(ts) {
        return None;
    }
    let (a, b) = end_pendants(ts);
    let common: Vec<NodeId> = a.intersection(&b).copied().collect();
    (common.len() == 1).then(|| common[0])
}

pub fn is_triangle_circuit(ts: &[Triangle]) -> bool {
    circuit_knot(ts).is_some()
}

/// The bridging edge: `ts` is a chain and `g` joins its end pendants.
pub fn bridging_edge(g: &Graph, ts: &[Triangle]) -> Option<Edge> {
    let (p, q) = chain_end_pendants(ts)?;
    g.has_edge(p, q).then(|| edge(p, q))
}

/// Each triangle after the first shares exactly one edge with exactly one
/// earlier triangle.
pub fn is_triangle_tree(ts: &[Triangle]) -> bool {
    if ts.is_empty() {
        return false;
    }
    for i in 0..ts.len() {
        for j in 0..i {
            if ts[i] == ts[j] {
                return false;
            }
        }
    }
    (1..ts.len()).all(|i| ts[..i].iter().filter(|t| t.common_edge(&ts[i]).is_some()).count() == 1)
}

/// Pendant of every triangle of a triangle tree: the node opposite the
/// edge it shares with its earlier neighbor. The first triangle has none.
pub fn tree_pendants(ts: &[Triangle]) -> Vec<Option<NodeId>> {
    (0..ts.len())
        .map(|i| {
            let e = ts[..i].iter().find_map(|t| t.common_edge(&ts[i]))?;
            ts[i].opposite(e)
        })
        .collect()
}

/// Indices of leaf triangles: members sharing an edge with exactly one
/// other member. The first triangle qualifies when it has a single
/// neighbor, so a chain has two leaves.
pub fn leaf_triangles(ts: &[Triangle]) -> Vec<usize> {
    (0..ts.len())
        .filter(|&i| ts.iter().enumerate().filter(|&(j, t)| j != i && t.common_edge(&ts[i]).is_some()).count() == 1)
        .collect()
}

/// Leaf knots: the node of each leaf triangle opposite its shared edge.
pub fn leaf_knots(ts: &[Triangle]) -> Vec<NodeId> {
    leaf_triangles(ts)
        .into_iter()
        .map(|i| {
            let e = ts.iter().enumerate().find_map(|(j, t)| if j != i { t.common_edge(&ts[i]) } else { None });
            ts[i].opposite(e.expect("leaf has a neighbor")).expect("own edge")
        })
        .collect()
}

/// Nodes an extended node may attach to: every tree pendant, plus the
/// leaf knot of the first triangle when that triangle is a leaf.
pub fn attachable_pendants(ts: &[Triangle]) -> BTreeSet<NodeId> {
    let mut out: BTreeSet<NodeId> = tree_pendants(ts).into_iter().flatten().collect();
    out.extend(leaf_knots(ts));
    out
}

/// Hub of a wheel graph, if `g` is one.
pub fn wheel_hub(g: &Graph) -> Option<NodeId> {
    let n = g.n();
    if n < 4 || g.edge_count() != 2 * (n - 1) {
        return None;
    }
    g.nodes().filter(|&h| g.degree(h) == n - 1).find(|&h| {
        let rim = g.without_node(h);
        rim.nodes().all(|v| rim.degree(v) == 2) && rim.is_connected()
    })
}

/// Checks that `g` is the tree `ts` plus one apex adjacent to exactly the
/// leaf knots, of which there are at least three.
pub fn verify_notch(g: &Graph, ts: &[Triangle], apex: NodeId) -> Result<(), ClassError> {
    if !is_triangle_tree(ts) {
        return Err(ClassError::InvalidPlan("generator stream is not a triangle tree".into()));
    }
    let knots: BTreeSet<NodeId> = leaf_knots(ts).into_iter().collect();
    if knots.len() < 3 {
        return Err(ClassError::InsufficientLeaves(knots.len()));
    }
    let tree_nodes = super::stream_vertices(ts);
    if tree_nodes.contains(&apex) {
        return Err(ClassError::InvalidPlan(format!("apex {apex} lies on the tree")));
    }
    let nbrs: BTreeSet<NodeId> = g.neighbors(apex).iter().copied().collect();
    if nbrs != knots {
        return Err(ClassError::InvalidPlan(format!("apex {apex} is not adjacent to exactly the leaf knots")));
    }
    let mut expected = super::stream_edges(ts);
    expected.extend(knots.iter().map(|&k| edge(apex, k)));
    let actual: BTreeSet<Edge> = g.edges().collect();
    if actual != expected {
        return Err(ClassError::InvalidPlan("graph has edges outside the tree and apex".into()));
    }
    Ok(())
}

/// Checks that `g` is generated from the tree `ts` by adding the nodes of
/// `extended` in order, each adjacent to at least three pendants or
/// earlier extended nodes, that `g` contains no triangle cycle, circuit or
/// bridge, and that some extended node reaches every leaf knot over
/// extending edges. Returns the apex, the last extended node.
pub fn verify_net(g: &Graph, ts: &[Triangle], extended: &[NodeId]) -> Result<NodeId, ClassError> {
    let not_a_net = |msg: String| Err(ClassError::NotANet(msg));
    if !is_triangle_tree(ts) {
        return not_a_net("generator stream is not a triangle tree".into());
    }
    let Some(&apex) = extended.last() else {
        return not_a_net("no extended node".into());
    };
    let tree_nodes = super::stream_vertices(ts);
    let pendants = attachable_pendants(ts);
    let mut allowed = pendants.clone();
    let mut extending: Vec<Edge> = Vec::new();
    for &x in extended {
        if tree_nodes.contains(&x) || allowed.contains(&x) {
            return not_a_net(format!("extended node {x} is not a new node"));
        }
        let hits: Vec<NodeId> = g.neighbors(x).iter().copied().filter(|v| allowed.contains(v)).collect();
        if hits.len() < 3 {
            return not_a_net(format!("extended node {x} has only {} pendant or extended neighbors", hits.len()));
        }
        extending.extend(hits.iter().map(|&v| edge(x, v)));
        allowed.insert(x);
    }
    let mut expected = super::stream_edges(ts);
    expected.extend(extending.iter().copied());
    let covered: BTreeSet<Edge> = g.edges().collect();
    if !covered.is_subset(&expected) {
        return not_a_net("graph has edges that are neither tree nor extending edges".into());
    }
    if let Some((label, _)) = find_forbidden_stream(g) {
        return not_a_net(format!("graph contains a triangle {label:?}"));
    }
    let sub = Graph::from_edges(g.n(), extending.iter().copied())?;
    let knots = leaf_knots(ts);
    let hub = extended.iter().copied().find(|&u| {
        let reach = reachable(&sub, u);
        knots.iter().all(|&k| reach[k])
    });
    match hub {
        Some(_) => Ok(apex),
        None => not_a_net("no extended node reaches every leaf knot by an extending path".into()),
    }
}

fn reachable(g: &Graph, from: NodeId) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Exhaustive search over all triangle streams of `g` for a triangle
/// cycle, circuit or bridge. Exponential in the worst case; meant for the
/// small instances the tests and net checks use.
pub fn find_forbidden_stream(g: &Graph) -> Option<(ClassLabel, Vec<Triangle>)> {
    let ftg = crate::ftg::build_ftg(g);
    let mut path = Vec::new();
    let mut on_path = vec![false; ftg.len()];
    for start in 0..ftg.len() {
        path.push(start);
        on_path[start] = true;
        if let Some(hit) = extend_streams(g, &ftg, &mut path, &mut on_path) {
            return Some(hit);
        }
        path.pop();
        on_path[start] = false;
    }
    None
}

fn extend_streams(
    g: &Graph,
    ftg: &crate::ftg::FlipTriangleGraph,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> Option<(ClassLabel, Vec<Triangle>)> {
    let ts: Vec<Triangle> = path.iter().map(|&i| ftg.triangle(i)).collect();
    if ts.len() >= 2 {
        if is_triangle_cycle(&ts) {
            return Some((ClassLabel::Cycle, ts));
        }
        if is_triangle_circuit(&ts) {
            return Some((ClassLabel::Circuit, ts));
        }
        if bridging_edge(g, &ts).is_some() {
            return Some((ClassLabel::Bridge, ts));
        }
    }
    let last = *path.last().expect("non-empty");
    let prev_link = (path.len() >= 2).then(|| ftg.triangle(path[path.len() - 2]).common_edge(&ftg.triangle(last)));
    for &next in ftg.neighbors(last) {
        if on_path[next] {
            continue;
        }
        let link = ftg.triangle(last).common_edge(&ftg.triangle(next));
        if prev_link == Some(link) {
            continue;
        }
        path.push(next);
        on_path[next] = true;
        let hit = extend_streams(g, ftg, path, on_path);
        path.pop();
        on_path[next] = false;
        if hit.is_some() {
            return hit;
        }
    }
    None
}
