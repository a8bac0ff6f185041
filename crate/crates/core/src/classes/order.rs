use std::collections::HashSet;

use super::{ClassError, WheelWitness};
use crate::graph::{Graph, NodeId, Triangle};

/// Largest graph searched exhaustively by [`has_trilateration_ordering`].
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Whether some trilateration ordering of `g` starts with the nodes of
/// `seed`: every later node has at least three earlier neighbors.
///
/// Graphs up to [`EXHAUSTIVE_LIMIT`] nodes are searched exhaustively. Larger
/// ones use the greedy closure, which is also exact: adding a node never
/// stops another from qualifying later, so the closure reaches every node
/// any ordering can.
pub fn has_trilateration_ordering(g: &Graph, seed: Triangle) -> Result<bool, ClassError> {
    if !g.is_triangle(seed) {
        return Err(ClassError::SeedNotTriangle(seed));
    }
    if g.n() <= EXHAUSTIVE_LIMIT {
        Ok(exhaustive_trilateration(g, seed))
    } else {
        Ok(trilateration_ordering(g, seed)?.is_some())
    }
}

/// Greedy closure from `seed`; returns the ordering if it covers `g`.
pub fn trilateration_ordering(g: &Graph, seed: Triangle) -> Result<Option<Vec<NodeId>>, ClassError> {
    if !g.is_triangle(seed) {
        return Err(ClassError::SeedNotTriangle(seed));
    }
    let mut placed = vec![false; g.n()];
    let mut hits = vec![0usize; g.n()];
    let mut order = Vec::with_capacity(g.n());
    let mut ready: Vec<NodeId> = Vec::new();
    let mut place = |v: NodeId, placed: &mut Vec<bool>, order: &mut Vec<NodeId>, ready: &mut Vec<NodeId>| {
        placed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            hits[u] += 1;
            if hits[u] == 3 && !placed[u] {
                ready.push(u);
            }
        }
    };
    for v in seed.nodes() {
        place(v, &mut placed, &mut order, &mut ready);
    }
    while let Some(v) = ready.pop() {
        if !placed[v] {
            place(v, &mut placed, &mut order, &mut ready);
        }
    }
    Ok((order.len() == g.n()).then_some(order))
}

/// Depth-first search over placed-node sets, memoizing dead ends.
fn exhaustive_trilateration(g: &Graph, seed: Triangle) -> bool {
    assert!(g.n() <= 63, "bitmask search");
    let full: u64 = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let nbr: Vec<u64> = g.nodes().map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let start = seed.nodes().iter().fold(0u64, |m, &v| m | 1 << v);
    let mut dead = HashSet::new();
    fn go(set: u64, full: u64, nbr: &[u64], dead: &mut HashSet<u64>) -> bool {
        if set == full {
            return true;
        }
        if dead.contains(&set) {
            return false;
        }
        for v in 0..nbr.len() {
            if set & (1 << v) == 0 && (nbr[v] & set).count_ones() >= 3 && go(set | 1 << v, full, nbr, dead) {
                return true;
            }
        }
        dead.insert(set);
        false
    }
    go(start, full, &nbr, &mut dead)
}

/// Checks the ordering condition directly.
pub fn is_trilateration_ordering(g: &Graph, ordering: &[NodeId]) -> bool {
    if ordering.len() != g.n() || ordering.len() < 3 {
        return false;
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in ordering.iter().enumerate() {
        if v >= g.n() || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    let [a, b, c] = [ordering[0], ordering[1], ordering[2]];
    if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
        return false;
    }
    ordering[3..].iter().enumerate().all(|(k, &v)| g.neighbors(v).iter().filter(|&&u| pos[u] < k + 3).count() >= 3)
}

/// Checks a wheel-extension ordering against wheel witnesses: every
/// witness is a wheel subgraph of `g`, and each node after the first
/// three lies in some witness holding at least three earlier nodes.
pub fn is_wheel_extension_ordering(g: &Graph, ordering: &[NodeId], wheels: &[WheelWitness]) -> bool {
    if ordering.len() != g.n() || ordering.len() < 3 {
        return false;
    }
    if wheels.iter().any(|w| w.rim.len() < 3 || w.edges().iter().any(|&(u, v)| !g.has_edge(u, v))) {
        return false;
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in ordering.iter().enumerate() {
        if v >= g.n() || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    ordering.iter().enumerate().skip(3).all(|(i, &v)| {
        wheels.iter().any(|w| w.nodes().any(|u| u == v) && w.nodes().filter(|&u| pos[u] < i).count() >= 3)
    })
}
