//! Generic rigidity in the plane. Rigidity comes from the (2,3) pebble
//! game; global rigidity from 3-connectivity plus redundant rigidity.
//! A randomized rigidity-matrix rank over a large prime field serves as
//! an independent cross-check.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, NodeId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RigidityError {
    #[error("need at least {need} nodes, got {got}")]
    TooSmall { need: usize, got: usize },
}

fn need(g: &Graph, n: usize) -> Result<(), RigidityError> {
    if g.n() < n {
        Err(RigidityError::TooSmall { need: n, got: g.n() })
    } else {
        Ok(())
    }
}

/// State of the (2,3) pebble game: each node owns two pebbles, and each
/// accepted edge is directed away from the node whose pebble covers it.
#[derive(Debug, Clone)]
pub struct PebbleGame {
    out: Vec<Vec<NodeId>>,
    accepted: usize,
}

impl PebbleGame {
    pub fn new(n: usize) -> Self {
        PebbleGame { out: vec![Vec::new(); n], accepted: 0 }
    }

    pub fn free_pebbles(&self, v: NodeId) -> usize {
        2 - self.out[v].len()
    }

    pub fn accepted(&self) -> usize {
        self.accepted
    }

    /// Accepted edges, oriented as covered.
    pub fn independent_edges(&self) -> Vec<(NodeId, NodeId)> {
        self.out.iter().enumerate().flat_map(|(u, l)| l.iter().map(move |&v| (u, v))).collect()
    }

    /// Tries to add `{u, v}`. Returns whether it was independent of the
    /// edges accepted so far.
    pub fn insert(&mut self, u: NodeId, v: NodeId) -> bool {
        if u == v {
            return false;
        }
        while self.free_pebbles(u) + self.free_pebbles(v) < 4 {
            let (x, other) = if self.free_pebbles(u) < 2 { (u, v) } else { (v, u) };
            if !self.collect(x, other) {
                return false;
            }
        }
        self.out[u].push(v);
        self.accepted += 1;
        true
    }

    /// Frees one pebble at `root` by reversing a path to a node with a free
    /// pebble, never touching `keep`.
    fn collect(&mut self, root: NodeId, keep: NodeId) -> bool {
        let n = self.out.len();
        let mut prev = vec![usize::MAX; n];
        prev[root] = root;
        prev[keep] = keep;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for i in 0..self.out[x].len() {
                let y = self.out[x][i];
                if prev[y] != usize::MAX {
                    continue;
                }
                prev[y] = x;
                if self.free_pebbles(y) > 0 {
                    // reverse the path root -> ... -> y
                    let mut cur = y;
                    while cur != root {
                        let p = prev[cur];
                        let pos = self.out[p].iter().position(|&w| w == cur).expect("path edge");
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    return true;
                }
                stack.push(y);
            }
        }
        false
    }
}

/// Size of a maximal independent edge set: the rank of the generic
/// rigidity matroid.
pub fn rigidity_rank(g: &Graph) -> usize {
    let mut game = PebbleGame::new(g.n());
    for (u, v) in g.edges() {
        game.insert(u, v);
    }
    game.accepted()
}

fn rigid_unchecked(g: &Graph) -> bool {
    g.n() <= 1 || rigidity_rank(g) == 2 * g.n() - 3
}

pub fn is_rigid(g: &Graph) -> Result<bool, RigidityError> {
    need(g, 2)?;
    Ok(rigid_unchecked(g))
}

/// Rigid, and still rigid after deleting any one edge.
pub fn is_redundantly_rigid(g: &Graph) -> Result<bool, RigidityError> {
    need(g, 4)?;
    Ok(redundant_unchecked(g))
}

fn redundant_unchecked(g: &Graph) -> bool {
    rigid_unchecked(g) && g.edges().all(|e| rigid_unchecked(&g.without_edge(e)))
}

/// Largest graph decided by the pair-removal scan; above it, max-flow.
pub const PAIR_SCAN_LIMIT: usize = 64;

/// No set of at most two nodes disconnects the graph.
pub fn is_three_connected(g: &Graph) -> Result<bool, RigidityError> {
    need(g, 4)?;
    Ok(if g.n() <= PAIR_SCAN_LIMIT { three_connected_by_pairs(g) } else { three_connected_by_flow(g) })
}

fn connected_without(g: &Graph, gone: &[NodeId]) -> bool {
    let n = g.n();
    let Some(start) = (0..n).find(|v| !gone.contains(v)) else {
        return true;
    };
    let mut seen = vec![false; n];
    for &x in gone {
        seen[x] = true;
    }
    seen[start] = true;
    let mut count = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count + gone.len() == n
}

pub fn three_connected_by_pairs(g: &Graph) -> bool {
    let n = g.n();
    if !connected_without(g, &[]) {
        return false;
    }
    (0..n).all(|a| (a + 1..n).all(|b| connected_without(g, &[a, b])))
}

/// Vertex connectivity of at least 3, checked with unit-capacity flows
/// between the first three nodes and every later non-adjacent node.
pub fn three_connected_by_flow(g: &Graph) -> bool {
    let n = g.n();
    if n < 4 {
        return false;
    }
    for s in 0..3 {
        for t in s + 1..n {
            if !g.has_edge(s, t) && local_connectivity(g, s, t, 3) < 3 {
                return false;
            }
        }
    }
    true
}

/// Number of internally node-disjoint `s`-`t` paths, capped at `cap`.
pub fn local_connectivity(g: &Graph, s: NodeId, t: NodeId, cap: usize) -> usize {
    // node v splits into v_in = 2v and v_out = 2v + 1
    let n = g.n();
    let size = 2 * n;
    let mut cap_of: std::collections::HashMap<(usize, usize), i32> = std::collections::HashMap::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    let mut add = |a: usize, b: usize, c: i32, adj: &mut Vec<Vec<usize>>| {
        *cap_of.entry((a, b)).or_insert(0) += c;
        cap_of.entry((b, a)).or_insert(0);
        adj[a].push(b);
        adj[b].push(a);
    };
    for v in 0..n {
        let inner = if v == s || v == t { n as i32 } else { 1 };
        add(2 * v, 2 * v + 1, inner, &mut adj);
    }
    for (u, v) in g.edges() {
        add(2 * u + 1, 2 * v, 1, &mut adj);
        add(2 * v + 1, 2 * u, 1, &mut adj);
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; size];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            if x == dst {
                break;
            }
            for &y in &adj[x] {
                if prev[y] == usize::MAX && cap_of[&(x, y)] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[dst] == usize::MAX {
            break;
        }
        let mut cur = dst;
        while cur != src {
            let p = prev[cur];
            *cap_of.get_mut(&(p, cur)).expect("arc") -= 1;
            *cap_of.get_mut(&(cur, p)).expect("arc") += 1;
            cur = p;
        }
        flow += 1;
    }
    flow
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RigidityVerdict {
    pub rigid: bool,
    pub redundantly_rigid: bool,
    pub three_connected: bool,
    pub globally_rigid: bool,
}

fn is_complete(g: &Graph) -> bool {
    g.edge_count() == g.n() * g.n().saturating_sub(1) / 2
}

/// Generic global rigidity: complete on at most three nodes, otherwise
/// 3-connected and redundantly rigid.
pub fn is_globally_rigid(g: &Graph) -> RigidityVerdict {
    let n = g.n();
    let rigid = rigid_unchecked(g);
    let redundantly_rigid = n >= 2 && redundant_unchecked(g);
    if n <= 3 {
        let complete = is_complete(g);
        return RigidityVerdict { rigid, redundantly_rigid, three_connected: complete, globally_rigid: complete };
    }
    let three_connected = if n <= PAIR_SCAN_LIMIT { three_connected_by_pairs(g) } else { three_connected_by_flow(g) };
    RigidityVerdict { rigid, redundantly_rigid, three_connected, globally_rigid: three_connected && redundantly_rigid }
}

/// The Mersenne prime `2^61 - 1`.
pub const FIELD_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FIELD_PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

/// Rank of the rigidity matrix at uniformly random coordinates in
/// `GF(2^61 - 1)`, computed exactly. Random points are generic with
/// overwhelming probability, so this equals the generic rank except with
/// probability at most about `|E| / 2^61`.
pub fn random_matrix_rank(g: &Graph, rng: &mut impl Rng) -> usize {
    let n = g.n();
    let coords: Vec<(u64, u64)> = (0..n).map(|_| (rng.gen_range(0..FIELD_PRIME), rng.gen_range(0..FIELD_PRIME))).collect();
    let sub = |a: u64, b: u64| (a + FIELD_PRIME - b) % FIELD_PRIME;
    let mut rows: Vec<Vec<u64>> = g
        .edges()
        .map(|(u, v)| {
            let mut row = vec![0u64; 2 * n];
            let dx = sub(coords[u].0, coords[v].0);
            let dy = sub(coords[u].1, coords[v].1);
            row[2 * u] = dx;
            row[2 * u + 1] = dy;
            row[2 * v] = sub(0, dx);
            row[2 * v + 1] = sub(0, dy);
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..2 * n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = pow_mod(rows[rank][col], FIELD_PRIME - 2);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = mul_mod(row[col], inv);
                for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = sub(*x, mul_mod(factor, p));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rigidity by matrix rank: the best of `reps` random draws must reach
/// `2|V| - 3`.
pub fn rank_oracle_rigid(g: &Graph, seed: u64, reps: usize) -> bool {
    if g.n() <= 1 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let best = (0..reps.max(1)).map(|_| random_matrix_rank(g, &mut rng)).max().unwrap_or(0);
    best == 2 * g.n() - 3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{gen_triangle_bridge, gen_triangle_chain, gen_wheel, random_graph};
    use crate::graph::{complete, path};
    use proptest::prelude::*;

    #[test]
    fn rigid_basics() {
        assert!(is_rigid(&complete(3)).unwrap());
        assert!(!is_rigid(&path(3)).unwrap());
        assert!(is_rigid(&gen_triangle_chain(5).unwrap().0).unwrap());
        assert_eq!(is_rigid(&Graph::empty(1)), Err(RigidityError::TooSmall { need: 2, got: 1 }));
    }

    #[test]
    fn redundancy() {
        assert!(is_redundantly_rigid(&complete(4)).unwrap());
        assert!(!is_redundantly_rigid(&gen_triangle_chain(3).unwrap().0).unwrap());
        assert!(is_redundantly_rigid(&gen_wheel(5).unwrap()).unwrap());
    }

    #[test]
    fn connectivity() {
        assert!(is_three_connected(&complete(4)).unwrap());
        assert!(!is_three_connected(&gen_triangle_chain(4).unwrap().0).unwrap());
        assert!(is_three_connected(&gen_wheel(6).unwrap()).unwrap());
    }

    #[test]
    fn global_rigidity_verdicts() {
        assert!(is_globally_rigid(&complete(3)).globally_rigid);
        assert!(!is_globally_rigid(&path(3)).globally_rigid);
        assert!(is_globally_rigid(&gen_triangle_bridge(4).unwrap().0).globally_rigid);
        assert!(!is_globally_rigid(&gen_triangle_chain(4).unwrap().0).globally_rigid);
        assert!(is_globally_rigid(&Graph::empty(1)).globally_rigid);
        assert!(!is_globally_rigid(&Graph::empty(2)).globally_rigid);
    }

    #[test]
    fn pebble_accepts_a_laman_graph_and_rejects_k4_extra() {
        let mut game = PebbleGame::new(4);
        let k4: Vec<_> = complete(4).edges().collect();
        let accepted: Vec<bool> = k4.iter().map(|&(u, v)| game.insert(u, v)).collect();
        assert_eq!(accepted.iter().filter(|&&a| a).count(), 5);
        let pebbles: usize = (0..4).map(|v| game.free_pebbles(v)).sum();
        assert_eq!(pebbles + game.accepted(), 8);
    }

    #[test]
    fn rank_oracle_basics() {
        assert!(rank_oracle_rigid(&complete(4), 1, 3));
        assert!(!rank_oracle_rigid(&path(4), 1, 3));
    }

    proptest! {
        #[test]
        fn pebble_matches_rank(n in 2usize..10, p in 0.2f64..0.9, seed in any::<u64>()) {
            let g = random_graph(n, p, seed);
            prop_assert_eq!(rigid_unchecked(&g), rank_oracle_rigid(&g, seed, 3));
        }

        #[test]
        fn flow_matches_pairs(n in 4usize..12, p in 0.3f64..0.9, seed in any::<u64>()) {
            let g = random_graph(n, p, seed);
            prop_assert_eq!(three_connected_by_pairs(&g), three_connected_by_flow(&g));
        }

        #[test]
        fn accepted_edges_stay_sparse(n in 2usize..9, p in 0.3f64..1.0, seed in any::<u64>()) {
            let g = random_graph(n, p, seed);
            let mut game = PebbleGame::new(n);
            for (u, v) in g.edges() {
                game.insert(u, v);
            }
            let kept = game.independent_edges();
            let pebbles: usize = (0..n).map(|v| game.free_pebbles(v)).sum();
            prop_assert_eq!(pebbles + kept.len(), 2 * n);
            for mask in 1u32..(1 << n) {
                let k = mask.count_ones() as usize;
                if k < 2 { continue; }
                let inside = kept.iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count();
                prop_assert!(inside <= 2 * k - 3);
            }
        }

        #[test]
        fn adding_an_edge_keeps_global_rigidity(n in 4usize..9, p in 0.4f64..0.9, seed in any::<u64>(), a in 0usize..9, b in 0usize..9) {
            let g = random_graph(n, p, seed);
            let (a, b) = (a % n, b % n);
            prop_assume!(a != b);
            if is_globally_rigid(&g).globally_rigid {
                prop_assert!(is_globally_rigid(&g.with_edges([(a, b)]).unwrap()).globally_rigid);
            }
        }
    }
}
