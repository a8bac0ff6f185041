//! Undirected simple graphs over dense integer node ids, triangle
//! enumeration and the leader convention used by every other module.

mod io;

pub use io::{parse_edge_list, parse_json, to_dot, to_edge_list, to_json, GraphDoc};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Node identifier. Ids are dense: a graph on `n` nodes uses `0..n`.
pub type NodeId = usize;

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (NodeId, NodeId);

/// Normalizes an unordered pair into an [`Edge`].
#[inline]
pub fn edge(u: NodeId, v: NodeId) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),
    #[error("triangles are identical: {0}")]
    IdenticalTriangles(Triangle),
    #[error("{0:?} is not a triangle of the graph")]
    NotATriangle([NodeId; 3]),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph document: {0}")]
    Json(String),
}

/// Immutable undirected simple graph. Adjacency lists are sorted and
/// symmetric; there are no self-loops or parallel edges.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph from an edge list. Duplicates and reversed pairs are
    /// merged; the node count is `max(n, largest id + 1)`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut set = BTreeSet::new();
        let mut n = n;
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            n = n.max(u + 1).max(v + 1);
            set.insert(edge(u, v));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, m: set.len() })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.n()
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges in lexicographic order, smaller endpoint first.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Returns a new graph with the given edges added.
    pub fn with_edges<I: IntoIterator<Item = Edge>>(&self, extra: I) -> Result<Self, GraphError> {
        Graph::from_edges(self.n(), self.edges().chain(extra))
    }

    /// Returns a new graph with `e` removed (node set unchanged).
    pub fn without_edge(&self, e: Edge) -> Self {
        let e = edge(e.0, e.1);
        Graph::from_edges(self.n(), self.edges().filter(|&f| f != e)).expect("subgraph of a valid graph")
    }

    /// Returns the graph with node `v` and its edges removed, ids compacted.
    pub fn without_node(&self, v: NodeId) -> Self {
        let keep: Vec<NodeId> = self.nodes().filter(|&u| u != v).collect();
        self.induced(&keep).0
    }

    /// Induced subgraph on `nodes` with ids renumbered to `0..nodes.len()`
    /// in the order given. Returns the subgraph and the original ids.
    pub fn induced(&self, nodes: &[NodeId]) -> (Graph, Vec<NodeId>) {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in nodes.iter().enumerate() {
            index[v] = i;
        }
        let edges = nodes.iter().flat_map(|&u| {
            let index = &index;
            self.adj[u]
                .iter()
                .filter(move |&&v| index[v] != usize::MAX && u < v)
                .map(move |&v| (index[u], index[v]))
        });
        let g = Graph::from_edges(nodes.len(), edges.collect::<Vec<_>>()).expect("induced subgraph");
        (g, nodes.to_vec())
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.nodes() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Node sets of the biconnected components with at least three nodes,
    /// each sorted, in ascending order. Hopcroft-Tarjan with an edge stack.
    pub fn blocks(&self) -> Vec<Vec<NodeId>> {
        struct Dfs<'a> {
            g: &'a Graph,
            disc: Vec<usize>,
            low: Vec<usize>,
            time: usize,
            stack: Vec<Edge>,
            out: Vec<Vec<NodeId>>,
        }
        impl Dfs<'_> {
            fn visit(&mut self, u: NodeId, parent: Option<NodeId>) {
                self.time += 1;
                self.disc[u] = self.time;
                self.low[u] = self.time;
                for &v in &self.g.adj[u] {
                    if self.disc[v] == 0 {
                        self.stack.push((u, v));
                        self.visit(v, Some(u));
                        self.low[u] = self.low[u].min(self.low[v]);
                        if self.low[v] >= self.disc[u] {
                            let mut block = BTreeSet::new();
                            while let Some((a, b)) = self.stack.pop() {
                                block.extend([a, b]);
                                if (a, b) == (u, v) {
                                    break;
                                }
                            }
                            if block.len() >= 3 {
                                self.out.push(block.into_iter().collect());
                            }
                        }
                    } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                        self.stack.push((u, v));
                        self.low[u] = self.low[u].min(self.disc[v]);
                    }
                }
            }
        }
        let mut dfs =
            Dfs { g: self, disc: vec![0; self.n()], low: vec![0; self.n()], time: 0, stack: Vec::new(), out: Vec::new() };
        for v in self.nodes() {
            if dfs.disc[v] == 0 {
                dfs.visit(v, None);
            }
        }
        let mut out = dfs.out;
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Every 3-clique exactly once, in canonical order.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for a in self.nodes() {
            for (i, &b) in self.adj[a].iter().enumerate() {
                if b <= a {
                    continue;
                }
                for &c in &self.adj[a][i + 1..] {
                    if self.has_edge(b, c) {
                        out.push(Triangle([a, b, c]));
                    }
                }
            }
        }
        out
    }

    /// Triangles containing `v`.
    pub fn triangles_at(&self, v: NodeId) -> Vec<Triangle> {
        let nb = &self.adj[v];
        let mut out = Vec::new();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if self.has_edge(a, b) {
                    out.push(Triangle::new(v, a, b));
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_triangle(&self, t: Triangle) -> bool {
        let [a, b, c] = t.0;
        self.has_edge(a, b) && self.has_edge(b, c) && self.has_edge(a, c)
    }

    /// Validates an arbitrary id triple as a triangle of this graph.
    pub fn triangle(&self, ids: [NodeId; 3]) -> Result<Triangle, GraphError> {
        let [a, b, c] = ids;
        if a == b || b == c || a == c || a.max(b).max(c) >= self.n() {
            return Err(GraphError::NotATriangle(ids));
        }
        let t = Triangle::new(a, b, c);
        if self.is_triangle(t) {
            Ok(t)
        } else {
            Err(GraphError::NotATriangle(ids))
        }
    }

    /// Disjoint union: `other`'s ids are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        Graph::from_edges(
            self.n() + other.n(),
            self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off))),
        )
        .expect("union of simple graphs")
    }
}

/// Builds a graph from an edge list, merging duplicates and reversed pairs.
pub fn load_graph<I: IntoIterator<Item = (NodeId, NodeId)>>(edges: I) -> Result<Graph, GraphError> {
    Graph::from_edges(0, edges)
}

/// A 3-clique in canonical form: ids strictly increasing. The first id is
/// the triangle's leader.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[NodeId; 3]", try_from = "[NodeId; 3]")]
pub struct Triangle(pub(crate) [NodeId; 3]);

impl Triangle {
    /// Canonicalizes three distinct ids. Panics on repeated ids.
    pub fn new(a: NodeId, b: NodeId, c: NodeId) -> Self {
        let mut t = [a, b, c];
        t.sort_unstable();
        assert!(t[0] != t[1] && t[1] != t[2], "triangle needs three distinct nodes");
        Triangle(t)
    }

    pub fn nodes(&self) -> [NodeId; 3] {
        self.0
    }

    /// The minimum id, which stores and processes the triangle.
    pub fn leader(&self) -> NodeId {
        self.0[0]
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.contains(&v)
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [(a, b), (b, c), (a, c)]
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        let e = edge(e.0, e.1);
        self.edges().contains(&e)
    }

    /// The vertex opposite edge `e`, if `e` is a side of this triangle.
    pub fn opposite(&self, e: Edge) -> Option<NodeId> {
        if !self.has_edge(e) {
            return None;
        }
        self.0.iter().copied().find(|&v| v != e.0 && v != e.1)
    }

    /// The side opposite vertex `v`.
    pub fn side_opposite(&self, v: NodeId) -> Option<Edge> {
        if !self.contains(v) {
            return None;
        }
        let mut it = self.0.iter().copied().filter(|&u| u != v);
        Some(edge(it.next()?, it.next()?))
    }

    /// The common edge of two triangles, if they have exactly two nodes in
    /// common. Distinct triangles share at most one edge.
    pub fn common_edge(&self, other: &Triangle) -> Option<Edge> {
        let mut common = self.0.iter().copied().filter(|v| other.contains(*v));
        let a = common.next()?;
        let b = common.next()?;
        if common.next().is_some() {
            return None;
        }
        Some(edge(a, b))
    }
}

impl fmt::Debug for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl From<Triangle> for [NodeId; 3] {
    fn from(t: Triangle) -> Self {
        t.0
    }
}

impl TryFrom<[NodeId; 3]> for Triangle {
    type Error = String;
    fn try_from(ids: [NodeId; 3]) -> Result<Self, String> {
        let [a, b, c] = ids;
        if a == b || b == c || a == c {
            return Err(format!("triangle {ids:?} repeats a node"));
        }
        Ok(Triangle::new(a, b, c))
    }
}

/// All triangles of `g`, each once, canonical order.
pub fn enumerate_triangles(g: &Graph) -> Vec<Triangle> {
    g.triangles()
}

/// The edge shared by two distinct triangles, if any.
pub fn shared_edge(t1: Triangle, t2: Triangle) -> Result<Option<Edge>, GraphError> {
    if t1 == t2 {
        return Err(GraphError::IdenticalTriangles(t1));
    }
    Ok(t1.common_edge(&t2))
}

/// Complete graph on `n` nodes.
pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("complete graph")
}

/// Path `0-1-...-(n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_split_at_cut_vertices() {
        // two triangles sharing node 2, plus a pendant edge
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        assert_eq!(g.blocks(), vec![vec![0, 1, 2], vec![2, 3, 4]]);
        assert!(path(4).blocks().is_empty());
        assert_eq!(complete(5).blocks(), vec![vec![0, 1, 2, 3, 4]]);
    }
    use proptest::prelude::*;

    #[test]
    fn load_dedups_and_symmetrizes() {
        let g = load_graph([(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn load_rejects_self_loop() {
        assert_eq!(load_graph([(0, 0)]), Err(GraphError::SelfLoop(0)));
    }

    #[test]
    fn k4_counts() {
        let g = complete(4);
        assert_eq!((g.n(), g.edge_count()), (4, 6));
        assert_eq!(enumerate_triangles(&g).len(), 4);
    }

    #[test]
    fn path_has_no_triangles() {
        assert!(enumerate_triangles(&path(3)).is_empty());
    }

    #[test]
    fn wheel_w5_triangles() {
        let g = load_graph([(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)]).unwrap();
        let got = enumerate_triangles(&g);
        let want = vec![Triangle::new(0, 1, 2), Triangle::new(0, 1, 4), Triangle::new(0, 2, 3), Triangle::new(0, 3, 4)];
        assert_eq!(got, want);
        assert_eq!(got, brute_force_triangles(&g));
    }

    #[test]
    fn shared_edge_cases() {
        let t = Triangle::new(0, 1, 2);
        assert_eq!(shared_edge(t, Triangle::new(0, 1, 3)), Ok(Some((0, 1))));
        assert_eq!(shared_edge(t, Triangle::new(3, 4, 5)), Ok(None));
        assert_eq!(shared_edge(t, Triangle::new(2, 3, 4)), Ok(None));
        assert_eq!(shared_edge(t, t), Err(GraphError::IdenticalTriangles(t)));
    }

    #[test]
    fn triangle_helpers() {
        let t = Triangle::new(5, 2, 9);
        assert_eq!(t.nodes(), [2, 5, 9]);
        assert_eq!(t.leader(), 2);
        assert_eq!(t.opposite((9, 5)), Some(2));
        assert_eq!(t.side_opposite(5), Some((2, 9)));
        assert_eq!(t.opposite((2, 3)), None);
    }

    fn brute_force_triangles(g: &Graph) -> Vec<Triangle> {
        let n = g.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        out.push(Triangle([a, b, c]));
                    }
                }
            }
        }
        out
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=12).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..40).prop_map(move |pairs| {
                Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn triangles_match_brute_force(g in arb_graph()) {
            let tris = enumerate_triangles(&g);
            prop_assert_eq!(&tris, &brute_force_triangles(&g));
            for t in tris {
                prop_assert!(g.is_triangle(t));
            }
        }

        #[test]
        fn adjacency_is_symmetric(g in arb_graph()) {
            for u in g.nodes() {
                for &v in g.neighbors(u) {
                    prop_assert!(g.has_edge(v, u));
                    prop_assert_ne!(u, v);
                }
            }
        }

        #[test]
        fn shared_edge_symmetric(g in arb_graph()) {
            let tris = enumerate_triangles(&g);
            for (i, &a) in tris.iter().enumerate() {
                for &b in &tris[i + 1..] {
                    prop_assert_eq!(shared_edge(a, b), shared_edge(b, a));
                }
            }
        }
    }
}
