//! Flip-triangle graphs: one vertex per triangle of the host graph, an edge
//! whenever two triangles share a side. Spanning trees of its components
//! and the fundamental cycles they induce are the centralized reference
//! for what the distributed protocol builds.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph, Triangle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FtgError {
    #[error("triangle {0} is not a vertex of the flip-triangle graph")]
    RootAbsent(Triangle),
}

/// The flip-triangle graph of a host graph. Vertices are stored in
/// canonical triangle order, so a vertex index is also its rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipTriangleGraph {
    vertices: Vec<Triangle>,
    index: HashMap<Triangle, usize>,
    adj: Vec<Vec<usize>>,
}

impl FlipTriangleGraph {
    pub fn vertices(&self) -> &[Triangle] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, t: Triangle) -> Option<usize> {
        self.index.get(&t).copied()
    }

    pub fn triangle(&self, i: usize) -> Triangle {
        self.vertices[i]
    }

    /// Neighbor indices, ascending.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn neighbor_triangles(&self, t: Triangle) -> Vec<Triangle> {
        self.index_of(t).map(|i| self.adj[i].iter().map(|&j| self.vertices[j]).collect()).unwrap_or_default()
    }

    pub fn adjacent(&self, a: Triangle, b: Triangle) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as canonical triangle pairs, sorted.
    pub fn edges(&self) -> Vec<(Triangle, Triangle)> {
        let mut out = Vec::new();
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((self.vertices[i], self.vertices[j]));
                }
            }
        }
        out
    }

    /// Vertex indices of the component containing `i`, ascending.
    pub fn component_of(&self, i: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[i] = true;
        let mut queue = VecDeque::from([i]);
        let mut out = vec![i];
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                    queue.push_back(v);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// DOT rendering with `(a,b,c)` vertex labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph FTG {\n");
        for t in &self.vertices {
            let _ = writeln!(out, "  \"{t}\";");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}

impl FlipTriangleGraph {
    /// Assembles an FTG from per-triangle neighbor lists, symmetrizing
    /// them. Neighbors that are not themselves keys are added as vertices.
    pub fn from_adjacency(lists: &BTreeMap<Triangle, std::collections::BTreeSet<Triangle>>) -> Self {
        let mut all: std::collections::BTreeSet<Triangle> = lists.keys().copied().collect();
        all.extend(lists.values().flatten().copied());
        let vertices: Vec<Triangle> = all.into_iter().collect();
        let index: HashMap<Triangle, usize> = vertices.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for (t, nbrs) in lists {
            for u in nbrs {
                adj[index[t]].push(index[u]);
                adj[index[u]].push(index[t]);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        FlipTriangleGraph { vertices, index, adj }
    }
}

/// Builds the flip-triangle graph of `g`.
pub fn build_ftg(g: &Graph) -> FlipTriangleGraph {
    let vertices = g.triangles();
    let index: HashMap<Triangle, usize> = vertices.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (i, t) in vertices.iter().enumerate() {
        for e in t.edges() {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); vertices.len()];
    for group in by_edge.values() {
        for (k, &i) in group.iter().enumerate() {
            for &j in &group[k + 1..] {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    FlipTriangleGraph { vertices, index, adj }
}

/// Breadth-first spanning tree of one FTG component. Each non-root vertex's
/// parent is its least neighbor (canonical order) on the previous layer,
/// which makes the tree unique for a given root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipTriangleTree {
    pub root: Triangle,
    pub parent: BTreeMap<Triangle, Triangle>,
    pub children: BTreeMap<Triangle, Vec<Triangle>>,
    pub depth: BTreeMap<Triangle, usize>,
}

impl FlipTriangleTree {
    pub fn contains(&self, t: Triangle) -> bool {
        self.depth.contains_key(&t)
    }

    pub fn len(&self) -> usize {
        self.depth.len()
    }

    pub fn is_empty(&self) -> bool {
        self.depth.is_empty()
    }

    pub fn is_tree_edge(&self, a: Triangle, b: Triangle) -> bool {
        self.parent.get(&a) == Some(&b) || self.parent.get(&b) == Some(&a)
    }

    /// Path from the root down to `t`, inclusive.
    pub fn root_path(&self, t: Triangle) -> Vec<Triangle> {
        let mut path = vec![t];
        let mut cur = t;
        while let Some(&p) = self.parent.get(&cur) {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Tree path from `a` to `b`, both inclusive.
    pub fn path_between(&self, a: Triangle, b: Triangle) -> Vec<Triangle> {
        tree_path(&self.root_path(a), &self.root_path(b))
    }
}

/// Joins two root paths into the tree path between their endpoints.
pub fn tree_path(root_a: &[Triangle], root_b: &[Triangle]) -> Vec<Triangle> {
    let common = root_a.iter().zip(root_b).take_while(|(x, y)| x == y).count();
    assert!(common > 0, "root paths must share the root");
    let mut path: Vec<Triangle> = root_a[common - 1..].iter().rev().copied().collect();
    path.extend_from_slice(&root_b[common..]);
    path
}

/// Spanning tree of the component of `root`.
pub fn ftt(ftg: &FlipTriangleGraph, root: Triangle) -> Result<FlipTriangleTree, FtgError> {
    let r = ftg.index_of(root).ok_or(FtgError::RootAbsent(root))?;
    let mut depth = vec![usize::MAX; ftg.len()];
    depth[r] = 0;
    let mut queue = VecDeque::from([r]);
    let mut order = vec![r];
    while let Some(u) = queue.pop_front() {
        for &v in ftg.neighbors(u) {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                queue.push_back(v);
                order.push(v);
            }
        }
    }
    let mut tree = FlipTriangleTree {
        root,
        parent: BTreeMap::new(),
        children: BTreeMap::new(),
        depth: BTreeMap::new(),
    };
    for &v in &order {
        let t = ftg.triangle(v);
        tree.depth.insert(t, depth[v]);
        tree.children.entry(t).or_default();
        if v == r {
            continue;
        }
        // neighbors are ascending, so the first hit is the least one
        let p = *ftg.neighbors(v).iter().find(|&&u| depth[u] + 1 == depth[v]).expect("bfs parent");
        let pt = ftg.triangle(p);
        tree.parent.insert(t, pt);
        tree.children.entry(pt).or_default().push(t);
    }
    for list in tree.children.values_mut() {
        list.sort();
    }
    Ok(tree)
}

/// One fundamental cycle: the non-tree edge and the triangles of the
/// cycle it closes, starting at the edge's first endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseCycle {
    pub closing: (Triangle, Triangle),
    pub cycle: Vec<Triangle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct BaseCycleSet {
    pub cycles: Vec<BaseCycle>,
}

/// One fundamental cycle per non-tree FTG edge inside the tree's component.
pub fn base_cycles(ftg: &FlipTriangleGraph, tree: &FlipTriangleTree) -> BaseCycleSet {
    let mut cycles = Vec::new();
    for (a, b) in ftg.edges() {
        if !tree.contains(a) || tree.is_tree_edge(a, b) {
            continue;
        }
        cycles.push(BaseCycle { closing: (a, b), cycle: tree.path_between(a, b) });
    }
    BaseCycleSet { cycles }
}

#[derive(Serialize)]
struct FttDoc<'a> {
    root: Triangle,
    parent: Vec<(Triangle, Triangle)>,
    base_cycles: &'a [BaseCycle],
}

/// JSON export of a tree's parent map together with its base cycles.
pub fn ftt_json(tree: &FlipTriangleTree, cycles: &BaseCycleSet) -> serde_json::Value {
    let doc = FttDoc {
        root: tree.root,
        parent: tree.parent.iter().map(|(&c, &p)| (c, p)).collect(),
        base_cycles: &cycles.cycles,
    };
    serde_json::to_value(doc).expect("serializable")
}

/// Whether `seq` induces exactly the cycle `seq[0] - seq[1] - ... - seq[0]`
/// in the FTG (consecutive pairs adjacent, no other adjacencies).
pub fn is_induced_cycle(ftg: &FlipTriangleGraph, seq: &[Triangle]) -> bool {
    let n = seq.len();
    if n < 3 || !distinct(seq) {
        return false;
    }
    for i in 0..n {
        for j in i + 1..n {
            let consecutive = j == i + 1 || (i == 0 && j == n - 1);
            if ftg.adjacent(seq[i], seq[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Whether the FTG subgraph induced by `seq` is a tree.
pub fn is_induced_tree(ftg: &FlipTriangleGraph, seq: &[Triangle]) -> bool {
    if seq.is_empty() || !distinct(seq) || seq.iter().any(|&t| ftg.index_of(t).is_none()) {
        return false;
    }
    let mut edges = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if ftg.adjacent(seq[i], seq[j]) {
                edges += 1;
            }
        }
    }
    if edges + 1 != seq.len() {
        return false;
    }
    // connected check
    let mut seen = vec![false; seq.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..seq.len() {
            if !seen[j] && ftg.adjacent(seq[i], seq[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn distinct(seq: &[Triangle]) -> bool {
    let mut v = seq.to_vec();
    v.sort();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Triangle cycles in the host graph correspond to cycles in the FTG:
/// true when "`stream` is a triangle cycle" and "its FTG image is an
/// induced cycle of the same length" agree on this instance.
pub fn check_prop1(g: &Graph, stream: &[Triangle]) -> bool {
    let ftg = build_ftg(g);
    crate::classes::is_triangle_cycle(stream) == is_induced_cycle(&ftg, stream)
}

/// True when "`stream` is a triangle tree" and "its FTG image is a tree"
/// agree. The stream order must add each triangle next to an earlier one
/// for the tree reading of the FTG side, matching the sequential
/// definition of a triangle tree.
pub fn check_prop2(g: &Graph, stream: &[Triangle]) -> bool {
    let ftg = build_ftg(g);
    let tree_side = is_induced_tree(&ftg, stream) && prefix_connected(&ftg, stream);
    crate::classes::is_triangle_tree(stream) == tree_side
}

/// True when "`stream` is a maximal triangle tree of `g`" and "its FTG
/// image is a maximal induced tree of the FTG" agree.
pub fn check_prop3(g: &Graph, stream: &[Triangle]) -> bool {
    let ftg = build_ftg(g);
    let host_side = crate::classes::is_triangle_tree(stream) && {
        let all = g.triangles();
        !all.iter().filter(|t| !stream.contains(t)).any(|&t| {
            let mut ext = stream.to_vec();
            ext.push(t);
            crate::classes::is_triangle_tree(&ext)
        })
    };
    let ftg_side = is_induced_tree(&ftg, stream) && {
        !ftg.vertices().iter().filter(|t| !stream.contains(t)).any(|&t| {
            let mut ext = stream.to_vec();
            ext.push(t);
            is_induced_tree(&ftg, &ext)
        })
    };
    host_side == ftg_side
}

fn prefix_connected(ftg: &FlipTriangleGraph, seq: &[Triangle]) -> bool {
    (1..seq.len()).all(|i| seq[..i].iter().any(|&t| ftg.adjacent(t, seq[i])))
}
