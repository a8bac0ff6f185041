use serde::Serialize;

use super::{circuit_knot, is_triangle_cycle, stream_edges, stream_roles, wheel_hub, ClassError, ClassLabel};
use crate::graph::{edge, Edge, Graph, Triangle};

/// A spanning subgraph of a cycle or circuit together with the stream that
/// witnesses its class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub kind: ClassLabel,
    #[serde(skip)]
    pub graph: Graph,
    pub stream: Vec<Triangle>,
    pub removed: Option<Edge>,
}

/// Spanning-subgraph constructions on the graph spanned by `ts` (node set
/// of `g`):
///
/// * a triangle cycle that is already a wheel is returned as is;
/// * otherwise pick the least node `v` of degree at least 4. If its degree
///   is 4 it lies in three consecutive triangles and the outer side of the
///   middle one is deleted; if larger, the outer side of the first triangle
///   of its fan is deleted. Either way a triangle circuit with knot `v`
///   remains;
/// * for a triangle circuit, the outer side of `T_1` that meets the edge
///   shared by `T_2` and `T_3` is deleted, leaving a triangle bridge on
///   `T_2 .. T_m`.
pub fn spanning_reduction(g: &Graph, ts: &[Triangle]) -> Result<Reduction, ClassError> {
    let union = Graph::from_edges(g.n(), stream_edges(ts))?;
    if is_triangle_cycle(ts) {
        if wheel_hub(&union.induced(&nonisolated(&union)).0).is_some() {
            return Ok(Reduction { kind: ClassLabel::Wheel, graph: union, stream: ts.to_vec(), removed: None });
        }
        return cycle_to_circuit(&union, ts);
    }
    if circuit_knot(ts).is_some() {
        return circuit_to_bridge(&union, ts);
    }
    Err(ClassError::NotCycleOrCircuit)
}

fn nonisolated(g: &Graph) -> Vec<usize> {
    g.nodes().filter(|&v| g.degree(v) > 0).collect()
}

fn outer_side(ts: &[Triangle], i: usize) -> Edge {
    let roles = stream_roles(ts);
    *roles[i].outer_sides.iter().next().expect("cycle triangles have an outer side")
}

fn cycle_to_circuit(union: &Graph, ts: &[Triangle]) -> Result<Reduction, ClassError> {
    let m = ts.len();
    let v = union.nodes().find(|&v| union.degree(v) >= 4).ok_or(ClassError::NotCycleOrCircuit)?;
    let has = |i: usize| ts[i % m].contains(v);
    // first triangle of v's fan: contains v, its predecessor does not
    let start = (0..m).find(|&i| has(i) && !has(i + m - 1)).ok_or(ClassError::NotCycleOrCircuit)?;
    let target = if union.degree(v) == 4 { (start + 1) % m } else { start };
    let e = outer_side(ts, target);
    let stream: Vec<Triangle> = (1..m).map(|k| ts[(target + k) % m]).collect();
    let graph = union.without_edge(e);
    Ok(Reduction { kind: ClassLabel::Circuit, graph, stream, removed: Some(e) })
}

fn circuit_to_bridge(union: &Graph, ts: &[Triangle]) -> Result<Reduction, ClassError> {
    let knot = circuit_knot(ts).ok_or(ClassError::NotCycleOrCircuit)?;
    if ts.len() < 3 {
        return Err(ClassError::NotCycleOrCircuit);
    }
    let f = ts[1].common_edge(&ts[2]).ok_or(ClassError::NotCycleOrCircuit)?;
    let x = ts[0].nodes().into_iter().find(|&u| u != knot && (u == f.0 || u == f.1)).ok_or(ClassError::NotCycleOrCircuit)?;
    let e = edge(knot, x);
    Ok(Reduction { kind: ClassLabel::Bridge, graph: union.without_edge(e), stream: ts[1..].to_vec(), removed: Some(e) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::*;

    fn assert_spanning(sub: &Graph, of: &Graph) {
        assert_eq!(sub.n(), of.n());
        assert!(sub.edges().all(|(u, v)| of.has_edge(u, v)));
    }

    #[test]
    fn wheel_is_its_own_spanning_wheel() {
        let (g, s) = gen_triangle_cycle(5).unwrap();
        let r = spanning_reduction(&g, s.triangles()).unwrap();
        assert_eq!(r.kind, ClassLabel::Wheel);
        assert_eq!(r.graph, g);
    }

    #[test]
    fn degree_four_cycle_gives_circuit() {
        for n in 7..12 {
            let (g, s) = gen_cycle_square(n).unwrap();
            let r = spanning_reduction(&g, s.triangles()).unwrap();
            assert_eq!(r.kind, ClassLabel::Circuit);
            assert_spanning(&r.graph, &g);
            assert_eq!(r.graph.edge_count(), g.edge_count() - 1);
            assert_eq!(circuit_knot(&r.stream), Some(0));
        }
    }

    #[test]
    fn wide_fan_cycle_gives_circuit() {
        // node 0 has degree 5 and sits in a fan of four triangles
        let t = Triangle::new;
        let s = [
            t(0, 1, 2),
            t(0, 2, 3),
            t(0, 3, 4),
            t(0, 4, 5),
            t(4, 5, 6),
            t(5, 6, 7),
            t(6, 7, 1),
            t(7, 1, 2),
        ];
        assert!(is_triangle_cycle(&s));
        let g = Graph::from_edges(0, stream_edges(&s)).unwrap();
        let r = spanning_reduction(&g, &s).unwrap();
        assert_eq!(r.kind, ClassLabel::Circuit);
        assert!(circuit_knot(&r.stream).is_some());
        assert_spanning(&r.graph, &g);
    }

    #[test]
    fn circuit_gives_bridge() {
        for m in 4..10 {
            let (g, s, knot) = gen_triangle_circuit(m).unwrap();
            let r = spanning_reduction(&g, s.triangles()).unwrap();
            assert_eq!(r.kind, ClassLabel::Bridge);
            assert_spanning(&r.graph, &g);
            let e = r.removed.unwrap();
            assert!(e.0 == knot || e.1 == knot);
            assert!(bridging_edge(&r.graph, &r.stream).is_some());
        }
    }

    #[test]
    fn chain_is_rejected() {
        let (g, s) = gen_triangle_chain(4).unwrap();
        assert_eq!(spanning_reduction(&g, s.triangles()), Err(ClassError::NotCycleOrCircuit));
    }
}
