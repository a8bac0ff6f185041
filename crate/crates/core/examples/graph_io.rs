//! Load a graph from an edge list, list its triangles and export it.

use trianglebar::graph::{parse_edge_list, to_dot, to_json, Triangle};

const HOUSE: &str = "
# a square with a roof and one diagonal
a b
b c
c d
d a
a c
c roof
d roof
";

fn main() {
    let (g, labels) = parse_edge_list(HOUSE).expect("well-formed edge list");
    let labels = labels.expect("non-numeric tokens get a label table");
    println!("{} nodes, {} edges", g.n(), g.edge_count());
    for t in g.triangles() {
        let names: Vec<&str> = t.nodes().iter().map(|&v| labels[v].as_str()).collect();
        println!("triangle {t} = {names:?}, leader {}", labels[t.leader()]);
    }
    let t1 = g.triangles()[0];
    let t2: Triangle = g.triangles()[1];
    println!("{t1} and {t2} share {:?}", t1.common_edge(&t2));
    println!("{}", serde_json::to_string(&to_json(&g)).unwrap());
    print!("{}", to_dot(&g));
}
