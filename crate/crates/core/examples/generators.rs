//! Every graph family the generators know, with the recognizer verdict on
//! the witness stream each one returns.

use trianglebar::classes::{
    circuit_knot, find_forbidden_stream, generate, is_triangle_chain, is_triangle_cycle, is_triangle_tree,
};

fn main() {
    let specs = [
        "chain:4",
        "cycle:6",
        "square:7",
        "circuit:5",
        "bridge:4",
        "tree:fig6",
        "notch:tree=fig6",
        "net:fig8b",
        "net:m=12,ext=2,seed=3",
        "trilat:n=10,seed=1",
        "wext:sizes=5/6/4,shared=3,seed=2",
        "stitch:cycle:5+bridge:4",
    ];
    for spec in specs {
        let g = generate(spec).expect("valid spec");
        print!("{spec:32} {:?}: {} nodes, {} edges", g.label, g.graph.n(), g.graph.edge_count());
        if let Some(ts) = &g.stream {
            print!(
                " | chain {} cycle {} circuit knot {:?} tree {}",
                is_triangle_chain(ts),
                is_triangle_cycle(ts),
                circuit_knot(ts),
                is_triangle_tree(ts)
            );
        }
        println!();
    }

    // A bare triangle chain contains no cycle, circuit or bridge stream.
    let chain = generate("chain:5").unwrap().graph;
    println!("forbidden stream in chain:5 -> {:?}", find_forbidden_stream(&chain));
    let bridge = generate("bridge:5").unwrap().graph;
    println!("forbidden stream in bridge:5 -> {:?}", find_forbidden_stream(&bridge).map(|(k, _)| k));

    match generate("cycle:2") {
        Err(e) => println!("cycle:2 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
