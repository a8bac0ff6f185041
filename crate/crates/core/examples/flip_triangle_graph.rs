//! Flip-triangle graph, its BFS tree from a seed triangle and the base
//! cycles of the non-tree edges.

use trianglebar::classes::generate;
use trianglebar::ftg::{base_cycles, build_ftg, check_prop1, check_prop2, ftt, ftt_json};

fn main() {
    let g = generate("stitch:cycle:5+circuit:5").expect("valid spec");
    let seed = g.seed.expect("stitched bars carry a seed");
    let ftg = build_ftg(&g.graph);
    println!("{} triangles, {} flips", ftg.len(), ftg.edge_count());

    let tree = ftt(&ftg, seed).expect("seed is a triangle");
    let cycles = base_cycles(&ftg, &tree);
    println!("tree spans {} triangles, {} base cycles", tree.len(), cycles.cycles.len());
    println!("{}", serde_json::to_string_pretty(&ftt_json(&tree, &cycles)).unwrap());

    let cycle = generate("cycle:6").unwrap();
    let stream = cycle.stream.unwrap();
    println!("cycle:6 stream vs induced FTG cycle agree: {}", check_prop1(&cycle.graph, &stream));
    let tree_gen = generate("tree:fig8").unwrap();
    println!("tree:fig8 stream vs FTG tree agree: {}", check_prop2(&tree_gen.graph, &tree_gen.stream.unwrap()));
    print!("{}", build_ftg(&generate("cycle:4").unwrap().graph).to_dot());
}
