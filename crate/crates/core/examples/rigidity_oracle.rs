//! Rigidity verdicts from the pebble game and 3-connectivity, checked
//! against the randomized rigidity-matrix rank.

use trianglebar::classes::{generate, random_graph};
use trianglebar::graph::complete;
use trianglebar::rigidity::{is_globally_rigid, rank_oracle_rigid, rigidity_rank, PebbleGame};

fn main() {
    for spec in ["wheel:6", "chain:4", "bridge:5", "net:fig8b", "trilat:n=12,seed=4"] {
        let g = generate(spec).unwrap().graph;
        let v = is_globally_rigid(&g);
        println!("{spec:20} rank {:2}/{:2} {v:?}", rigidity_rank(&g), 2 * g.n() - 3);
    }

    // K4 minus an edge is rigid but not redundantly so.
    let g = complete(4).without_edge((0, 1));
    println!("K4-e: {:?}", is_globally_rigid(&g));

    let mut game = PebbleGame::new(4);
    for (u, v) in complete(4).edges() {
        let ok = game.insert(u, v);
        println!("insert {u}-{v}: {}", if ok { "independent" } else { "redundant" });
    }

    let mut disagreements = 0;
    for seed in 0..100 {
        let g = random_graph(9, 0.45, seed);
        let pebble = rigidity_rank(&g) == 2 * g.n() - 3;
        disagreements += usize::from(pebble != rank_oracle_rigid(&g, seed, 2));
    }
    println!("pebble game vs matrix rank on 100 random graphs: {disagreements} disagreements");
}
