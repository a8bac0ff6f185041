//! Graphs that no trilateration ordering localizes but the bar protocol
//! does.

use trianglebar::classes::{generate, has_trilateration_ordering};
use trianglebar::rigidity::is_globally_rigid;
use trianglebar::sim::{run_full, SimConfig};

fn main() {
    for spec in ["cycle:6", "circuit:6", "bridge:5", "net:fig8b"] {
        let g = generate(spec).unwrap();
        let seed = g.seed.unwrap();
        let any_trilat = g.graph.triangles().into_iter().any(|t| has_trilateration_ordering(&g.graph, t).unwrap());
        let (report, _) = run_full(&g.graph, seed, SimConfig::default()).unwrap();
        println!(
            "{spec:10} trilateration possible: {any_trilat:5}  marked {}/{}  globally rigid: {}",
            report.localizable_nodes.len(),
            g.graph.n(),
            is_globally_rigid(&g.graph).globally_rigid
        );
    }
}
