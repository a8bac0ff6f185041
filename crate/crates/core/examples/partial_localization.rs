//! A bar with a triangle chain grafted on: only the bar is marked, and the
//! marked set does not depend on the message interleaving.

use trianglebar::classes::{generate, graft_chain};
use trianglebar::sim::{run_full, stitch_closure, SimConfig, Simulation};

fn main() {
    let base = generate("circuit:5").unwrap();
    let g = graft_chain(&base.graph, (0, 1), 3).expect("edge 0-1 exists");
    let seed = base.seed.unwrap();

    for s in 0..5 {
        let config = SimConfig { scheduler_seed: s, ..SimConfig::default() };
        let (report, _) = run_full(&g, seed, config).unwrap();
        println!("scheduler seed {s}: marked {:?} of {} nodes", report.localizable_nodes, g.n());
    }

    let mut sim = Simulation::new(&g, seed, SimConfig::default()).unwrap();
    sim.run_phase1().unwrap();
    let (_, bars) = sim.run_phase2().unwrap();
    println!("elementary bars found: {}", bars.len());
    println!("centralized closure: {:?}", stitch_closure(&g, seed, &bars));
}
