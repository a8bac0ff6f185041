//! Message trace of a small run: one line per delivered message as
//! `clock kind src dst payload`, plus per-node receipt counts.

use trianglebar::graph::{complete, Triangle};
use trianglebar::sim::{run_full, SimConfig};

fn main() {
    let g = complete(4);
    let config = SimConfig { scheduler_seed: 7, trace: true, ..SimConfig::default() };
    let (report, trace) = run_full(&g, Triangle::new(0, 1, 2), config).unwrap();
    for line in trace.iter().take(25) {
        println!("{line}");
    }
    println!("... {} lines in total", trace.len());
    for v in g.nodes() {
        println!("node {v}: degree {}, triangle-discovery receipts {}", g.degree(v), report.phase1_receipts[v]);
    }
}
