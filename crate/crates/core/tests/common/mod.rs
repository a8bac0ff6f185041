//! Instance corpora shared by the integration tests.

#![allow(dead_code)]

use trianglebar::classes::{generate, graft_chain, random_graph, Generated};
use trianglebar::graph::{Graph, Triangle};

pub struct Instance {
    pub name: String,
    pub family: &'static str,
    pub graph: Graph,
    pub seed: Triangle,
}

impl Instance {
    fn from_spec(family: &'static str, spec: &str) -> Option<Self> {
        let g: Generated = generate(spec).ok()?;
        Some(Instance { name: spec.to_string(), family, seed: g.seed?, graph: g.graph })
    }
}

/// Takes up to `want` instances from `specs`, skipping generator plans that
/// cannot be realized (random tree shapes without enough leaves).
fn take(out: &mut Vec<Instance>, family: &'static str, want: usize, specs: impl IntoIterator<Item = String>) {
    let start = out.len();
    for spec in specs {
        if out.len() - start == want {
            return;
        }
        if let Some(inst) = Instance::from_spec(family, &spec) {
            out.push(inst);
        }
    }
    assert_eq!(out.len() - start, want, "not enough {family} instances");
}

/// 200 localizable instances: elementary bars, stitched bars,
/// trilateration graphs and wheel extensions. `salt` shifts every random
/// generator seed, so salt 0 is the acceptance corpus and other salts give
/// disjoint calibration corpora.
pub fn positive_corpus(salt: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    take(&mut out, "cycle", 12, (3..=10).map(|m| format!("cycle:{m}")).chain((7..=10).map(|n| format!("square:{n}"))));
    take(&mut out, "circuit", 5, (4..=8).map(|m| format!("circuit:{m}")));
    take(&mut out, "bridge", 7, (2..=8).map(|m| format!("bridge:{m}")));
    let notch_trees = ["fig4", "fig6", "fig8", "star=3", "star=4"].map(String::from);
    let random_notches = (0..200u64).flat_map(|s| (5..=9).map(move |m| format!("random={m},seed={}", s + salt * 1000)));
    take(&mut out, "notch", 16, notch_trees.into_iter().chain(random_notches).map(|t| format!("notch:tree={t}")));
    let nets = (0..500u64).flat_map(|s| {
        (10..=14).flat_map(move |m| (2..=3).map(move |ext| format!("net:m={m},ext={ext},seed={}", s + salt * 1000)))
    });
    take(&mut out, "net", 40, std::iter::once("net:fig8b".to_string()).chain(nets));
    let parts = ["cycle:5", "circuit:5", "bridge:4", "cycle:4", "net:fig8b", "bridge:6", "circuit:6"];
    let stitched = (0..40u64).map(|i| {
        let k = 2 + (i % 2) as usize;
        let chosen: Vec<&str> = (0..k).map(|j| parts[(i as usize * 3 + j * 5) % parts.len()]).collect();
        format!("stitch:{};seed={}", chosen.join("+"), i + salt * 1000)
    });
    take(&mut out, "stitched", 40, stitched);
    take(&mut out, "trilateration", 40, (0..40u64).map(|i| format!("trilat:n={},seed={}", 6 + i % 15, i + salt * 1000)));
    let wext = (0..40u64).map(|i| {
        let sizes = ["5/5", "5/6/4", "6/4/5", "4/4/4", "7/5", "5/4/6"][i as usize % 6];
        format!("wext:sizes={sizes},shared=3,seed={}", i + salt * 1000)
    });
    take(&mut out, "wext", 40, wext);
    out
}

/// 50 instances that are not triangle bars as a whole: triangle chains,
/// chains grafted onto a bar along one edge, and triangle trees.
pub fn negative_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    take(&mut out, "chain", 14, (2..=15).map(|m| format!("chain:{m}")));
    let bases = ["cycle:5", "circuit:5", "bridge:4", "net:fig8b", "cycle:7"];
    for i in 0..20 {
        let base = generate(bases[i % bases.len()]).unwrap();
        let edges: Vec<_> = base.graph.edges().collect();
        let at = edges[(i * 7) % edges.len()];
        let m = 2 + i % 4;
        out.push(Instance {
            name: format!("{} + chain:{m} at {at:?}", bases[i % bases.len()]),
            family: "grafted",
            graph: graft_chain(&base.graph, at, m).unwrap(),
            seed: base.seed.unwrap(),
        });
    }
    let fixed = ["fig4", "fig6", "fig8", "linear=4", "linear=7", "star=3", "star=4"].map(String::from);
    let random = (0..40u64).map(|s| format!("random={},seed={s}", 3 + s % 6));
    take(&mut out, "tree", 16, fixed.into_iter().chain(random).map(|t| format!("tree:{t}")));
    out
}

/// Erdos-Renyi graphs with at least one triangle, seeded at their least
/// triangle.
pub fn random_instances(count: usize, n: usize, p: f64, salt: u64) -> Vec<Instance> {
    (salt..)
        .map(|s| (s, random_graph(n, p, s)))
        .filter_map(|(s, g)| {
            let seed = *g.triangles().first()?;
            Some(Instance { name: format!("G({n},{p}) seed {s}"), family: "random", graph: g, seed })
        })
        .take(count)
        .collect()
}
