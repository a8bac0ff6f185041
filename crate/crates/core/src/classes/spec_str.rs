//! Generator spec strings such as `cycle:8`, `notch:tree=fig6` or
//! `trilat:n=10,seed=1`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graph::{complete, path, Graph, NodeId, Triangle};

/// A generated graph with whatever witness its generator produced.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub label: ClassLabel,
    /// Natural seed triangle: `T_1` of the generator stream, or the first
    /// triangle of the ordering.
    pub seed: Option<Triangle>,
    pub stream: Option<Vec<Triangle>>,
    pub ordering: Option<Vec<NodeId>>,
    pub apex: Option<NodeId>,
}

impl Generated {
    fn new(graph: Graph, label: ClassLabel) -> Self {
        let seed = graph.triangles().first().copied();
        Generated { graph, label, seed, stream: None, ordering: None, apex: None }
    }

    fn with_stream(mut self, ts: Vec<Triangle>) -> Self {
        self.seed = ts.first().copied();
        self.stream = Some(ts);
        self
    }

    fn with_ordering(mut self, ordering: Vec<NodeId>) -> Self {
        self.seed = Some(Triangle::new(ordering[0], ordering[1], ordering[2]));
        self.ordering = Some(ordering);
        self
    }
}

struct Args<'a> {
    spec: &'a str,
    positional: Option<&'a str>,
    named: HashMap<&'a str, &'a str>,
}

impl<'a> Args<'a> {
    fn parse(spec: &'a str, body: &'a str) -> Self {
        let mut positional = None;
        let mut named = HashMap::new();
        for part in body.split(',').filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some((k, v)) => {
                    named.insert(k, v);
                }
                None => positional = Some(part),
            }
        }
        Args { spec, positional, named }
    }

    fn err(&self, msg: impl Into<String>) -> ClassError {
        ClassError::Spec { spec: self.spec.to_string(), msg: msg.into() }
    }

    fn num(&self, key: &str) -> Result<usize, ClassError> {
        let raw = self.named.get(key).copied().or(if key == "n" || key == "m" { self.positional } else { None });
        let raw = raw.ok_or_else(|| self.err(format!("missing `{key}`")))?;
        raw.parse().map_err(|_| self.err(format!("`{key}` is not a number: {raw}")))
    }

    fn seed(&self) -> Result<u64, ClassError> {
        match self.named.get("seed") {
            Some(raw) => raw.parse().map_err(|_| self.err(format!("bad seed {raw}"))),
            None => Ok(0),
        }
    }
}

fn tree_plan(args: &Args, raw: &str) -> Result<TreePlan, ClassError> {
    let (name, val) = raw.split_once('=').unwrap_or((raw, ""));
    let size = || val.parse::<usize>().map_err(|_| args.err(format!("tree `{raw}` needs a size")));
    match name {
        "fig4" => Ok(TreePlan::fig4()),
        "fig6" => Ok(TreePlan::fig6()),
        "fig8" => Ok(TreePlan::fig8()),
        "linear" => Ok(TreePlan::linear(size()?)),
        "star" => Ok(TreePlan::star(size()?)),
        "random" => Ok(TreePlan::random(size()?, args.seed()?)),
        _ => Err(args.err(format!("unknown tree `{raw}`"))),
    }
}

/// Parses and runs a generator spec. Grammar: `kind:args` where args are
/// comma separated, either `key=value` or one bare positional size.
///
/// | kind | args |
/// |---|---|
/// | `wheel`, `chain`, `cycle`, `square`, `circuit`, `bridge`, `complete`, `path` | size |
/// | `tree` | `fig4`, `fig6`, `fig8`, `linear=M`, `star=M`, `random=M[,seed=S]` |
/// | `notch` | `tree=<tree>` |
/// | `net` | `fig8a`, `fig8b`, or `m=M,ext=K[,seed=S]` |
/// | `trilat` | `n=N[,seed=S]` |
/// | `wext` | `sizes=5/5/4[,shared=3][,seed=S]` |
/// | `random` | `n=N,p=P[,seed=S]` (Erdos-Renyi) |
/// | `stitch` | parts joined by `+`, e.g. `stitch:cycle:6+bridge:5[;seed=S]` |
pub fn generate(spec: &str) -> Result<Generated, ClassError> {
    let (kind, body) = spec.split_once(':').unwrap_or((spec, ""));
    if kind == "stitch" {
        return stitch(spec, body);
    }
    let args = Args::parse(spec, body);
    let g = match kind {
        "wheel" => Generated::new(gen_wheel(args.num("n")?)?, ClassLabel::Wheel),
        "chain" => {
            let (g, s) = gen_triangle_chain(args.num("m")?)?;
            Generated::new(g, ClassLabel::Chain).with_stream(s.triangles().to_vec())
        }
        "cycle" => {
            let (g, s) = gen_triangle_cycle(args.num("m")?)?;
            Generated::new(g, ClassLabel::Cycle).with_stream(s.triangles().to_vec())
        }
        "square" => {
            let (g, s) = gen_cycle_square(args.num("n")?)?;
            Generated::new(g, ClassLabel::Cycle).with_stream(s.triangles().to_vec())
        }
        "circuit" => {
            let (g, s, knot) = gen_triangle_circuit(args.num("m")?)?;
            let mut out = Generated::new(g, ClassLabel::Circuit).with_stream(s.triangles().to_vec());
            out.apex = Some(knot);
            out
        }
        "bridge" => {
            let (g, s, _) = gen_triangle_bridge(args.num("m")?)?;
            Generated::new(g, ClassLabel::Bridge).with_stream(s.triangles().to_vec())
        }
        "complete" => Generated::new(complete(args.num("n")?), ClassLabel::None),
        "path" => Generated::new(path(args.num("n")?), ClassLabel::None),
        "tree" => {
            let raw = body.split(",seed").next().unwrap_or(body);
            let (g, ts) = gen_triangle_tree(&tree_plan(&args, raw)?)?;
            Generated::new(g, ClassLabel::Tree).with_stream(ts)
        }
        "notch" => {
            let raw = body.strip_prefix("tree=").ok_or_else(|| args.err("expected `tree=<plan>`"))?;
            let raw = raw.split(",seed").next().unwrap_or(raw);
            let (g, ts, apex) = gen_triangle_notch(&tree_plan(&args, raw)?)?;
            let mut out = Generated::new(g, ClassLabel::Notch).with_stream(ts);
            out.apex = Some(apex);
            out
        }
        "net" => {
            let net = match args.positional {
                Some("fig8b") => gen_triangle_net(&TreePlan::fig8(), &ExtensionPlan::fig8b())?,
                Some("fig8a") => gen_triangle_net(&TreePlan::fig8(), &ExtensionPlan::fig8a())?,
                Some(other) => return Err(args.err(format!("unknown net `{other}`"))),
                None => gen_random_net(args.num("m")?, args.num("ext")?, args.seed()?)?,
            };
            let mut out = Generated::new(net.graph, ClassLabel::Net).with_stream(net.tree);
            out.apex = Some(net.apex);
            out
        }
        "trilat" => {
            let (g, ord) = gen_trilateration(args.num("n")?, args.seed()?)?;
            Generated::new(g, ClassLabel::Trilateration).with_ordering(ord)
        }
        "wext" => {
            let sizes = args.named.get("sizes").ok_or_else(|| args.err("missing `sizes`"))?;
            let shared = match args.named.get("shared") {
                Some(_) => args.num("shared")?,
                None => 3,
            };
            let plan = sizes
                .split('/')
                .enumerate()
                .map(|(i, s)| {
                    let size = s.parse().map_err(|_| args.err(format!("bad wheel size {s}")))?;
                    Ok(WheelSpec { size, shared: if i == 0 { 0 } else { shared } })
                })
                .collect::<Result<Vec<_>, ClassError>>()?;
            let (g, ord, wheels) = gen_wheel_extension(&plan, args.seed()?)?;
            let mut out = Generated::new(g, ClassLabel::WheelExtension).with_ordering(ord);
            let w = &wheels[0];
            out.seed = Some(Triangle::new(w.hub, w.rim[0], w.rim[1]));
            out
        }
        "random" => {
            let n = args.num("n")?;
            let p: f64 = args
                .named
                .get("p")
                .ok_or_else(|| args.err("missing `p`"))?
                .parse()
                .map_err(|_| args.err("bad `p`"))?;
            Generated::new(random_graph(n, p, args.seed()?), ClassLabel::None)
        }
        _ => return Err(args.err(format!("unknown generator `{kind}`"))),
    };
    Ok(g)
}

fn stitch(spec: &str, body: &str) -> Result<Generated, ClassError> {
    let (parts, seed) = match body.rsplit_once(";seed=") {
        Some((p, s)) => {
            let seed = s.parse().map_err(|_| ClassError::Spec { spec: spec.into(), msg: format!("bad seed {s}") })?;
            (p, seed)
        }
        None => (body, 0),
    };
    let parts = parts.split('+').map(generate).collect::<Result<Vec<_>, _>>()?;
    let bar = gen_stitched(&parts, seed)?;
    let mut out = Generated::new(bar.graph, ClassLabel::None);
    out.seed = Some(bar.seed);
    Ok(out)
}

/// Erdos-Renyi graph `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple by construction")
}
