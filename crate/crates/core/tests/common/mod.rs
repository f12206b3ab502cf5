//! Shared fixtures and independent oracles for the integration tests.
//!
//! Nothing here calls into the transform or attribute code: the oracles work
//! from raw edge-index lists and weight vectors.

#![allow(dead_code)]

use std::path::PathBuf;

use pathset::{DirectedGraph, EdgePropertyVector, Network, PathSet, PropertyDomain, SetFunctionTable};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const PROPERTIES: [&str; 4] = ["delay", "cost", "capacity", "fault_probability"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

pub fn fig2() -> Network {
    Network::load(fixture("fig2.json")).expect("fig2 fixture loads")
}

pub fn fig3() -> Network {
    Network::load(fixture("fig3_capacity.json")).expect("capacity fixture loads")
}

/// A generated graph with a path set, plus the raw data the oracles use.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: DirectedGraph,
    pub paths: PathSet,
    /// Edge indices of each path.
    pub raw: Vec<Vec<usize>>,
    pub delay: Vec<f64>,
    pub cost: Vec<f64>,
    pub capacity: Vec<f64>,
    pub fault: Vec<f64>,
}

impl Instance {
    pub fn weights(&self, property: &str) -> &[f64] {
        match property {
            "delay" => &self.delay,
            "cost" => &self.cost,
            "capacity" => &self.capacity,
            "fault_probability" => &self.fault,
            other => panic!("no property {other}"),
        }
    }

    pub fn union(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.raw.iter().flatten().copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    }
}

fn random_weights(rng: &mut StdRng, m: usize) -> [Vec<f64>; 4] {
    let int = |rng: &mut StdRng, lo: u32, hi: u32| (0..m).map(|_| rng.gen_range(lo..=hi) as f64).collect::<Vec<_>>();
    let delay = int(rng, 1, 200);
    let cost = int(rng, 1, 500);
    let capacity = int(rng, 1, 100);
    // Kept small so per-path probability sums stay below 1.
    let fault = (0..m).map(|_| rng.gen_range(0..=1000) as f64 / 10_000.0).collect();
    [delay, cost, capacity, fault]
}

fn build(vertices: usize, edges: &[(usize, usize)], weights: &[Vec<f64>; 4]) -> DirectedGraph {
    let ids: Vec<String> = (0..edges.len()).map(|k| format!("e{k}")).collect();
    let mut b = DirectedGraph::builder().vertices((0..vertices).map(|v| format!("v{v}")));
    for (id, &(from, to)) in ids.iter().zip(edges) {
        b = b.edge(id.clone(), format!("v{from}"), format!("v{to}"));
    }
    for (name, values) in PROPERTIES.iter().zip(weights) {
        let domain = if *name == "fault_probability" {
            PropertyDomain::Probability
        } else {
            PropertyDomain::NonnegativeReal
        };
        let v = EdgePropertyVector::new(*name, "", domain, ids.iter().cloned().zip(values.iter().copied())).unwrap();
        b = b.property(v);
    }
    b.build().unwrap()
}

fn simple_paths(
    adj: &[Vec<(usize, usize)>],
    at: usize,
    dest: usize,
    seen: &mut Vec<bool>,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if at == dest {
        out.push(stack.clone());
        return;
    }
    for &(edge, next) in &adj[at] {
        if !seen[next] {
            seen[next] = true;
            stack.push(edge);
            simple_paths(adj, next, dest, seen, stack, out);
            stack.pop();
            seen[next] = false;
        }
    }
}

/// A random directed graph (possibly with cycles and parallel edges) and a
/// path set of 0 to `max_paths` distinct simple paths whose union has at
/// most `max_union` edges.
pub fn random_instance(rng: &mut StdRng, max_paths: usize, max_union: usize) -> Instance {
    loop {
        let n = rng.gen_range(3..=7);
        let m = rng.gen_range(n + 1..=(n * 3).min(18));
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let from = rng.gen_range(0..n);
            let to = rng.gen_range(0..n);
            if from != to {
                edges.push((from, to));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (k, &(from, to)) in edges.iter().enumerate() {
            adj[from].push((k, to));
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut all = Vec::new();
        simple_paths(&adj, 0, n - 1, &mut seen, &mut Vec::new(), &mut all);
        if all.is_empty() {
            continue;
        }
        all.shuffle(rng);
        let want = if rng.gen_bool(0.05) {
            0
        } else {
            rng.gen_range(1..=max_paths).min(all.len())
        };
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        let mut union = std::collections::BTreeSet::new();
        for p in all {
            if chosen.len() == want {
                break;
            }
            if p.len() > max_union {
                continue;
            }
            let grown: std::collections::BTreeSet<usize> = union.iter().chain(&p).copied().collect();
            if grown.len() <= max_union {
                union = grown;
                chosen.push(p);
            }
        }
        let weights = random_weights(rng, m);
        let graph = build(n, &edges, &weights);
        let paths = PathSet::new(
            chosen
                .iter()
                .map(|p| {
                    let ids: Vec<&str> = p.iter().map(|&e| graph.edge_ids()[e].as_str()).collect();
                    graph.validate_path(&ids).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let [delay, cost, capacity, fault] = weights;
        return Instance {
            graph,
            paths,
            raw: chosen,
            delay,
            cost,
            capacity,
            fault,
        };
    }
}

pub fn corpus(seed: u64, count: usize, max_paths: usize, max_union: usize) -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_instance(&mut rng, max_paths, max_union))
        .collect()
}

/// `k` internally vertex-disjoint paths from `s` to `t` of lengths 1..=4.
/// At most one path is the direct edge, so paths stay distinct by vertices
/// as well as by edge ids.
pub fn disjoint_instance(rng: &mut StdRng, k: usize) -> Instance {
    let mut vertices = 2;
    let mut edges = Vec::new();
    let mut raw = Vec::new();
    for i in 0..k {
        let len = if i == 0 {
            rng.gen_range(1..=4)
        } else {
            rng.gen_range(2..=4)
        };
        let mut prev = 0;
        let mut path = Vec::new();
        for step in 0..len {
            let next = if step + 1 == len {
                1
            } else {
                vertices += 1;
                vertices - 1
            };
            path.push(edges.len());
            edges.push((prev, next));
            prev = next;
        }
        raw.push(path);
    }
    let weights = random_weights(rng, edges.len());
    let graph = build(vertices, &edges, &weights);
    let paths = PathSet::new(
        raw.iter()
            .map(|p| {
                let ids: Vec<&str> = p.iter().map(|&e| graph.edge_ids()[e].as_str()).collect();
                graph.validate_path(&ids).unwrap()
            })
            .collect(),
    )
    .unwrap();
    let [delay, cost, capacity, fault] = weights;
    Instance {
        graph,
        paths,
        raw,
        delay,
        cost,
        capacity,
        fault,
    }
}

/// Every inclusion-minimal edge set meeting all paths, by exhaustive search
/// over subsets of the union. Sorted lexicographically.
pub fn brute_force_cuts(paths: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut union: Vec<usize> = paths.iter().flatten().copied().collect();
    union.sort_unstable();
    union.dedup();
    assert!(union.len() <= 20, "oracle is exponential");
    let hits = |mask: u32| {
        paths.iter().all(|p| {
            p.iter()
                .any(|e| mask >> union.iter().position(|u| u == e).unwrap() & 1 == 1)
        })
    };
    let hitting: Vec<u32> = (0..1u32 << union.len()).filter(|&m| hits(m)).collect();
    let mut cuts: Vec<Vec<usize>> = hitting
        .iter()
        .filter(|&&m| !hitting.iter().any(|&s| s != m && s & m == s))
        .map(|&m| {
            (0..union.len())
                .filter(|&i| m >> i & 1 == 1)
                .map(|i| union[i])
                .collect()
        })
        .collect();
    cuts.sort();
    cuts
}

pub fn closed_delay(paths: &[Vec<usize>], w: &[f64]) -> f64 {
    paths
        .iter()
        .map(|p| p.iter().map(|&e| w[e]).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn closed_cost(paths: &[Vec<usize>], w: &[f64]) -> f64 {
    let mut union: Vec<usize> = paths.iter().flatten().copied().collect();
    union.sort_unstable();
    union.dedup();
    union.iter().map(|&e| w[e]).sum()
}

pub fn closed_capacity(paths: &[Vec<usize>], w: &[f64]) -> f64 {
    brute_force_cuts(paths)
        .iter()
        .map(|c| c.iter().map(|&e| w[e]).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

pub fn closed_unavailability(paths: &[Vec<usize>], p: &[f64]) -> f64 {
    1.0 - brute_force_cuts(paths)
        .iter()
        .map(|c| 1.0 - c.iter().map(|&e| p[e]).product::<f64>())
        .product::<f64>()
}

pub fn closed_fault_probability(paths: &[Vec<usize>], p: &[f64]) -> f64 {
    brute_force_cuts(paths)
        .iter()
        .map(|c| c.iter().map(|&e| p[e]).product::<f64>())
        .sum()
}

/// Closed form for one of the five built-in attributes by name.
pub fn closed_form(attribute: &str, inst: &Instance) -> f64 {
    match attribute {
        "delay" => closed_delay(&inst.raw, &inst.delay),
        "cost" => closed_cost(&inst.raw, &inst.cost),
        "capacity" => closed_capacity(&inst.raw, &inst.capacity),
        "unavailability" => closed_unavailability(&inst.raw, &inst.fault),
        "fault_probability" => closed_fault_probability(&inst.raw, &inst.fault),
        other => panic!("no closed form for {other}"),
    }
}

/// Monotone supermodular table with `rho(empty) = 0`: nonnegative pair
/// interaction terms plus a nonnegative modular part.
pub fn supermodular_table(rng: &mut StdRng, n: usize) -> SetFunctionTable {
    let mut pair = vec![vec![0.0; n]; n];
    for (a, row) in pair.iter_mut().enumerate() {
        for c in row.iter_mut().skip(a + 1) {
            if rng.gen_bool(0.6) {
                *c = rng.gen_range(0..=20) as f64;
            }
        }
    }
    let single: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=20) as f64).collect();
    let ground = (1..=n).map(|i| format!("P{i}")).collect();
    SetFunctionTable::from_fn(ground, |x| {
        let mut v = 0.0;
        for (a, row) in pair.iter().enumerate().filter(|(a, _)| x >> a & 1 == 1) {
            v += single[a];
            v += row
                .iter()
                .enumerate()
                .filter(|(b, _)| x >> b & 1 == 1)
                .map(|(_, c)| c)
                .sum::<f64>();
        }
        v
    })
    .unwrap()
}
