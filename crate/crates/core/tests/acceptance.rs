//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use pathset::attribute::{self, AttributeSpec};
use pathset::polymatroid::{check_axioms, dualize, tabulate, Axiom, SetFunctionTable, Verdict, Witness};
use pathset::transform::{cuts_transform, enumerate_cuts, identity_transform, union_transform, DEFAULT_CUT_LIMIT};
use pathset::{Matrix, PathSet};
use rand::rngs::StdRng;
use rand::SeedableRng;

type Outcome = Result<String, String>;

const EDGES: [&str; 8] = ["AB", "AC", "BD", "CD", "DE", "DF", "EG", "FG"];

const IDENTITY_INCIDENCE: [[u8; 3]; 8] = [
    [1, 1, 0],
    [0, 0, 1],
    [1, 1, 0],
    [0, 0, 1],
    [1, 0, 0],
    [0, 1, 1],
    [1, 0, 0],
    [0, 1, 1],
];

const CUT_INCIDENCE: [[u8; 12]; 8] = [
    [1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
    [0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0, 1],
];

const CAPACITY_R0: [[f64; 12]; 8] = [
    [25., 25., 25., 25., 0., 0., 0., 0., 0., 0., 0., 0.],
    [10., 0., 0., 0., 10., 0., 0., 0., 0., 0., 0., 0.],
    [0., 0., 0., 0., 25., 25., 25., 25., 0., 0., 0., 0.],
    [0., 25., 0., 0., 0., 25., 0., 0., 0., 0., 0., 0.],
    [0., 0., 0., 0., 0., 0., 0., 0., 10., 10., 0., 0.],
    [0., 0., 25., 0., 0., 0., 25., 0., 25., 0., 25., 0.],
    [0., 0., 0., 0., 0., 0., 0., 0., 0., 0., 10., 10.],
    [0., 0., 0., 100., 0., 0., 0., 100., 0., 100., 0., 100.],
];

const PROBABILITY_R1: [[f64; 12]; 8] = [
    [0.0050, 0.0050, 0.0050, 0.0050, 1., 1., 1., 1., 1., 1., 1., 1.],
    [0.0075, 1., 1., 1., 0.0075, 1., 1., 1., 1., 1., 1., 1.],
    [1., 1., 1., 1., 0.0070, 0.0070, 0.0070, 0.0070, 1., 1., 1., 1.],
    [1., 0.0040, 1., 1., 1., 0.0040, 1., 1., 1., 1., 1., 1.],
    [1., 1., 1., 1., 1., 1., 1., 1., 0.0115, 0.0115, 1., 1.],
    [1., 1., 0.0045, 1., 1., 1., 0.0045, 1., 0.0045, 1., 0.0045, 1.],
    [1., 1., 1., 1., 1., 1., 1., 1., 1., 1., 0.0105, 0.0105],
    [1., 1., 1., 0.0065, 1., 1., 1., 0.0065, 1., 0.0065, 1., 0.0065],
];

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn compare_matrix<const N: usize>(
    name: &str,
    m: &Matrix,
    columns: &[String],
    expected: &[[f64; N]; 8],
    tol: f64,
) -> Result<(), String> {
    ensure(m.row_labels() == EDGES, || {
        format!("{name}: row labels {:?}", m.row_labels())
    })?;
    ensure(m.column_labels() == columns, || {
        format!("{name}: column labels {:?}", m.column_labels())
    })?;
    for (i, row) in expected.iter().enumerate() {
        for (j, &want) in row.iter().enumerate() {
            let got = m.get(i, j);
            let ok = if tol == 0.0 {
                got.to_bits() == want.to_bits()
            } else {
                (got - want).abs() <= tol
            };
            ensure(ok, || {
                format!("{name}[{},{}] = {got}, expected {want}", EDGES[i], columns[j])
            })?;
        }
    }
    Ok(())
}

fn as_f64<const N: usize>(t: &[[u8; N]; 8]) -> [[f64; N]; 8] {
    t.map(|row| row.map(f64::from))
}

fn fig2_set() -> (pathset::Network, PathSet) {
    let net = fig2();
    let p = net.path_set("P").unwrap().clone();
    (net, p)
}

fn criterion_1() -> Outcome {
    let (net, p) = fig2_set();
    let g = &net.graph;
    compare_matrix(
        "identity",
        &identity_transform(g, &p).incidence_matrix(),
        &labels("P", 3),
        &as_f64(&IDENTITY_INCIDENCE),
        0.0,
    )?;
    compare_matrix(
        "union",
        &union_transform(g, &p).incidence_matrix(),
        &["Union".to_owned()],
        &[[1.0]; 8],
        0.0,
    )?;
    let cuts = cuts_transform(g, &p, DEFAULT_CUT_LIMIT).map_err(|e| e.to_string())?;
    compare_matrix(
        "cuts",
        &cuts.incidence_matrix(),
        &labels("C", 12),
        &as_f64(&CUT_INCIDENCE),
        0.0,
    )?;
    Ok("identity 8x3, union 8x1, cuts 8x12 bit-exact".into())
}

fn criterion_2() -> Outcome {
    let (net, p) = fig2_set();
    let g = &net.graph;
    let cuts = cuts_transform(g, &p, DEFAULT_CUT_LIMIT).map_err(|e| e.to_string())?;
    let cap = cuts
        .r_incidence_matrix(0.0, g.property("capacity").unwrap())
        .map_err(|e| e.to_string())?;
    compare_matrix("R(0, capacity)", &cap, &labels("C", 12), &CAPACITY_R0, 0.0)?;
    let prob = cuts
        .r_incidence_matrix(1.0, g.property("fault_probability").unwrap())
        .map_err(|e| e.to_string())?;
    compare_matrix(
        "R(1, fault_probability)",
        &prob,
        &labels("C", 12),
        &PROBABILITY_R1,
        1e-12,
    )?;
    Ok("capacity exact, probabilities within 1e-12".into())
}

fn criterion_3() -> Outcome {
    let (net, p) = fig2_set();
    let g = &net.graph;
    let eval =
        |name: &str| attribute::evaluate(&AttributeSpec::builtin(name).unwrap(), &p, g).map_err(|e| e.to_string());

    let delay = eval("delay")?;
    ensure(delay.value == 340.0 && delay.unit == "µs", || {
        format!("delay {} {}", delay.value, delay.unit)
    })?;
    let sums: Vec<f64> = delay.columns.iter().map(|c| c.1).collect();
    ensure(sums == [340.0, 230.0, 225.0], || format!("delay columns {sums:?}"))?;

    let cost = eval("cost")?;
    ensure(cost.value == 1900.0, || format!("cost {}", cost.value))?;

    let capacity = eval("capacity")?;
    ensure(capacity.value == 35.0, || format!("capacity {}", capacity.value))?;
    let sums: Vec<f64> = capacity.columns.iter().map(|c| c.1).collect();
    let want = [35., 50., 50., 125., 35., 50., 50., 125., 35., 110., 35., 110.];
    ensure(sums == want, || format!("capacity cut sums {sums:?}"))?;

    let unavail = eval("unavailability")?;
    ensure((unavail.value - 0.0005118815).abs() <= 1e-9, || {
        format!("unavailability {}", unavail.value)
    })?;

    let fault = eval("fault_probability")?;
    ensure((fault.value - 0.000512).abs() <= 1e-12, || {
        format!("fault probability {}", fault.value)
    })?;
    // Pairwise products of the probability vector, one per cut.
    let products = [
        0.0050 * 0.0075,
        0.0050 * 0.0040,
        0.0050 * 0.0045,
        0.0050 * 0.0065,
        0.0075 * 0.0070,
        0.0070 * 0.0040,
        0.0070 * 0.0045,
        0.0070 * 0.0065,
        0.0115 * 0.0045,
        0.0115 * 0.0065,
        0.0045 * 0.0105,
        0.0105 * 0.0065,
    ];
    for ((label, got), want) in fault.columns.iter().zip(products) {
        ensure((got - want).abs() <= 1e-12, || {
            format!("cut product {label} = {got}, expected {want}")
        })?;
    }
    ensure(fault.columns.len() == 12, || {
        format!("{} cut products", fault.columns.len())
    })?;
    Ok(format!(
        "delay 340, cost 1900, capacity 35, unavailability {:.10}, fault probability {}",
        unavail.value, fault.value
    ))
}

const CORPUS_SEED: u64 = 0x5EED_0001;
const CORPUS_SIZE: usize = 300;

fn criterion_4() -> Outcome {
    let corpus = corpus(CORPUS_SEED, CORPUS_SIZE, 4, 10);
    let mut total = 0;
    for (k, inst) in corpus.iter().enumerate() {
        let got = enumerate_cuts(&inst.paths, DEFAULT_CUT_LIMIT).map_err(|e| e.to_string())?;
        let want = brute_force_cuts(&inst.raw);
        ensure(got == want, || format!("instance {k}: {got:?} != oracle {want:?}"))?;
        total += got.len();
    }
    Ok(format!("{CORPUS_SIZE} instances, {total} cuts, set-for-set equal"))
}

fn criterion_5() -> Outcome {
    let corpus = corpus(CORPUS_SEED, CORPUS_SIZE, 4, 10);
    for (k, inst) in corpus.iter().enumerate() {
        for spec in AttributeSpec::builtins() {
            let got = attribute::evaluate(&spec, &inst.paths, &inst.graph)
                .map_err(|e| e.to_string())?
                .value;
            let want = closed_form(&spec.name, inst);
            let ok = match spec.name.as_str() {
                "unavailability" | "fault_probability" => (got - want).abs() <= 1e-12,
                _ => got == want,
            };
            ensure(ok, || {
                format!("instance {k}, {}: engine {got}, closed form {want}", spec.name)
            })?;
        }
    }
    Ok(format!("{CORPUS_SIZE} instances x 5 attributes"))
}

fn criterion_6() -> Outcome {
    let corpus = corpus(CORPUS_SEED, CORPUS_SIZE, 4, 10);
    let mut not_modular = Vec::new();
    for (k, inst) in corpus.iter().enumerate() {
        for name in ["delay", "cost"] {
            let t = tabulate(&AttributeSpec::builtin(name).unwrap(), &inst.paths, &inst.graph)
                .map_err(|e| e.to_string())?;
            let report = check_axioms(&t);
            for axiom in [Axiom::R1, Axiom::R2, Axiom::R3] {
                ensure(report.verdict(axiom).witness().is_none(), || {
                    format!("instance {k}, {name}: {axiom:?} witness {:?}", report.verdict(axiom))
                })?;
            }
            ensure(report.is_polymatroid(), || {
                format!("instance {k}, {name}: not a polymatroid")
            })?;
            if name == "cost" && !report.is_modular() {
                not_modular.push((k, *report.verdict(Axiom::Supermodular)));
            }
        }
    }
    match not_modular.first() {
        None => Ok(format!(
            "{CORPUS_SIZE} instances: delay and cost polymatroid, cost modular"
        )),
        Some((k, verdict)) => Err(format!(
            "delay and cost polymatroid on all {CORPUS_SIZE} instances with no R1-R3 witnesses, \
             but cost is not modular on {} of them (first: instance {k}, supermodularity {verdict:?}); \
             paths sharing an edge make the union cost strictly submodular",
            not_modular.len()
        )),
    }
}

fn criterion_7() -> Outcome {
    let net = fig3();
    let p = net.path_set("P").unwrap();
    let t = tabulate(&AttributeSpec::capacity(), p, &net.graph).map_err(|e| e.to_string())?;
    let report = check_axioms(&t);
    let sub = Witness::Pair {
        x: 0b011,
        y: 0b101,
        rho_x: 1.0,
        rho_y: 1.0,
        rho_meet: 1.0,
        rho_join: 2.0,
    };
    let sup = Witness::Pair {
        x: 0b001,
        y: 0b010,
        rho_x: 1.0,
        rho_y: 1.0,
        rho_meet: 0.0,
        rho_join: 1.0,
    };
    for (axiom, want) in [(Axiom::Submodular, sub), (Axiom::R3, sub), (Axiom::Supermodular, sup)] {
        let got = report.verdict(axiom).witness();
        ensure(got == Some(&want), || format!("{axiom:?}: {:?}", report.verdict(axiom)))?;
        ensure(want.reproduces(axiom, &t), || {
            format!("{axiom:?} witness does not reproduce")
        })?;
    }
    Ok("submodular 1 + 1 < 2 + 1 at {P1,P2},{P1,P3}; supermodular 1 + 1 > 1 + 0 at {P1},{P2}".into())
}

fn criterion_8() -> Outcome {
    let net = fig2();
    let mut fixtures: Vec<(String, pathset::DirectedGraph, PathSet)> = ["P", "P1"]
        .iter()
        .map(|n| (format!("fig2 {n}"), net.graph.clone(), net.path_set(n).unwrap().clone()))
        .collect();
    for (k, inst) in corpus(CORPUS_SEED, CORPUS_SIZE, 4, 10).into_iter().enumerate() {
        if !inst.paths.is_empty() {
            fixtures.push((format!("random {k}"), inst.graph, inst.paths));
        }
    }
    for (name, g, p) in &fixtures {
        for spec in [AttributeSpec::unavailability(), AttributeSpec::fault_probability()] {
            let t = tabulate(&spec, p, g).map_err(|e| e.to_string())?;
            let report = check_axioms(&t);
            ensure(t.value(0) == 1.0, || {
                format!("{name}, {}: rho(empty) = {}", spec.name, t.value(0))
            })?;
            ensure(
                matches!(report.verdict(Axiom::R1), Verdict::Violated { witness: Witness::Empty { value }, .. } if *value == 1.0),
                || format!("{name}, {}: R1 {:?}", spec.name, report.verdict(Axiom::R1)),
            )?;
        }
    }
    Ok(format!("{} fixtures, rho(empty) = 1 and R1 violated", fixtures.len()))
}

fn criterion_9() -> Outcome {
    let mut tables: Vec<SetFunctionTable> = Vec::new();
    for inst in corpus(CORPUS_SEED, 100, 4, 10) {
        for spec in [AttributeSpec::delay(), AttributeSpec::cost(), AttributeSpec::capacity()] {
            tables.push(tabulate(&spec, &inst.paths, &inst.graph).map_err(|e| e.to_string())?);
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5EED_0009);
    let generated: Vec<SetFunctionTable> = (0..150).map(|k| supermodular_table(&mut rng, 1 + k % 6)).collect();
    tables.extend(generated.iter().cloned());

    for (k, t) in tables.iter().enumerate() {
        ensure(t.value(0) == 0.0, || {
            format!("table {k} has rho(empty) = {}", t.value(0))
        })?;
        let back = dualize(&dualize(t));
        let ok = t.values().iter().zip(back.values()).all(|(a, b)| (a - b).abs() <= 1e-9);
        ensure(ok, || {
            format!("table {k}: dual of dual {:?} != {:?}", back.values(), t.values())
        })?;
    }
    for (k, t) in generated.iter().enumerate() {
        let before = check_axioms(t);
        ensure(
            before.holds(Axiom::R1) && before.holds(Axiom::R2) && before.holds(Axiom::Supermodular),
            || format!("generated table {k} is not monotone supermodular"),
        )?;
        let dual = check_axioms(&dualize(t));
        for axiom in [Axiom::R1, Axiom::R2, Axiom::Submodular] {
            ensure(dual.holds(axiom), || {
                format!("dual of table {k}: {axiom:?} {:?}", dual.verdict(axiom))
            })?;
        }
    }
    Ok(format!(
        "involution on {} tables, {} supermodular duals polymatroid",
        tables.len(),
        generated.len()
    ))
}

fn criterion_10() -> Outcome {
    let net = fig2();
    let empty = net.path_set("empty").unwrap();
    for (name, want) in [
        ("delay", 0.0),
        ("cost", 0.0),
        ("capacity", 0.0),
        ("unavailability", 1.0),
        ("fault_probability", 1.0),
    ] {
        let got = attribute::evaluate(&AttributeSpec::builtin(name).unwrap(), empty, &net.graph)
            .map_err(|e| e.to_string())?
            .value;
        ensure(got == want, || {
            format!("empty path set, {name} = {got}, expected {want}")
        })?;
    }

    let mut rng = StdRng::seed_from_u64(0x5EED_0010);
    let count = 200;
    for k in 0..count {
        let inst = disjoint_instance(&mut rng, 1 + k % 4);
        let capacity = attribute::evaluate(&AttributeSpec::capacity(), &inst.paths, &inst.graph)
            .map_err(|e| e.to_string())?
            .value;
        let bottlenecks: f64 = inst
            .raw
            .iter()
            .map(|p| p.iter().map(|&e| inst.capacity[e]).fold(f64::INFINITY, f64::min))
            .sum();
        ensure((capacity - bottlenecks).abs() <= 1e-12, || {
            format!("disjoint {k}: capacity {capacity}, sum of bottlenecks {bottlenecks}")
        })?;

        let fault = attribute::evaluate(&AttributeSpec::fault_probability(), &inst.paths, &inst.graph)
            .map_err(|e| e.to_string())?
            .value;
        let product: f64 = inst
            .raw
            .iter()
            .map(|p| p.iter().map(|&e| inst.fault[e]).sum::<f64>())
            .product();
        ensure((fault - product).abs() <= 1e-12, || {
            format!("disjoint {k}: fault probability {fault}, product of path sums {product}")
        })?;
    }
    Ok(format!(
        "empty-set conventions hold; {count} disjoint fixtures match closed forms"
    ))
}

struct Criterion {
    name: &'static str,
    run: fn() -> Outcome,
    budget: Duration,
}

fn main() -> ExitCode {
    let second = Duration::from_secs(1);
    let criteria = [
        Criterion {
            name: "incidence reproduction",
            run: criterion_1,
            budget: second,
        },
        Criterion {
            name: "r-incidence reproduction",
            run: criterion_2,
            budget: second,
        },
        Criterion {
            name: "attribute values",
            run: criterion_3,
            budget: second,
        },
        Criterion {
            name: "cut enumeration oracle",
            run: criterion_4,
            budget: Duration::from_secs(30),
        },
        Criterion {
            name: "engine vs closed forms",
            run: criterion_5,
            budget: Duration::MAX,
        },
        Criterion {
            name: "delay and cost polymatroid",
            run: criterion_6,
            budget: Duration::MAX,
        },
        Criterion {
            name: "capacity counterexample",
            run: criterion_7,
            budget: Duration::MAX,
        },
        Criterion {
            name: "probability R1 failure",
            run: criterion_8,
            budget: Duration::MAX,
        },
        Criterion {
            name: "dualization",
            run: criterion_9,
            budget: Duration::MAX,
        },
        Criterion {
            name: "conventions",
            run: criterion_10,
            budget: Duration::MAX,
        },
    ];

    let mut failed = 0;
    for (k, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; took {elapsed:?}, budget {:?}", c.budget)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {:>2} {:<26} {:>9.1?}  {detail}", k + 1, c.name, elapsed),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2} {:<26} {:>9.1?}  {detail}", k + 1, c.name, elapsed);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
