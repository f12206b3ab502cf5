//! Builds a network in code instead of loading a file, and shows the
//! validation errors for malformed graphs and paths.

use pathset::{evaluate, AttributeSpec, DirectedGraph, EdgePropertyVector, PathSet, PropertyDomain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let edges = [
        ("sa", "s", "a"),
        ("at", "a", "t"),
        ("sb", "s", "b"),
        ("bt", "b", "t"),
        ("ab", "a", "b"),
    ];
    let delay = EdgePropertyVector::new(
        "delay",
        "ms",
        PropertyDomain::NonnegativeReal,
        [("sa", 3.0), ("at", 4.0), ("sb", 2.0), ("bt", 6.0), ("ab", 1.0)],
    )?;
    let faults = EdgePropertyVector::new(
        "fault_probability",
        "",
        PropertyDomain::Probability,
        [("sa", 0.01), ("at", 0.02), ("sb", 0.01), ("bt", 0.03), ("ab", 0.005)],
    )?;

    let mut builder = DirectedGraph::builder().vertices(["s", "a", "b", "t"]);
    for (id, from, to) in edges {
        builder = builder.edge(id, from, to);
    }
    let g = builder.property(delay).property(faults).build()?;

    let p = PathSet::new(vec![
        g.validate_path(&["sa", "at"])?,
        g.validate_path(&["sb", "bt"])?,
        g.validate_path(&["sa", "ab", "bt"])?,
    ])?;
    for label in p.labels().iter().zip(p.paths()) {
        println!("{} = {}", label.0, g.path_vertices(label.1).join(" -> "));
    }
    for spec in [
        AttributeSpec::delay(),
        AttributeSpec::unavailability(),
        AttributeSpec::fault_probability(),
    ] {
        println!("{:<18} {}", spec.name, evaluate(&spec, &p, &g)?.value);
    }

    println!("\nrejected inputs:");
    let looped = DirectedGraph::builder().vertex("x").edge("xx", "x", "x").build();
    println!("  self-loop: {}", looped.unwrap_err());
    println!("  broken chain: {}", g.validate_path(&["sa", "bt"]).unwrap_err());
    let mixed = PathSet::new(vec![g.validate_path(&["sa", "at"])?, g.validate_path(&["sa"])?]);
    println!("  endpoints: {}", mixed.unwrap_err());
    let bad = EdgePropertyVector::new("p", "", PropertyDomain::Probability, [("sa", 1.5)]);
    println!("  probability: {}", bad.unwrap_err());
    Ok(())
}
