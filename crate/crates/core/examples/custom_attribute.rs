//! Registers user-defined attributes next to the built-in ones.
//!
//! Two are defined here in code, and the example network file declares a
//! third (`bottleneck-delay`) in its `attributes` section.

use std::path::Path;

use pathset::attribute::{AttributeSpec, FoldOp, OpKind};
use pathset::{evaluate, Network, PropertyDomain, TransformKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = Network::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/fig2.json"))?;
    let p = net.path_set("P").expect("fixture defines P");

    // Slowest single hop anywhere in the path set.
    net.attributes.register(AttributeSpec {
        name: "worst-hop".into(),
        property: "delay".into(),
        transform: TransformKind::Union,
        inner: FoldOp::natural(OpKind::Max),
        outer: FoldOp::natural(OpKind::Max),
        unit: None,
        domain: PropertyDomain::NonnegativeReal,
    })?;

    // Probability that every path fails independently of the others.
    net.attributes.register(AttributeSpec {
        name: "all-paths-fail".into(),
        property: "fault_probability".into(),
        transform: TransformKind::Identity,
        inner: FoldOp::natural(OpKind::ComplementProduct),
        outer: FoldOp::natural(OpKind::Product),
        unit: Some(String::new()),
        domain: PropertyDomain::Probability,
    })?;

    for name in net.attributes.names() {
        let spec = net.attribute(&name).unwrap();
        let v = evaluate(&spec, p, &net.graph)?;
        println!(
            "{name:<18} {:<8} inner {:<18} outer {:<18} = {}",
            spec.transform.as_str(),
            spec.inner.name(),
            spec.outer.name(),
            v.value
        );
    }

    // Names of built-ins are reserved, and folds must have a finite fill.
    let clash = net.attributes.register(AttributeSpec::delay());
    println!("\nregistering `delay` again: {}", clash.unwrap_err());
    let infinite = net.attributes.register(AttributeSpec {
        name: "widest-path".into(),
        property: "capacity".into(),
        transform: TransformKind::Identity,
        inner: FoldOp::natural(OpKind::Min),
        outer: FoldOp::natural(OpKind::Max),
        unit: None,
        domain: PropertyDomain::NonnegativeReal,
    });
    println!("min as inner fold: {}", infinite.unwrap_err());
    Ok(())
}
