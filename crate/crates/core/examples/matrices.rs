//! Prints the incidence matrices of the three transforms and the
//! r-incidence matrices used by capacity and the probability attributes.

use std::path::Path;

use pathset::transform::DEFAULT_CUT_LIMIT;
use pathset::{Network, TransformKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = Network::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/fig2.json"))?;
    let g = &net.graph;
    let p = net.path_set("P").expect("fixture defines P");

    for kind in [TransformKind::Identity, TransformKind::Union, TransformKind::Cuts] {
        let h = kind.apply(g, p, DEFAULT_CUT_LIMIT)?;
        println!("{kind} incidence\n{}", h.incidence_matrix());
    }

    let cuts = TransformKind::Cuts.apply(g, p, DEFAULT_CUT_LIMIT)?;
    let capacity = cuts.r_incidence_matrix(0.0, g.property("capacity").unwrap())?;
    println!("R(0, capacity, cuts)\n{capacity}");
    let prob = cuts.r_incidence_matrix(1.0, g.property("fault_probability").unwrap())?;
    println!("R(1, fault_probability, cuts) as CSV\n{}", prob.to_csv());
    Ok(())
}
