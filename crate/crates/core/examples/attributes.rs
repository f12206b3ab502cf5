//! Evaluates every built-in attribute on the three-path example network.
//!
//! Run with `cargo run --example attributes`.

use std::path::Path;

use pathset::{availability, evaluate, serviceability, AttributeSpec, Network};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = Network::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/fig2.json"))?;
    let p = net.path_set("P").expect("fixture defines P");

    for spec in AttributeSpec::builtins() {
        let v = evaluate(&spec, p, &net.graph)?;
        println!(
            "{:<18} {:>14} {}  ({} columns via {})",
            v.name,
            v.value,
            v.unit,
            v.columns.len(),
            v.transform
        );
    }

    let delay = evaluate(&AttributeSpec::delay(), p, &net.graph)?;
    let per_path: Vec<String> = delay.columns.iter().map(|(l, x)| format!("{l}={x}")).collect();
    println!("\nper-path delay: {}", per_path.join(" "));

    println!("availability   {:.10}", availability(p, &net.graph)?);
    println!("serviceability {:.10}", serviceability(p, &net.graph)?);
    Ok(())
}
