//! Tabulates attributes over all sub-path-sets and checks them against the
//! polymatroid axioms.

use std::path::Path;

use pathset::polymatroid::{check_axioms, tabulate, Axiom};
use pathset::{AttributeSpec, Network};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    let fig2 = Network::load(dir.join("fig2.json"))?;
    let p = fig2.path_set("P").unwrap();

    for spec in AttributeSpec::builtins() {
        let t = tabulate(&spec, p, &fig2.graph)?;
        let report = check_axioms(&t);
        let failed: Vec<&str> = Axiom::ALL
            .iter()
            .filter(|a| !report.holds(**a))
            .map(|a| a.as_str())
            .collect();
        println!(
            "{:<18} rho(empty) = {:<4} {:<22} violated: {}",
            spec.name,
            t.value(0),
            report.classification_label(),
            failed.join(", ")
        );
    }

    // Capacity is neither submodular nor supermodular on this small network.
    let fig3 = Network::load(dir.join("fig3_capacity.json"))?;
    let t = tabulate(&AttributeSpec::capacity(), fig3.path_set("P").unwrap(), &fig3.graph)?;
    let report = check_axioms(&t);
    println!("\ncapacity table:");
    for x in 0..t.len() as u32 {
        println!("  {{{}}} -> {}", t.labels(x).join(","), t.value(x));
    }
    for axiom in [Axiom::Submodular, Axiom::Supermodular] {
        println!("{axiom:?}: {:?}", report.verdict(axiom));
    }
    Ok(())
}
