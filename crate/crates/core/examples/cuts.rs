//! Enumerates the minimal cuts of a path set and classifies a few edge sets.

use std::path::Path;

use pathset::transform::DEFAULT_CUT_LIMIT;
use pathset::{cuts_transform, is_minimal_cut, Network};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = Network::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/fig2.json"))?;
    let g = &net.graph;

    for name in ["P", "P1", "empty"] {
        let p = net.path_set(name).expect("fixture path set");
        let h = cuts_transform(g, p, DEFAULT_CUT_LIMIT)?;
        println!("{name}: {} cuts", h.hyperedges().len());
        for e in h.hyperedges() {
            println!("  {:<4} {{{}}}", e.label, h.member_labels(e).join(", "));
        }
    }

    let p = net.path_set("P").unwrap();
    for candidate in [&["BD", "FG"][..], &["AB", "AC", "BD"], &["DE", "EG"]] {
        println!("{candidate:?}: {:?}", is_minimal_cut(g, p, candidate)?);
    }

    // Limits guard the exponential enumeration.
    if let Err(e) = cuts_transform(g, p, 4) {
        println!("with limit 4: {e}");
    }
    Ok(())
}
