//! Vertices and edges of a weight polytope, printed as JSON.
//!
//! ```bash
//! cargo run --example weight_polytope -- G2 1 1
//! ```

use rootdatum::lattice::LatticeVector;
use rootdatum::polytope::build_polytope;
use rootdatum::root_datum::{construct, find_simple_system, LatticeKind};
use rootdatum::weyl::generate;

fn main() -> rootdatum::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let label = args.first().map(String::as_str).unwrap_or("A2");
    let lambda: Vec<i64> = if args.len() > 1 {
        args[1..].iter().map(|a| a.parse().expect("integer coordinate")).collect()
    } else {
        vec![1, 1]
    };
    let d = construct(label, LatticeKind::SimplyConnected)?;
    let delta = find_simple_system(&d, None)?;
    let w = generate(&d, &delta)?;
    let p = build_polytope(&d, &delta, &w, &LatticeVector(lambda))?;
    println!("{}", serde_json::to_string_pretty(&p.report()).unwrap());
    Ok(())
}
