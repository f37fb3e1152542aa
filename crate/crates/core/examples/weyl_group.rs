//! Weyl groups by closure, orbits, dominant representatives and the edge
//! roots `Δ(x₀)` of a dominant point.
//!
//! ```bash
//! cargo run --example weyl_group
//! ```

use rootdatum::lattice::LatticeVector;
use rootdatum::root_datum::{construct, find_simple_system, LatticeKind};
use rootdatum::weyl::{delta_of_x0_witnessed, dominant_representative, generate, orbit};

fn main() -> rootdatum::Result<()> {
    for label in ["A1", "A2", "B2", "G2", "A3"] {
        let d = construct(label, LatticeKind::SimplyConnected)?;
        let delta = find_simple_system(&d, None)?;
        println!("|W({label})| = {}", generate(&d, &delta)?.order());
    }

    let d = construct("B2", LatticeKind::SimplyConnected)?;
    let delta = find_simple_system(&d, None)?;
    let w = generate(&d, &delta)?;
    let x = LatticeVector(vec![-3, 1]);
    let (top, g) = dominant_representative(&w, &delta, &x)?;
    println!("orbit of {x}: {:?}", orbit(&w, &x)?.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    println!("dominant representative {top}, reached by the word {:?}", g.word);

    // x₀ on a wall: Δ(x₀) has one root from each W₀-orbit of Δ∖Δ₀
    let x0 = LatticeVector(vec![1, 0]);
    for e in delta_of_x0_witnessed(&d, &delta, &x0)? {
        println!("Δ({x0}) ∋ {} = w₀({})", e.root, e.base);
    }
    Ok(())
}
