//! Compares the edges predicted from `Δ(x₀)` with edges found by exact
//! feasibility over the weight set, and shows the supporting functional
//! cutting out one edge.
//!
//! ```bash
//! cargo run --example edge_oracle
//! ```

use std::collections::BTreeSet;

use rootdatum::characters::weight_set;
use rootdatum::lattice::LatticeVector;
use rootdatum::polytope::{edge_roots, edges_oracle, edges_theorem, face_of, supporting_functional, vertices};
use rootdatum::root_datum::{construct, find_simple_system, LatticeKind};
use rootdatum::weyl::generate;

fn main() -> rootdatum::Result<()> {
    let d = construct("B2", LatticeKind::SimplyConnected)?;
    let delta = find_simple_system(&d, None)?;
    let w = generate(&d, &delta)?;
    let lambda = LatticeVector(vec![2, 1]);
    let wts = weight_set(&d, &delta, &lambda)?;
    let verts = vertices(&w, &delta, &lambda)?;
    for x0 in &verts {
        let a: BTreeSet<_> = edges_theorem(&d, &delta, &w, &lambda, x0)?.into_iter().collect();
        let b: BTreeSet<_> = edges_oracle(&wts, x0)?.into_iter().collect();
        println!("{x0}: {} edges, oracle agrees: {}", a.len(), a == b);
    }

    let x0 = &lambda;
    for (alpha, e) in edge_roots(&d, &delta, &w, x0)? {
        let y = supporting_functional(&d, &delta, &w, x0, &alpha)?;
        let face: Vec<_> = face_of(&verts, &y)?.into_iter().map(|v| v.to_string()).collect();
        println!("α={alpha}: y={}, face {face:?}, edge {}–{}", serde_json::to_string(&y).unwrap(), e.a, e.b);
    }
    Ok(())
}
