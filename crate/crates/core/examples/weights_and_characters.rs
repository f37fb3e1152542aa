//! Weight sets and Freudenthal multiplicities of irreducible characters.
//!
//! ```bash
//! cargo run --example weights_and_characters
//! ```

use rootdatum::characters::{freudenthal_multiplicities, weight_set, weight_set_by_hull};
use rootdatum::lattice::LatticeVector;
use rootdatum::root_datum::{construct, find_simple_system, LatticeKind};

fn main() -> rootdatum::Result<()> {
    let cases = [("A2", LatticeKind::Adjoint, vec![1, 1]), ("B2", LatticeKind::SimplyConnected, vec![1, 1]), ("G2", LatticeKind::SimplyConnected, vec![0, 1])];
    for (label, kind, lambda) in cases {
        let d = construct(label, kind)?;
        let delta = find_simple_system(&d, None)?;
        let lambda = LatticeVector(lambda);
        let chi = freudenthal_multiplicities(&d, &delta, &lambda)?;
        let wts = weight_set(&d, &delta, &lambda)?;
        assert_eq!(wts, weight_set_by_hull(&d, &delta, &lambda)?);
        println!("{label} λ={lambda}: {} weights, dimension {}", wts.len(), chi.degree());
        for (w, m) in chi.terms() {
            if *m > 1 {
                println!("  multiplicity {m} at {w}");
            }
        }
    }
    Ok(())
}
