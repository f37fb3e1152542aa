//! Multiply irreducible characters and split the product back into
//! irreducibles.
//!
//! ```bash
//! cargo run --example tensor_decompose
//! ```

use rootdatum::characters::{decompose, freudenthal_multiplicities, multiply};
use rootdatum::lattice::LatticeVector;
use rootdatum::root_datum::{construct, find_simple_system, LatticeKind};
use rootdatum::weyl::generate;

fn main() -> rootdatum::Result<()> {
    for (label, a, b) in [("A1", vec![1], vec![1]), ("A1", vec![2], vec![3]), ("A2", vec![1, 0], vec![0, 1]), ("A2", vec![1, 1], vec![1, 1])] {
        let d = construct(label, LatticeKind::SimplyConnected)?;
        let delta = find_simple_system(&d, None)?;
        let w = generate(&d, &delta)?;
        let (a, b) = (LatticeVector(a), LatticeVector(b));
        let prod = multiply(&freudenthal_multiplicities(&d, &delta, &a)?, &freudenthal_multiplicities(&d, &delta, &b)?)?;
        let dec = decompose(&d, &delta, &w, &prod)?;
        let parts: Vec<String> = dec.coefficients.iter().map(|(l, c)| format!("{c}·V{l}")).collect();
        println!("{label}: V{a} ⊗ V{b} = {}", parts.join(" + "));
    }
    Ok(())
}
