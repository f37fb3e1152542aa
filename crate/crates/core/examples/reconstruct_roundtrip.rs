//! Transport a root datum through a unimodular matrix, then recover its
//! roots, Weyl group and coroots from matched characters alone.
//!
//! ```bash
//! cargo run --example reconstruct_roundtrip
//! ```

use rootdatum::matrix::IntMatrix;
use rootdatum::reconstruct::{assemble_isomorphism, MatchedPresentation};
use rootdatum::root_datum::{construct, LatticeKind};

fn main() -> rootdatum::Result<()> {
    let source = construct("G2", LatticeKind::SimplyConnected)?;
    let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]])?;
    let target = source.image_under(&m)?;
    let mp = MatchedPresentation::standard(&source, &m)?;

    let report = assemble_isomorphism(&target, &source, &mp);
    println!("isomorphism certified: {}", report.ok());
    println!("recovered roots: {:?}", report.recovered_roots.iter().map(|r| r.to_string()).collect::<Vec<_>>());
    println!("recovered coroots: {:?}", report.recovered_coroots.iter().map(|r| r.to_string()).collect::<Vec<_>>());

    // move one weight and the certificate is refused
    let mut bad = mp.clone();
    let irrep = &mut bad.irreps_mut()[0];
    let w = irrep.weights.support().into_iter().next().unwrap();
    irrep.weights = irrep.weights.add_scaled(-1, &rootdatum::characters::FormalCharacter::monomial(w.clone(), 1))?
        .add(&rootdatum::characters::FormalCharacter::monomial(&w + &w, 1))?;
    let report = assemble_isomorphism(&target, &source, &bad);
    println!("perturbed: certified {}, first failure: {}", report.ok(), report.failures[0]);
    Ok(())
}
