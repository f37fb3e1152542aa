//! Build root data from Cartan labels and from explicit lists, and check the
//! axioms.
//!
//! ```bash
//! cargo run --example root_datum_validate
//! ```

use rootdatum::lattice::LatticeVector;
use rootdatum::root_datum::{construct, find_simple_system, LatticeKind, RootDatum};

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector(v.to_vec())
}

fn main() -> rootdatum::Result<()> {
    for (label, kind) in [
        ("A2", LatticeKind::SimplyConnected),
        ("A2", LatticeKind::Adjoint),
        ("B2", LatticeKind::SimplyConnected),
        ("G2", LatticeKind::SimplyConnected),
        ("GL3", LatticeKind::GlVariant),
    ] {
        let d = construct(label, kind)?;
        let delta = find_simple_system(&d, None)?;
        println!(
            "{label} {kind:?}: rank {}, {} roots, simple roots {:?}, valid: {}",
            d.rank(),
            d.num_roots(),
            delta.simple_roots().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            d.is_valid()
        );
    }

    // SL2 with the coroots swapped for the wrong scale
    let bad = RootDatum::new("broken", 1, vec![lv(&[2]), lv(&[-2])], vec![lv(&[2]), lv(&[-2])])?;
    for v in bad.validate() {
        println!("violation: {v}");
    }
    Ok(())
}
