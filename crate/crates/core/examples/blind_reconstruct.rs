//! Recover a root datum from the adjoint character with no reference datum.
//!
//! ```bash
//! cargo run --example blind_reconstruct
//! ```

use rootdatum::characters::freudenthal_multiplicities;
use rootdatum::reconstruct::blind_reconstruct;
use rootdatum::root_datum::{construct, find_simple_system, LatticeKind};

fn main() -> rootdatum::Result<()> {
    for label in ["A2", "B2", "G2"] {
        let d = construct(label, LatticeKind::SimplyConnected)?;
        let delta = find_simple_system(&d, None)?;
        let h = delta.two_rho_check();
        let theta = delta.positive_roots().iter().max_by_key(|r| r.dot(&h)).unwrap().clone();
        let adjoint = freudenthal_multiplicities(&d, &delta, &theta)?;

        let report = blind_reconstruct(d.rank(), &[adjoint])?;
        let recovered = report.datum(label)?;
        println!(
            "{label}: {} roots over {} layers, saturated {}, matches {}",
            report.roots.len(),
            report.layers,
            report.saturated,
            recovered.same_as(&d)
        );
    }
    Ok(())
}
