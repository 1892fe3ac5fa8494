//! Move between the real eight-component field and Dirac spinors.
//!
//! Run with `cargo run --example transform`.

use num_complex::Complex64;
use realdirac::spinor::{compose_psi12, decompose_psi12, family_psi, from_dirac, to_dirac};
use realdirac::Spinor4;

fn main() -> realdirac::Result<()> {
    let i = Complex64::new(0.0, 1.0);
    let phi_a = Spinor4::new(Complex64::new(0.6, 0.0), 0.3 * i, Complex64::new(-0.2, 0.1), Complex64::new(0.0, 0.0));

    // A four-component spinor fixes a real Φ; the lower half comes back
    // as the conjugate partner.
    let phi = from_dirac(&phi_a);
    println!("Phi = {}", phi.transpose());
    let pair = to_dirac(&phi);
    println!("phi_a recovered to {:.1e}", (pair.phi_a - phi_a).camax());
    println!("reality defect {:.1e}", pair.reality_defect());
    println!("|Phi| = {:.15}, |S Phi| = {:.15}", phi.norm(), pair.stacked().norm());

    // The complex pair (Psi_I, Psi_II) built from (Phi, Psi) and back.
    let kappa = 1.5;
    let psi = family_psi(&phi, kappa);
    let (p1, p2) = compose_psi12(&phi, &psi, kappa)?;
    let (phi_back, psi_back) = decompose_psi12(&p1, &p2, kappa)?;
    println!("round trip error {:.1e}", (phi_back - phi).amax().max((psi_back - psi).amax()));

    // A pair that is not conjugate-symmetric has no real preimage.
    let bad = p1.map(|z| z * i);
    match decompose_psi12(&bad, &p1, kappa) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("unexpectedly accepted"),
    }
    Ok(())
}
