//! The Coulomb ground state, analytically and by radial shooting.
//!
//! Run with `cargo run --release --example hydrogen`.

use realdirac::cli::hydrogen_report;
use realdirac::interaction::{hydrogen_ground_state, shoot_ground_state, FINE_STRUCTURE};

fn main() -> realdirac::Result<()> {
    for z in [1.0, 40.0, 92.0] {
        let exact = hydrogen_ground_state(z, FINE_STRUCTURE, 1.0)?;
        let shot = shoot_ground_state(z, FINE_STRUCTURE, 1.0, 4000)?;
        println!(
            "Z = {z:>4}: k0 = {:.12} analytic, {:.12} shooting ({} bisections)",
            exact.k0, shot.k0, shot.bisection_steps
        );
    }

    let state = hydrogen_ground_state(1.0, FINE_STRUCTURE, 1.0)?;
    let a = state.length_scale();
    for r in [0.1 * a, a, 5.0 * a] {
        println!("r = {:>8.2}: g = {:.6e}, f = {:.6e}", r, state.g(r), state.f(r));
    }

    let (report, _) = hydrogen_report(1.0, FINE_STRUCTURE, 1.0, 4000)?;
    println!("Q = {:.12}, P0/k0 = {:.12}", report.q, report.p0_over_k0);
    println!(
        "integrals start at r = {:.3e} (singular shell at {:.3e}); excluded share {:.1e}",
        report.inner_radius, report.singular_radius, report.excluded_fraction
    );
    println!("Dirac residual {:.1e}, canonical {:.1e}", report.max_dirac_residual, report.max_canonical_residual);
    Ok(())
}
