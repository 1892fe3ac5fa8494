//! Build the real matrices and check every identity they must satisfy.
//!
//! Run with `cargo run --example algebra`.

use realdirac::algebra::{eta, n_matrix, verify_algebra, verify_algebra_with, AlgebraSet, FLOAT_TOLERANCE};

fn main() -> realdirac::Result<()> {
    for alpha in 0..4 {
        println!("eta^{alpha} =\n{}", eta(alpha)?);
    }
    println!("N =\n{}", n_matrix());

    let report = verify_algebra();
    for check in &report.checks {
        println!("{:<28} {:>10.3e}  {}", check.identity_name, check.max_abs_deviation, if check.pass { "ok" } else { "FAIL" });
    }
    println!("all identities hold: {}", report.all_pass);

    // Flip one entry and the anticommutators involving it stop holding.
    let mut broken = AlgebraSet::standard();
    broken.eta[1][(0, 0)] += 1;
    let tampered = verify_algebra_with(&broken, FLOAT_TOLERANCE);
    let names: Vec<_> = tampered.failures().map(|c| c.identity_name.as_str()).collect();
    println!("after tampering, failing: {names:?}");
    Ok(())
}
