//! Electromagnetic coupling through the matrix factors F1 and F2.
//!
//! Run with `cargo run --example coupling`.

use realdirac::algebra::Matrix8;
use realdirac::field::{FnField, DEFAULT_STEP};
use realdirac::free_field::{plane_wave_phi, PlaneWaveParams};
use realdirac::interaction::{
    coupling_scalar, f1_f2, interacting_residual, linear_current, linearization_study, CouplingParams,
};
use realdirac::spinor::family_psi;
use realdirac::{Error, FourVector, Point, RealField8};

fn main() -> realdirac::Result<()> {
    let params = CouplingParams::electron(1.0)?;
    println!("e = {:.15}, K = {}", params.e, params.big_k);

    let a = FourVector::new(3.0, -1.0, 0.5, 2.0);
    let (f1, f2) = f1_f2(&a, params.e, params.big_k)?;
    println!("|F1 F2 - 1| = {:.1e}", (f1 * f2 - Matrix8::<f64>::identity()).amax());
    println!("(e/K)^2 A.A = {:.6e}", coupling_scalar(&a, params.e, params.big_k));

    // A potential on the light cone of e/K makes 1 - a^2 vanish.
    let r = params.big_k / params.e.abs();
    match f1_f2(&FourVector::new(r, 0.0, 0.0, 0.0), params.e, params.big_k) {
        Err(Error::SingularCoupling { denominator, .. }) => println!("singular, 1 - s = {denominator:e}"),
        other => println!("unexpected: {other:?}"),
    }

    // The Lagrangian's first-order dependence on A is -A.j.
    let phi = RealField8::from_fn(|r, _| 0.3 + 0.1 * r as f64);
    let psi = family_psi(&phi, params.kappa);
    println!("current j = {}", linear_current(&phi, &psi, &params).transpose());
    let study = linearization_study(&phi, &psi, &a, &params, 0.01, 6)?;
    for (eps, err) in study.scales.iter().zip(&study.errors) {
        println!("  eps = {eps:.5}: error {err:.3e}");
    }
    println!("observed order {:.4}", study.asymptotic_order());

    // With no potential the plane wave solves the coupled equations.
    let wave = plane_wave_phi(PlaneWaveParams::new(params.kappa, 0.6, 1.0)?);
    let zero = FnField(|_x: Point| FourVector::zeros());
    let res = interacting_residual(&wave, &zero, &params, [0.2, 0.0, 0.0, 0.9], DEFAULT_STEP)?;
    println!("residuals {:.1e} {:.1e} {:.1e} {:.1e}", res.real_form, res.complex_form, res.dirac_a, res.dirac_b);
    Ok(())
}
