//! The free plane wave along z: dispersion, normalization and residuals.
//!
//! Run with `cargo run --example plane_wave`.

use realdirac::algebra::MATRICES;
use realdirac::field::{dalembertian, Field, DEFAULT_STEP};
use realdirac::free_field::{canonical_check, dirac_op, plane_wave_phi, PlaneWave, PlaneWaveParams};

fn main() -> realdirac::Result<()> {
    let params = PlaneWaveParams::new(1.0, 0.75, 1.0)?;
    let wave = plane_wave_phi(params);
    println!("kappa = {}, k = {}, k0 = {:.15}", params.kappa, params.k, params.k0());

    for x in [[0.0, 0.0, 0.0, 0.0], [0.4, 0.1, -0.3, 1.7], [3.0, 2.0, 1.0, -5.0]] {
        let phi = wave.value(x);
        let first = (dirac_op(&wave, x, DEFAULT_STEP)? - MATRICES.n * phi * params.kappa).amax();
        let second = (dalembertian(&wave, x, DEFAULT_STEP)? + phi * params.kappa.powi(2)).amax();
        let canon = canonical_check(&wave, params.kappa, params.kappa, x, DEFAULT_STEP)?;
        println!(
            "x = {x:?}: Phi+Phi = {:.15}, first order {first:.1e}, second order {second:.1e}, canonical {:.1e}",
            phi.norm_squared(),
            canon.max_residual()
        );
    }

    // Off the mass shell the first-order equation fails by about |omega - k0|.
    let detuned = PlaneWave::detuned(params, params.k0() + 0.1);
    let x = [0.3, 0.0, 0.0, 0.2];
    let miss = (dirac_op(&detuned, x, DEFAULT_STEP)? - MATRICES.n * detuned.value(x) * params.kappa).amax();
    println!("detuned by 0.1: residual {miss:.3}");
    Ok(())
}
