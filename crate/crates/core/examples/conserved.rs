//! Charge, energy-momentum and spin of the plane wave in a periodic box.
//!
//! Run with `cargo run --example conserved`.

use std::f64::consts::PI;

use realdirac::conserved::{conserved_set, select_normalization};
use realdirac::field::DEFAULT_STEP;
use realdirac::free_field::{plane_wave_phi, DiracOpField, PlaneWaveParams};
use realdirac::quadrature::PeriodicSlab;

fn main() -> realdirac::Result<()> {
    for (kappa, mode, box_l) in [(1.0, 1, 2.0 * PI), (2.0, 3, PI)] {
        let params = PlaneWaveParams::from_mode(kappa, mode, box_l)?;
        let slab = PeriodicSlab::for_plane_wave(&params, 64)?;
        let wave = plane_wave_phi(params);
        let chi = DiracOpField { phi: &wave, h: DEFAULT_STEP };
        let ledger = select_normalization(kappa, box_l, 1.0, 1.0)?;
        let set = conserved_set(&wave, &chi, &ledger, &slab, 0.0, DEFAULT_STEP)?;
        println!("kappa = {kappa}, k = {}, L = {box_l:.6}", params.k);
        println!("  Q = {:.15}", set.q);
        println!("  P = {:?}  (k0 = {:.15})", set.p, params.k0());
        println!("  S3 = {:.15}", set.s3);
        println!("  largest disagreement between routes {:.1e}", set.route_spread());

        // The momentum and spin scale with K; only K = kappa gives P = k.
        let doubled = ledger.with_big_k(2.0 * ledger.big_k);
        let off = conserved_set(&wave, &chi, &doubled, &slab, 0.0, DEFAULT_STEP)?;
        println!("  with K = 2 kappa: P0 = {:.6}, S3 = {:.6}", off.p[0], off.s3);
    }
    Ok(())
}
