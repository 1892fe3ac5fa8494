//! Evolve the plane wave on a periodic lattice and watch the error fall
//! as the grid is refined.
//!
//! Run with `cargo run --release --example evolution`.

use std::f64::consts::PI;

use realdirac::free_field::{plane_wave_phi, PlaneWaveParams};
use realdirac::lattice::{evolve, mass_rotation_check, EvolveConfig, Grid1D, LatticeState};

fn main() -> realdirac::Result<()> {
    let box_l = 2.0 * PI;
    let params = PlaneWaveParams::from_mode(1.0, 1, box_l)?;
    let wave = plane_wave_phi(params);
    let t_end = 10.0 * 2.0 * PI / params.k0();

    let mut previous: Option<(f64, f64)> = None;
    for n_z in [64, 128, 256] {
        let grid = Grid1D::new(n_z, box_l)?;
        let steps = (t_end / (grid.dz / 4.0)).round() as usize;
        let config = EvolveConfig { dt: t_end / steps as f64, n_steps: steps, sample_every: steps / 20 };
        let initial = LatticeState::sample(&wave, &grid, 0.0);
        let traj = evolve(&grid, &initial, &config, params.kappa, None, params.k, Some(&wave))?;
        let drift = traj.relative_charge_drift();
        let err = traj.max_phase_err().unwrap_or(f64::NAN);
        print!("n_z = {n_z:>3}: Q drift {drift:.2e}, error {err:.2e}, phase velocity {:.8}", traj.phase_velocity(params.k));
        if let Some((d, e)) = previous {
            print!("  (ratios {:.1}, {:.1})", d / drift, e / err);
        }
        println!();
        previous = Some((drift, err));
    }
    println!("exact phase velocity {:.8}", params.k0() / params.k);

    let spin = mass_rotation_check(1.0, 2.0 * PI / 2000.0, 2000)?;
    println!("uniform field after one mass period: returns to within {:.1e}", spin.return_distance);
    Ok(())
}
