//! Maxwell's equations carried by the real field.
//!
//! The vector potential and an auxiliary dual potential fill the eight
//! slots; the Dirac operator then yields (E, F, B, G).
//!
//! Run with `cargo run --example maxwell`.

use realdirac::field::{FnField, DEFAULT_STEP};
use realdirac::free_field::{dirac_op, maxwell_fields, maxwell_residual, EmPotentials, VacuumWave};
use realdirac::{FourVector, Point};

fn main() -> realdirac::Result<()> {
    let omega = 2.0;
    let wave = VacuumWave {
        polarization: FourVector::new(0.0, 1.0, 0.0, 0.0),
        wave_vector: FourVector::new(omega, 0.0, 0.0, omega),
    };
    let em = EmPotentials { a: wave, c: VacuumWave::zero() };
    let x: Point = [0.3, 0.1, -0.2, 0.7];

    let fields = maxwell_fields(&em, x, DEFAULT_STEP)?;
    println!("E = {:?}", fields.electric());
    println!("B = {:?}", fields.magnetic());
    println!("F = {:.1e}, G = {:.1e}", fields.f_scalar, fields.g_scalar);
    let direct = dirac_op(&em, x, DEFAULT_STEP)?;
    println!("slot assembly vs D Phi: {:.1e}", (fields.psi_column() - direct).amax());

    let [ra, rc] = maxwell_residual(&em, x, DEFAULT_STEP)?;
    println!("vacuum wave residuals: {:.1e} {:.1e}", ra.amax(), rc.amax());

    let pump = FnField(|x: Point| FourVector::new(0.0, x[0].sin(), 0.0, 0.0));
    let [ra, _] = maxwell_residual(&EmPotentials { a: &pump, c: VacuumWave::zero() }, x, DEFAULT_STEP)?;
    println!("A^1 = sin t is not a vacuum solution: {:.3}", ra.amax());
    Ok(())
}
