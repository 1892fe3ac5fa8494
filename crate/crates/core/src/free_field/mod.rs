//! Free-field operators, exact plane-wave solutions and the Maxwell
//! correspondence.

mod canonical;
mod maxwell;
mod plane_wave;

pub use canonical::{canonical_check, CanonicalReport};
pub use maxwell::{
    levi_civita, maxwell_assemble, maxwell_fields, maxwell_residual, phi_column, EmPotentials, MaxwellFields,
    VacuumWave,
};
pub use plane_wave::{dirac4_residual, plane_wave_dirac, plane_wave_phi, PlaneWave, PlaneWaveDirac, PlaneWaveParams};

use crate::algebra::MATRICES;
use crate::error::Result;
use crate::field::{partials, EightComponent, Field, FieldValue, Point, RealField8};

/// `DΦ = η^α ∂_α Φ`.
pub fn dirac_op<F>(field: &F, x: Point, h: f64) -> Result<F::Value>
where
    F: Field + ?Sized,
    F::Value: EightComponent,
{
    let d = partials(field, x, h)?;
    Ok((0..4).fold(F::Value::zero(), |acc, a| {
        acc.add_scaled(1.0, F::Value::apply(&MATRICES.eta[a], &d[a]))
    }))
}

/// `X̄Y = X⁺η⁰Y` for real columns.
pub fn bar(x: &RealField8, y: &RealField8) -> f64 {
    (0..8).map(|k| MATRICES.eta[0][(k, k)] * x[k] * y[k]).sum()
}

/// Field `Ψ = DΦ` built from a real Φ.
///
/// If Φ has exact second partials, Ψ has exact first partials.
pub struct DiracOpField<'a, F: ?Sized> {
    pub phi: &'a F,
    pub h: f64,
}

impl<F> Field for DiracOpField<'_, F>
where
    F: Field<Value = RealField8> + ?Sized,
{
    type Value = RealField8;

    fn value(&self, x: Point) -> RealField8 {
        dirac_op(self.phi, x, self.h).unwrap_or_else(|_| RealField8::from_element(f64::NAN))
    }

    fn exact_partials(&self, x: Point) -> Option<[RealField8; 4]> {
        let d2 = self.phi.exact_second_partials(x)?;
        Some(std::array::from_fn(|beta| {
            (0..4).fold(RealField8::zeros(), |acc, a| acc + MATRICES.eta[a] * d2[beta][a])
        }))
    }

    fn contains(&self, x: Point) -> bool {
        self.phi.contains(x)
    }
}

/// `L = K(Ψ̄Ψ − κ²Φ̄Φ)` with `Ψ = DΦ`; at κ = 0 this is the massless `KΨ̄Ψ`.
pub fn lagrangian_density<F>(phi: &F, kappa: f64, big_k: f64, x: Point, h: f64) -> Result<f64>
where
    F: Field<Value = RealField8> + ?Sized,
{
    let psi = dirac_op(phi, x, h)?;
    let p = phi.value(x);
    Ok(big_k * (bar(&psi, &psi) - kappa * kappa * bar(&p, &p)))
}
