//! Canonical momenta and Hamilton's equations for the free massive field.

use serde::Serialize;

use super::{dirac_op, DiracOpField};
use crate::algebra::MATRICES;
use crate::error::Result;
use crate::field::{dalembertian, partials, Field, Point, RealField8};

/// Momenta and residuals of the canonical equations at one point (`c = 1`).
///
/// Row quantities such as `Π_Φ` are stored as their transposes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalReport {
    /// `Π_Φ = KΨ⁺`
    pub momentum_phi: Vec<f64>,
    /// `Π_{Φ⁺} = KΨ`
    pub momentum_phi_adj: Vec<f64>,
    /// `∂₀Φ − (1/K)η⁰Π_{Φ⁺} + η⁰η^j∂_jΦ`
    pub phi_equation: f64,
    /// Adjoint of the above, built from `Π_Φ`.
    pub phi_adj_equation: f64,
    /// `DΨ + κ²Φ`
    pub psi_equation: f64,
    /// `∂₀Π_Φ + Kκ²Φ̄ + K∂_jΨ⁺η⁰η^j`
    pub momentum_equation: f64,
    /// `(∂_α∂^α + κ²)Φ`
    pub klein_gordon: f64,
}

impl CanonicalReport {
    pub fn max_residual(&self) -> f64 {
        [self.phi_equation, self.phi_adj_equation, self.psi_equation, self.momentum_equation, self.klein_gordon]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Evaluate the canonical formalism for `L = K(Ψ̄Ψ − κ²Φ̄Φ)` with `Ψ = DΦ`.
pub fn canonical_check<F>(phi: &F, kappa: f64, big_k: f64, x: Point, h: f64) -> Result<CanonicalReport>
where
    F: Field<Value = RealField8> + ?Sized,
{
    let m = &*MATRICES;
    let eta0 = &m.eta[0];
    let psi_field = DiracOpField { phi, h };
    let psi = dirac_op(phi, x, h)?;
    let dphi = partials(phi, x, h)?;
    let dpsi = partials(&psi_field, x, h)?;
    let p = phi.value(x);

    let pi_adj = psi * big_k;
    let pi = psi.transpose() * big_k;

    let spatial = (1..4).fold(RealField8::zeros(), |acc, j| acc + eta0 * m.eta[j] * dphi[j]);
    let phi_eq = dphi[0] - eta0 * pi_adj / big_k + spatial;

    // The adjoint equation reads ∂₀Φ⁺ = (1/K)Π_Φη⁰ − ∂_jΦ⁺η^{j+}η⁰.
    let spatial_adj = (1..4).fold(RealField8::zeros().transpose(), |acc, j| {
        acc + dphi[j].transpose() * m.eta[j].transpose() * eta0
    });
    let phi_adj_eq = dphi[0].transpose() - pi * eta0 / big_k + spatial_adj;

    let d_psi = (0..4).fold(RealField8::zeros(), |acc, a| acc + m.eta[a] * dpsi[a]);
    let psi_eq = d_psi + p * (kappa * kappa);

    let d0_pi = dpsi[0].transpose() * big_k;
    let flux = (1..4).fold(RealField8::zeros().transpose(), |acc, j| {
        acc + dpsi[j].transpose() * eta0 * m.eta[j] * big_k
    });
    let mom_eq = d0_pi + (p.transpose() * eta0) * (big_k * kappa * kappa) + flux;

    let kg = dalembertian(phi, x, h)? + p * (kappa * kappa);

    Ok(CanonicalReport {
        momentum_phi: pi.iter().copied().collect(),
        momentum_phi_adj: pi_adj.iter().copied().collect(),
        phi_equation: phi_eq.amax(),
        phi_adj_equation: phi_adj_eq.amax(),
        psi_equation: psi_eq.amax(),
        momentum_equation: mom_eq.amax(),
        klein_gordon: kg.amax(),
    })
}
