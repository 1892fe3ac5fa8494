//! Conversions between the real pair (Φ, Ψ), the complex combinations
//! Ψ_I = κΦ + iΨ, Ψ_II = κΦ − iΨ, and four-component Dirac spinor pairs.
//!
//! Component order of Φ is `(−A_x, −A_y, −A_z, f, C_x, C_y, C_z, −φ)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::MATRICES;
use crate::error::{Error, Result};
use crate::field::{ComplexField8, RealField8, Spinor4};

/// Absolute tolerance on imaginary residues when a complex field is declared real.
pub const REALITY_TOLERANCE: f64 = 1e-10;

/// The two four-component halves of `S·Φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracPair {
    pub phi_a: Spinor4,
    pub phi_b: Spinor4,
}

impl DiracPair {
    pub fn zeros() -> Self {
        Self { phi_a: Spinor4::zeros(), phi_b: Spinor4::zeros() }
    }

    /// `max |φ_b − N_b φ_a*|`; zero for pairs that come from a real Φ.
    pub fn reality_defect(&self) -> f64 {
        let nb = MATRICES.n_b.map(|v| Complex64::new(v, 0.0));
        let expected = nb * self.phi_a.map(|v| v.conj());
        (self.phi_b - expected).iter().fold(0.0, |m, v| m.max(v.norm()))
    }

    pub fn stacked(&self) -> ComplexField8 {
        ComplexField8::from_fn(|r, _| if r < 4 { self.phi_a[r] } else { self.phi_b[r - 4] })
    }
}

/// Serializable view of a pair, as `[re, im]` couples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiracPairJson {
    pub phi_a: Vec<[f64; 2]>,
    pub phi_b: Vec<[f64; 2]>,
}

impl From<&DiracPair> for DiracPairJson {
    fn from(p: &DiracPair) -> Self {
        let conv = |v: &Spinor4| v.iter().map(|z| [z.re, z.im]).collect();
        Self { phi_a: conv(&p.phi_a), phi_b: conv(&p.phi_b) }
    }
}

fn nonzero_kappa(kappa: f64) -> Result<()> {
    if kappa == 0.0 || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("kappa must be finite and non-zero, got {kappa}")));
    }
    Ok(())
}

pub fn complexify(v: &RealField8) -> ComplexField8 {
    v.map(|x| Complex64::new(x, 0.0))
}

/// Maximum `|Im|` over the components.
pub fn max_imag(v: &ComplexField8) -> f64 {
    v.iter().fold(0.0, |m, z| m.max(z.im.abs()))
}

/// `(Ψ_I, Ψ_II) = (κΦ + iΨ, κΦ − iΨ)`.
pub fn compose_psi12(phi: &RealField8, psi: &RealField8, kappa: f64) -> Result<(ComplexField8, ComplexField8)> {
    nonzero_kappa(kappa)?;
    let p1 = ComplexField8::from_fn(|r, _| Complex64::new(kappa * phi[r], psi[r]));
    let p2 = ComplexField8::from_fn(|r, _| Complex64::new(kappa * phi[r], -psi[r]));
    Ok((p1, p2))
}

/// Inverse of [`compose_psi12`]: `Φ = (Ψ_I + Ψ_II)/2κ`, `Ψ = (Ψ_I − Ψ_II)/2i`.
///
/// Both results must be real to within [`REALITY_TOLERANCE`]; the
/// residual imaginary parts are discarded after the check.
pub fn decompose_psi12(psi1: &ComplexField8, psi2: &ComplexField8, kappa: f64) -> Result<(RealField8, RealField8)> {
    nonzero_kappa(kappa)?;
    let phi = (psi1 + psi2) / Complex64::new(2.0 * kappa, 0.0);
    let psi = (psi1 - psi2) / Complex64::new(0.0, 2.0);
    let residue = max_imag(&phi).max(max_imag(&psi));
    if residue > REALITY_TOLERANCE {
        return Err(Error::RealityViolation { max_imag: residue, tolerance: REALITY_TOLERANCE });
    }
    Ok((phi.map(|z| z.re), psi.map(|z| z.re)))
}

/// `S·v` split into its two four-component halves.
pub fn to_dirac_complex(v: &ComplexField8) -> DiracPair {
    let w = MATRICES.s * v;
    DiracPair {
        phi_a: w.fixed_rows::<4>(0).into_owned(),
        phi_b: w.fixed_rows::<4>(4).into_owned(),
    }
}

/// `Φ' = S·Φ` for a real Φ.
pub fn to_dirac(phi: &RealField8) -> DiracPair {
    to_dirac_complex(&complexify(phi))
}

/// `S⁺·[φ_a; N_b φ_a*]` before the imaginary rounding residue is dropped.
pub fn lift_dirac(phi_a: &Spinor4) -> ComplexField8 {
    let nb = MATRICES.n_b.map(|v| Complex64::new(v, 0.0));
    let pair = DiracPair { phi_a: *phi_a, phi_b: nb * phi_a.map(|z| z.conj()) };
    MATRICES.s_adjoint * pair.stacked()
}

/// The real Φ whose upper Dirac half is `φ_a`.
pub fn from_dirac(phi_a: &Spinor4) -> RealField8 {
    lift_dirac(phi_a).map(|z| z.re)
}

/// `Ψ = κNΦ`, the partner field of the family solutions.
pub fn family_psi(phi: &RealField8, kappa: f64) -> RealField8 {
    MATRICES.n * phi * kappa
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unit(k: usize) -> RealField8 {
        RealField8::from_fn(|r, _| if r == k { 1.0 } else { 0.0 })
    }

    fn arb_real8() -> impl Strategy<Value = RealField8> {
        prop::array::uniform8(-2.0f64..2.0).prop_map(|a| RealField8::from_column_slice(&a))
    }

    fn arb_spinor() -> impl Strategy<Value = Spinor4> {
        prop::array::uniform8(-2.0f64..2.0)
            .prop_map(|a| Spinor4::from_fn(|r, _| Complex64::new(a[2 * r], a[2 * r + 1])))
    }

    #[test]
    fn pure_psi_gives_imaginary_pair() {
        let (p1, p2) = compose_psi12(&RealField8::zeros(), &unit(0), 1.7).unwrap();
        assert_eq!(p1[0], Complex64::new(0.0, 1.0));
        assert_eq!(p2[0], Complex64::new(0.0, -1.0));
        assert!(p1.iter().skip(1).all(|z| *z == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn equal_pair_decomposes_to_pure_phi() {
        let kappa = 2.5;
        let v = complexify(&(unit(2) * kappa));
        let (phi, psi) = decompose_psi12(&v, &v, kappa).unwrap();
        assert_relative_eq!(phi, unit(2), epsilon = 1e-15);
        assert_eq!(psi, RealField8::zeros());
    }

    #[test]
    fn non_conjugate_pair_violates_reality() {
        let mut p1 = complexify(&unit(0));
        let p2 = p1;
        p1[3] = Complex64::new(0.0, 1e-6);
        match decompose_psi12(&p1, &p2, 1.0) {
            Err(Error::RealityViolation { max_imag, .. }) => assert!(max_imag > 1e-7),
            other => panic!("expected reality violation, got {other:?}"),
        }
    }

    #[test]
    fn zero_kappa_is_rejected() {
        assert!(compose_psi12(&unit(0), &unit(1), 0.0).is_err());
    }

    #[test]
    fn from_dirac_matches_real_and_imag_pattern() {
        // φ_a = e_1 and i·e_1 pick out the first two rows of the explicit table.
        let s2 = std::f64::consts::SQRT_2;
        let mut a = Spinor4::zeros();
        a[0] = Complex64::new(1.0, 0.0);
        assert_relative_eq!(from_dirac(&a), unit(0) * -s2, epsilon = 1e-14);
        a[0] = Complex64::new(0.0, 1.0);
        assert_relative_eq!(from_dirac(&a), unit(1) * s2, epsilon = 1e-14);
    }

    #[test]
    fn from_dirac_full_table() {
        // Φ = √2 (−Re a1, Im a1, Re a2, −Im a2, −Im a3, −Re a3, Im a4, −Re a4)
        let a = Spinor4::new(
            Complex64::new(0.3, -1.1),
            Complex64::new(-0.7, 0.2),
            Complex64::new(1.9, 0.4),
            Complex64::new(-0.5, 0.8),
        );
        let s2 = std::f64::consts::SQRT_2;
        let expected = RealField8::from_column_slice(&[
            -a[0].re, a[0].im, a[1].re, -a[1].im, -a[2].im, -a[2].re, a[3].im, -a[3].re,
        ]) * s2;
        assert_relative_eq!(from_dirac(&a), expected, epsilon = 1e-14);
    }

    #[test]
    fn zero_field_maps_to_zero_pair() {
        assert_eq!(to_dirac(&RealField8::zeros()), DiracPair::zeros());
    }

    #[test]
    fn family_psi_examples() {
        let kappa = 0.8;
        assert_relative_eq!(family_psi(&unit(0), kappa), unit(1) * kappa);
        let phi = RealField8::from_fn(|r, _| (r as f64 * 0.37).sin());
        let twice = family_psi(&family_psi(&phi, kappa), kappa);
        assert_relative_eq!(twice, -phi * kappa * kappa, epsilon = 1e-14);
    }

    proptest! {
        #[test]
        fn compose_decompose_round_trip(phi in arb_real8(), psi in arb_real8(), kappa in 0.1f64..5.0) {
            let (p1, p2) = compose_psi12(&phi, &psi, kappa).unwrap();
            prop_assert!((p2 - p1.map(|z| z.conj())).iter().all(|z| z.norm() == 0.0));
            let (phi_back, psi_back) = decompose_psi12(&p1, &p2, kappa).unwrap();
            prop_assert!((phi_back - phi).amax() < 1e-14);
            prop_assert!((psi_back - psi).amax() < 1e-14);
        }

        #[test]
        fn real_fields_satisfy_conjugate_pairing(phi in arb_real8()) {
            let pair = to_dirac(&phi);
            prop_assert!(pair.reality_defect() < 1e-14);
            let norm_in = phi.norm();
            let norm_out = pair.stacked().norm();
            prop_assert!((norm_in - norm_out).abs() < 1e-13);
            prop_assert!((from_dirac(&pair.phi_a) - phi).amax() < 1e-14);
        }

        #[test]
        fn dirac_round_trip(a in arb_spinor()) {
            let lifted = lift_dirac(&a);
            prop_assert!(max_imag(&lifted) < 1e-14);
            let back = to_dirac(&from_dirac(&a)).phi_a;
            prop_assert!((back - a).iter().all(|z| z.norm() < 1e-14));
        }

        #[test]
        fn family_psi_preserves_norm(phi in arb_real8(), kappa in -3.0f64..3.0) {
            let psi = family_psi(&phi, kappa);
            prop_assert!((psi.norm_squared() - kappa * kappa * phi.norm_squared()).abs() < 1e-12);
            // Φ⁺Ψ − Ψ⁺Φ vanishes for real columns.
            prop_assert!((phi.dot(&psi) - psi.dot(&phi)).abs() == 0.0);
        }
    }

    proptest! {
        #[test]
        fn transform_preserves_norm(phi in arb_real8()) {
            let stacked = to_dirac(&phi).stacked();
            prop_assert!((stacked.norm() - phi.norm()).abs() < 1e-13 * (1.0 + phi.norm()));
        }
    }
}
