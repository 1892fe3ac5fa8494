//! Charge, energy-momentum and spin functionals.
//!
//! Every functional takes the field Φ and a partner field χ. For the free
//! field χ = Ψ = DΦ; with an electromagnetic potential χ = F₁Ψ, so that
//! the complex combination is `Ψ_I = κΦ + iχ` in both cases. Each
//! functional is evaluated by more than one route; on family solutions
//! (`χ = κNΦ`) all routes agree.

use serde::Serialize;

use crate::algebra::MATRICES;
use crate::error::{Error, Result};
use crate::field::{partials, raise, Field, Point, RealField8, ComplexField8};
use crate::quadrature::Quadrature;
use crate::spinor::compose_psi12;

/// Normalization constants of the three functionals and the Lagrangian constant K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalizationLedger {
    pub const_q: f64,
    pub const_p: f64,
    pub const_m: f64,
    pub big_k: f64,
    pub kappa: f64,
    pub box_l: f64,
    pub c: f64,
    pub hbar: f64,
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// Constants that make a unit-density plane wave in an `L³` box carry unit
/// charge: `const_Q·4κ²L³ = 1`, `const_P·4κ²L³ = const_M·4κ²L³ = 1/c`,
/// with `K = ħcκ`.
pub fn select_normalization(kappa: f64, box_l: f64, c: f64, hbar: f64) -> Result<NormalizationLedger> {
    positive("kappa", kappa)?;
    positive("box side", box_l)?;
    positive("c", c)?;
    positive("hbar", hbar)?;
    let base = 1.0 / (4.0 * kappa * kappa * box_l.powi(3));
    Ok(NormalizationLedger {
        const_q: base,
        const_p: base / c,
        const_m: base / c,
        big_k: hbar * c * kappa,
        kappa,
        box_l,
        c,
        hbar,
    })
}

impl NormalizationLedger {
    /// All constants equal to one: the functionals return the raw integrals.
    pub fn unnormalized(kappa: f64, big_k: f64) -> Self {
        Self { const_q: 1.0, const_p: 1.0, const_m: 1.0, big_k, kappa, box_l: f64::NAN, c: 1.0, hbar: 1.0 }
    }

    /// Constants for a bound state with `∫(g² + f²)d³x = norm_integral`:
    /// `const_Q (κ²/π) ∫(g² + f²) = 1`, and `const_P = const_M = const_Q/c`.
    pub fn for_bound_state(kappa: f64, norm_integral: f64, c: f64, hbar: f64) -> Result<Self> {
        positive("kappa", kappa)?;
        positive("norm integral", norm_integral)?;
        let q = std::f64::consts::PI / (kappa * kappa * norm_integral);
        Ok(Self { const_q: q, const_p: q / c, const_m: q / c, big_k: hbar * c * kappa, kappa, box_l: f64::NAN, c, hbar })
    }

    /// Replace K, keeping the constants.
    pub fn with_big_k(mut self, big_k: f64) -> Self {
        self.big_k = big_k;
        self
    }

    /// `4κ²L³·const_Q`; equals 1 after [`select_normalization`].
    pub fn charge_product(&self) -> f64 {
        self.const_q * 4.0 * self.kappa * self.kappa * self.box_l.powi(3)
    }
}

/// `(κΦ + iχ)` as a field.
pub struct ComplexCombination<P, C> {
    pub phi: P,
    pub chi: C,
    pub kappa: f64,
}

impl<P, C> Field for ComplexCombination<P, C>
where
    P: Field<Value = RealField8>,
    C: Field<Value = RealField8>,
{
    type Value = ComplexField8;

    fn value(&self, x: Point) -> ComplexField8 {
        combine(&self.phi.value(x), &self.chi.value(x), self.kappa)
    }

    fn exact_partials(&self, x: Point) -> Option<[ComplexField8; 4]> {
        let dp = self.phi.exact_partials(x)?;
        let dc = self.chi.exact_partials(x)?;
        Some(std::array::from_fn(|a| combine(&dp[a], &dc[a], self.kappa)))
    }

    fn contains(&self, x: Point) -> bool {
        self.phi.contains(x) && self.chi.contains(x)
    }
}

fn combine(phi: &RealField8, chi: &RealField8, kappa: f64) -> ComplexField8 {
    ComplexField8::from_fn(|r, _| num_complex::Complex64::new(kappa * phi[r], chi[r]))
}

/// `χ = κNΦ` as a field, with exact partials whenever Φ has them.
pub struct FamilyPartner<P> {
    pub phi: P,
    pub kappa: f64,
}

impl<P: Field<Value = RealField8>> Field for FamilyPartner<P> {
    type Value = RealField8;

    fn value(&self, x: Point) -> RealField8 {
        MATRICES.n * self.phi.value(x) * self.kappa
    }

    fn exact_partials(&self, x: Point) -> Option<[RealField8; 4]> {
        let d = self.phi.exact_partials(x)?;
        Some(d.map(|v| MATRICES.n * v * self.kappa))
    }

    fn exact_second_partials(&self, x: Point) -> Option<[[RealField8; 4]; 4]> {
        let d = self.phi.exact_second_partials(x)?;
        Some(d.map(|row| row.map(|v| MATRICES.n * v * self.kappa)))
    }

    fn contains(&self, x: Point) -> bool {
        self.phi.contains(x)
    }
}

/// `∂_α(Ψ_I⁺η⁰η^αΨ_I)` at one point.
pub fn continuity_residual<F>(psi1: &F, x: Point, h: f64) -> Result<f64>
where
    F: Field<Value = ComplexField8> + ?Sized,
{
    let m = &*MATRICES;
    let v = psi1.value(x);
    let d = partials(psi1, x, h)?;
    let mut div = 0.0;
    for a in 0..4 {
        let k = (m.eta[0] * m.eta[a]).map(|e| num_complex::Complex64::new(e, 0.0));
        div += 2.0 * (v.adjoint() * k * d[a])[(0, 0)].re;
    }
    Ok(div)
}

/// Charge by each route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChargeRoutes {
    /// `∫(κ²Φ⁺Φ + χ⁺χ)`
    pub general: f64,
    /// `∫|Ψ_I|²`
    pub complex: f64,
    /// `∫2κ²Φ⁺Φ`
    pub family: f64,
}

/// `P^α` by each route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumRoutes {
    /// `K∫(χ⁺∂^αΦ − Φ⁺∂^αχ)`
    pub general: [f64; 4],
    /// `(K/κ)∫Re(Ψ_I⁺ i∂^αΨ_I)`
    pub complex: [f64; 4],
    /// `−2κK∫Φ⁺∂^αNΦ`
    pub family: [f64; 4],
}

/// `S³` by each route.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinRoutes {
    /// `(K/2)∫(χ⁺η¹η²Φ − Φ⁺η¹η²χ)`
    pub general: f64,
    /// `−κK∫Φ⁺η¹η²NΦ`, the reduction of the general form on family solutions.
    pub family: f64,
    /// `+κK∫Φ⁺η¹η²NΦ`, the family shortcut with the opposite overall sign.
    pub family_opposite_sign: f64,
    /// `κK∫Φ⁺η¹η²Φ`, which vanishes identically because `η¹η²` is antisymmetric.
    pub without_n: f64,
}

/// Integrals multiplied by their normalization constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservedSet {
    pub q: f64,
    pub p: [f64; 4],
    pub s3: f64,
    pub charge: ChargeRoutes,
    pub momentum: MomentumRoutes,
    pub spin: SpinRoutes,
}

impl ConservedSet {
    /// Largest relative disagreement between the general route and the
    /// family and complex routes. Small only for family solutions.
    pub fn route_spread(&self) -> f64 {
        let rel = |a: f64, b: f64, scale: f64| (a - b).abs() / scale.max(f64::MIN_POSITIVE);
        let qs = self.charge.general.abs();
        let ps = self.momentum.general.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut spread = rel(self.charge.general, self.charge.family, qs).max(rel(self.charge.general, self.charge.complex, qs));
        for a in 0..4 {
            spread = spread
                .max(rel(self.momentum.general[a], self.momentum.family[a], ps))
                .max(rel(self.momentum.general[a], self.momentum.complex[a], ps));
        }
        spread.max(rel(self.spin.general, self.spin.family, self.spin.general.abs()))
    }
}

#[derive(Clone, Copy)]
struct Densities {
    q: [f64; 3],
    p: [[f64; 4]; 3],
    s: [f64; 4],
}

impl std::ops::Add for Densities {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            q: std::array::from_fn(|i| self.q[i] + o.q[i]),
            p: std::array::from_fn(|i| std::array::from_fn(|a| self.p[i][a] + o.p[i][a])),
            s: std::array::from_fn(|i| self.s[i] + o.s[i]),
        }
    }
}

impl std::ops::Mul<f64> for Densities {
    type Output = Self;
    fn mul(self, w: f64) -> Self {
        Self { q: self.q.map(|v| v * w), p: self.p.map(|r| r.map(|v| v * w)), s: self.s.map(|v| v * w) }
    }
}

fn densities<P, C>(phi: &P, chi: &C, kappa: f64, big_k: f64, x: Point, h: f64) -> Result<Densities>
where
    P: Field<Value = RealField8> + ?Sized,
    C: Field<Value = RealField8> + ?Sized,
{
    let m = &*MATRICES;
    let p = phi.value(x);
    let c = chi.value(x);
    let dp = raise(partials(phi, x, h)?);
    let dc = raise(partials(chi, x, h)?);
    let (psi1, _) = compose_psi12(&p, &c, kappa)?;
    let i = num_complex::Complex64::new(0.0, 1.0);

    let k2 = kappa * kappa;
    let q = [k2 * p.norm_squared() + c.norm_squared(), psi1.norm_squared(), 2.0 * k2 * p.norm_squared()];

    let mut mom = [[0.0; 4]; 3];
    for a in 0..4 {
        mom[0][a] = big_k * (c.dot(&dp[a]) - p.dot(&dc[a]));
        let dpsi1 = combine(&dp[a], &dc[a], kappa);
        mom[1][a] = big_k / kappa * (psi1.adjoint() * dpsi1 * i)[(0, 0)].re;
        mom[2][a] = -2.0 * kappa * big_k * p.dot(&(m.n * dp[a]));
    }

    let e12 = m.eta[1] * m.eta[2];
    let e12n = e12 * m.n;
    let s = [
        0.5 * big_k * (c.dot(&(e12 * p)) - p.dot(&(e12 * c))),
        -kappa * big_k * p.dot(&(e12n * p)),
        kappa * big_k * p.dot(&(e12n * p)),
        kappa * big_k * p.dot(&(e12 * p)),
    ];
    Ok(Densities { q, p: mom, s })
}

/// Integrate all functionals at time `t` over `quad`.
pub fn conserved_set<P, C, Q>(
    phi: &P,
    chi: &C,
    ledger: &NormalizationLedger,
    quad: &Q,
    t: f64,
    h: f64,
) -> Result<ConservedSet>
where
    P: Field<Value = RealField8> + ?Sized,
    C: Field<Value = RealField8> + ?Sized,
    Q: Quadrature,
{
    let kappa = ledger.kappa;
    let big_k = ledger.big_k;
    let d = quad.integrate(t, |x| densities(phi, chi, kappa, big_k, x, h))?;
    let cq = ledger.const_q;
    let cp = ledger.const_p;
    let cm = ledger.const_m;
    let charge = ChargeRoutes { general: cq * d.q[0], complex: cq * d.q[1], family: cq * d.q[2] };
    let momentum = MomentumRoutes {
        general: d.p[0].map(|v| cp * v),
        complex: d.p[1].map(|v| cp * v),
        family: d.p[2].map(|v| cp * v),
    };
    let spin = SpinRoutes {
        general: cm * d.s[0],
        family: cm * d.s[1],
        family_opposite_sign: cm * d.s[2],
        without_n: cm * d.s[3],
    };
    Ok(ConservedSet { q: charge.general, p: momentum.general, s3: spin.general, charge, momentum, spin })
}

pub fn charge_q<P, C, Q>(phi: &P, chi: &C, ledger: &NormalizationLedger, quad: &Q, t: f64, h: f64) -> Result<f64>
where
    P: Field<Value = RealField8> + ?Sized,
    C: Field<Value = RealField8> + ?Sized,
    Q: Quadrature,
{
    Ok(conserved_set(phi, chi, ledger, quad, t, h)?.q)
}

pub fn momentum_p<P, C, Q>(phi: &P, chi: &C, ledger: &NormalizationLedger, quad: &Q, t: f64, h: f64) -> Result<[f64; 4]>
where
    P: Field<Value = RealField8> + ?Sized,
    C: Field<Value = RealField8> + ?Sized,
    Q: Quadrature,
{
    Ok(conserved_set(phi, chi, ledger, quad, t, h)?.p)
}

pub fn spin_s3<P, C, Q>(phi: &P, chi: &C, ledger: &NormalizationLedger, quad: &Q, t: f64, h: f64) -> Result<f64>
where
    P: Field<Value = RealField8> + ?Sized,
    C: Field<Value = RealField8> + ?Sized,
    Q: Quadrature,
{
    Ok(conserved_set(phi, chi, ledger, quad, t, h)?.s3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FnField, DEFAULT_STEP};
    use crate::free_field::{plane_wave_phi, DiracOpField, PlaneWaveParams};
    use crate::quadrature::PeriodicSlab;
    use std::f64::consts::PI;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn setup(kappa: f64, mode: i64, box_l: f64) -> (PlaneWaveParams, PeriodicSlab) {
        let params = PlaneWaveParams::from_mode(kappa, mode, box_l).unwrap();
        let slab = PeriodicSlab::for_plane_wave(&params, 64).unwrap();
        (params, slab)
    }

    #[test]
    fn ledger_constants() {
        let l = select_normalization(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(l.const_q, 0.25);
        let l = select_normalization(2.3, 0.7, 3.0, 1.0).unwrap();
        assert_eq!(l.const_p, l.const_m);
        assert!((l.charge_product() - 1.0).abs() < 1e-15);
        assert!((l.const_p * 4.0 * 2.3 * 2.3 * 0.7f64.powi(3) - 1.0 / 3.0).abs() < 1e-15);
        assert!(select_normalization(0.0, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn unnormalized_plane_wave_integrals() {
        for (kappa, mode, box_l) in [(1.0, 1, 2.0 * PI), (2.0, 3, PI)] {
            let (params, slab) = setup(kappa, mode, box_l);
            let wave = plane_wave_phi(params);
            let big_k = 1.7;
            let ledger = NormalizationLedger::unnormalized(kappa, big_k);
            let chi = DiracOpField { phi: &wave, h: DEFAULT_STEP };
            let set = conserved_set(&wave, &chi, &ledger, &slab, 0.3, DEFAULT_STEP).unwrap();
            let vol = 4.0 * kappa * kappa * box_l.powi(3);
            assert!((set.q / vol - 1.0).abs() < 1e-12);
            let k = params.wave_vector();
            for a in 0..4 {
                let expected = vol * big_k / kappa * k[a];
                assert!((set.p[a] - expected).abs() < 1e-11 * vol * big_k, "P{a}: {} vs {expected}", set.p[a]);
            }
            assert!((set.s3 / (vol * big_k / (2.0 * kappa)) - 1.0).abs() < 1e-12);
            assert!(set.route_spread() < 1e-12);
            assert!(set.spin.without_n.abs() < 1e-12 * vol);
            assert!((set.spin.family_opposite_sign + set.spin.family).abs() < 1e-12 * vol);
        }
    }

    #[test]
    fn normalized_plane_wave_carries_unit_charge() {
        let (params, slab) = setup(1.0, 1, 2.0 * PI);
        let wave = plane_wave_phi(params);
        let ledger = select_normalization(1.0, 2.0 * PI, 1.0, 1.0).unwrap();
        let chi = FamilyPartner { phi: &wave, kappa: 1.0 };
        let set = conserved_set(&wave, &chi, &ledger, &slab, 0.0, DEFAULT_STEP).unwrap();
        assert!((set.q - 1.0).abs() < 1e-12);
        assert!((set.p[0] - params.k0()).abs() < 1e-12);
        assert!((set.p[3] - params.k).abs() < 1e-12);
        assert!((set.s3 - 0.5).abs() < 1e-12);

        let doubled = conserved_set(&wave, &chi, &ledger.with_big_k(2.0), &slab, 0.0, DEFAULT_STEP).unwrap();
        assert!((doubled.s3 - 0.5).abs() > 0.4);
    }

    #[test]
    fn functionals_are_constant_in_time() {
        let (params, slab) = setup(1.3, 2, 2.0 * PI);
        let wave = plane_wave_phi(params);
        let ledger = select_normalization(1.3, 2.0 * PI, 1.0, 1.0).unwrap();
        let chi = FamilyPartner { phi: &wave, kappa: 1.3 };
        let a = conserved_set(&wave, &chi, &ledger, &slab, 0.0, DEFAULT_STEP).unwrap();
        let b = conserved_set(&wave, &chi, &ledger, &slab, 7.1, DEFAULT_STEP).unwrap();
        assert!((a.q - b.q).abs() < 1e-12 && (a.s3 - b.s3).abs() < 1e-12);
        assert!((0..4).all(|i| (a.p[i] - b.p[i]).abs() < 1e-12));
    }

    #[test]
    fn zero_field_has_zero_functionals() {
        let zero = FnField(|_x: Point| RealField8::zeros());
        let slab = PeriodicSlab::new(1.0, 16).unwrap();
        let set = conserved_set(&zero, &zero, &NormalizationLedger::unnormalized(1.0, 1.0), &slab, 0.0, 1e-3).unwrap();
        assert_eq!(set.q, 0.0);
        assert_eq!(set.s3, 0.0);
        assert_eq!(set.p, [0.0; 4]);
    }

    #[test]
    fn continuity_holds_for_plane_wave_and_fails_for_growing_field() {
        let params = PlaneWaveParams::new(1.0, 0.8, 1.0).unwrap();
        let wave = plane_wave_phi(params);
        let psi1 = ComplexCombination { phi: &wave, chi: FamilyPartner { phi: &wave, kappa: 1.0 }, kappa: 1.0 };
        assert!(continuity_residual(&psi1, [0.2, 0.0, 0.0, 0.9], 1e-3).unwrap().abs() < 1e-12);

        let constant = FnField(|_x: Point| ComplexField8::from_element(num_complex::Complex64::new(0.3, -0.2)));
        assert!(continuity_residual(&constant, [0.0; 4], 1e-3).unwrap().abs() < 1e-14);

        let growing = FnField(|x: Point| {
            let mut v = ComplexField8::zeros();
            v[0] = num_complex::Complex64::new(x[0], 0.0);
            v
        });
        let r = continuity_residual(&growing, [0.7, 0.0, 0.0, 0.0], 1e-3).unwrap();
        assert!((r - 1.4).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn complex_density_splits_into_real_parts(
            phi in prop::array::uniform8(-2.0f64..2.0),
            psi in prop::array::uniform8(-2.0f64..2.0),
            kappa in 0.1f64..4.0,
        ) {
            let (phi, psi) = (RealField8::from(phi), RealField8::from(psi));
            let combined = phi.map(|v| Complex64::new(kappa * v, 0.0)) + psi.map(|v| Complex64::new(0.0, v));
            let split = kappa * kappa * phi.norm_squared() + psi.norm_squared();
            prop_assert!((combined.norm_squared() - split).abs() < 1e-12 * (1.0 + split));
        }

        #[test]
        fn functionals_agree_at_any_two_times(mode in 1i64..4, t1 in -20.0f64..20.0, t2 in -20.0f64..20.0) {
            let (params, slab) = setup(1.3, mode, 2.0 * PI);
            let ledger = select_normalization(params.kappa, params.box_l, 1.0, 1.0).unwrap();
            let wave = plane_wave_phi(params);
            let chi = DiracOpField { phi: &wave, h: DEFAULT_STEP };
            let a = conserved_set(&wave, &chi, &ledger, &slab, t1, DEFAULT_STEP).unwrap();
            let b = conserved_set(&wave, &chi, &ledger, &slab, t2, DEFAULT_STEP).unwrap();
            prop_assert!((a.q - b.q).abs() < 1e-10);
            prop_assert!((a.s3 - b.s3).abs() < 1e-10);
            for i in 0..4 {
                prop_assert!((a.p[i] - b.p[i]).abs() < 1e-10);
            }
        }
    }
}
