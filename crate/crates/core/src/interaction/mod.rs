//! Coupling to an external electromagnetic four-potential.
//!
//! The coupling enters through `a = (e/K)A_βη^β`, whose square is the
//! scalar `s = (e/K)²A_βA^β`. The factors are `F₂ = 1 + a` and
//! `F₁ = (1 − a)/(1 − s) = (1 + a)⁻¹`. With `Ψ = DΦ` the Lagrangian is
//! `K[Ψ̄F₁Ψ − κ²Φ̄(1+a)Φ]` and the field equation for family solutions
//! `Ψ = (1+a)κNΦ` is `[D − κ(1+a)N]Φ = 0`.

mod hydrogen;

pub use hydrogen::{
    hydrogen_ground_state, shoot_ground_state, HydrogenDirac, HydrogenPhi, RadialGroundState, ShootingSolution,
};

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{Matrix4, Matrix8, MATRICES};
use crate::error::{Error, Result};
use crate::field::{partials, Field, FourVector, Point, RealField8, Spinor4, METRIC};
use crate::free_field::{bar, dirac_op};
use crate::spinor::to_dirac;

/// Fine-structure constant.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.035999;

/// Smallest `|1 − s|` at which `F₁` is still evaluated.
pub const SINGULAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingParams {
    pub kappa: f64,
    pub big_k: f64,
    /// Charge of the field quantum; negative for the electron.
    pub e: f64,
}

impl CouplingParams {
    pub fn new(kappa: f64, big_k: f64, e: f64) -> Result<Self> {
        if !(kappa > 0.0 && kappa.is_finite()) || !(big_k > 0.0 && big_k.is_finite()) || !e.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "need kappa > 0, K > 0 and finite e, got kappa = {kappa}, K = {big_k}, e = {e}"
            )));
        }
        Ok(Self { kappa, big_k, e })
    }

    /// `K = κ` and `e = −√α`.
    pub fn electron(kappa: f64) -> Result<Self> {
        Self::new(kappa, kappa, -FINE_STRUCTURE.sqrt())
    }

    pub fn ratio(&self) -> f64 {
        self.e / self.big_k
    }
}

fn lower4(a: &FourVector) -> FourVector {
    FourVector::from_fn(|m, _| METRIC[m] * a[m])
}

/// `a = (e/K)A_βη^β` for an upper-index potential value.
pub fn a_op(a_up: &FourVector, e: f64, big_k: f64) -> Matrix8<f64> {
    let low = lower4(a_up);
    (0..4).fold(Matrix8::zeros(), |acc, b| acc + MATRICES.eta[b] * (e / big_k * low[b]))
}

/// `ã = (e/K)A_βγ^β`.
pub fn a_op4(a_up: &FourVector, e: f64, big_k: f64) -> Matrix4<Complex64> {
    let low = lower4(a_up);
    (0..4).fold(Matrix4::zeros(), |acc, b| acc + MATRICES.gamma[b] * Complex64::new(e / big_k * low[b], 0.0))
}

/// The scalar `s` with `a² = s·1`.
pub fn coupling_scalar(a_up: &FourVector, e: f64, big_k: f64) -> f64 {
    (e / big_k).powi(2) * a_up.dot(&lower4(a_up))
}

/// `(F₁, F₂)` at one potential value.
pub fn f1_f2(a_up: &FourVector, e: f64, big_k: f64) -> Result<(Matrix8<f64>, Matrix8<f64>)> {
    let denominator = 1.0 - coupling_scalar(a_up, e, big_k);
    if denominator.abs() <= SINGULAR_TOLERANCE {
        return Err(Error::SingularCoupling { at: (*a_up).into(), denominator });
    }
    let a = a_op(a_up, e, big_k);
    let one = Matrix8::identity();
    Ok(((one - a) / denominator, one + a))
}

fn at_point<T>(r: Result<T>, x: Point) -> Result<T> {
    r.map_err(|e| match e {
        Error::SingularCoupling { denominator, .. } => Error::SingularCoupling { at: x, denominator },
        other => other,
    })
}

/// `K[Ψ̄F₁Ψ − κ²Φ̄(1+a)Φ]` from point values.
pub fn lagrangian_value(phi: &RealField8, psi: &RealField8, a_up: &FourVector, params: &CouplingParams) -> Result<f64> {
    let (f1, f2) = f1_f2(a_up, params.e, params.big_k)?;
    Ok(params.big_k * (bar(psi, &(f1 * psi)) - params.kappa.powi(2) * bar(phi, &(f2 * phi))))
}

/// Interacting Lagrangian density with `Ψ = DΦ`.
pub fn lagrangian_density_int<F, A>(phi: &F, potential: &A, params: &CouplingParams, x: Point, h: f64) -> Result<f64>
where
    F: Field<Value = RealField8> + ?Sized,
    A: Field<Value = FourVector> + ?Sized,
{
    let psi = dirac_op(phi, x, h)?;
    at_point(lagrangian_value(&phi.value(x), &psi, &potential.value(x), params), x)
}

/// `e(Ψ̄η^αΨ + κ²Φ̄η^αΦ)`, the current that couples linearly to `A_α`.
pub fn linear_current(phi: &RealField8, psi: &RealField8, params: &CouplingParams) -> FourVector {
    FourVector::from_fn(|al, _| {
        let eta = &MATRICES.eta[al];
        params.e * (bar(psi, &(eta * psi)) + params.kappa.powi(2) * bar(phi, &(eta * phi)))
    })
}

/// Linearization error `|L(εA) − L(0) + εA_α j^α|` for each ε, and the
/// observed order `log₂(err(ε)/err(ε/2))` between successive halvings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearizationStudy {
    pub scales: Vec<f64>,
    pub errors: Vec<f64>,
    pub orders: Vec<f64>,
}

impl LinearizationStudy {
    pub fn min_order(&self) -> f64 {
        self.orders.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Order from the two smallest scales.
    pub fn asymptotic_order(&self) -> f64 {
        self.orders.last().copied().unwrap_or(f64::NAN)
    }
}

/// Scale the potential by `ε₀, ε₀/2, …` (`levels` values) and compare the
/// Lagrangian with its first-order expansion.
pub fn linearization_study(
    phi: &RealField8,
    psi: &RealField8,
    a_up: &FourVector,
    params: &CouplingParams,
    eps0: f64,
    levels: usize,
) -> Result<LinearizationStudy> {
    let free = lagrangian_value(phi, psi, &FourVector::zeros(), params)?;
    let j = linear_current(phi, psi, params);
    let mut scales = Vec::with_capacity(levels);
    let mut errors = Vec::with_capacity(levels);
    for i in 0..levels {
        let eps = eps0 / 2f64.powi(i as i32);
        let a = a_up * eps;
        let full = lagrangian_value(phi, psi, &a, params)?;
        errors.push((full - (free - lower4(&a).dot(&j))).abs());
        scales.push(eps);
    }
    let orders = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    Ok(LinearizationStudy { scales, errors, orders })
}

/// Right-hand side of the wave equation for `A^α`:
/// `4πe[κ²Φ̄η^αΦ + Ψ̄η^αΨ/(1−s) − 2(e/K)A^αΨ̄(1−a)Ψ/(1−s)²]`.
pub fn em_source_value(phi: &RealField8, psi: &RealField8, a_up: &FourVector, params: &CouplingParams) -> Result<FourVector> {
    let s = coupling_scalar(a_up, params.e, params.big_k);
    let den = 1.0 - s;
    if den.abs() <= SINGULAR_TOLERANCE {
        return Err(Error::SingularCoupling { at: (*a_up).into(), denominator: den });
    }
    let a = a_op(a_up, params.e, params.big_k);
    let one_minus_a = Matrix8::identity() - a;
    let mixed = bar(psi, &(one_minus_a * psi));
    let four_pi_e = 4.0 * std::f64::consts::PI * params.e;
    Ok(FourVector::from_fn(|al, _| {
        let eta = &MATRICES.eta[al];
        four_pi_e
            * (params.kappa.powi(2) * bar(phi, &(eta * phi)) + bar(psi, &(eta * psi)) / den
                - 2.0 * params.ratio() * a_up[al] * mixed / (den * den))
    }))
}

/// `8πeκ²Φ̄η^αΦ`, the source for family solutions.
pub fn family_em_source_value(phi: &RealField8, params: &CouplingParams) -> FourVector {
    let c = 8.0 * std::f64::consts::PI * params.e * params.kappa.powi(2);
    FourVector::from_fn(|al, _| c * bar(phi, &(MATRICES.eta[al] * phi)))
}

/// Source at `x` from fields Φ and Ψ.
pub fn em_source<F, G, A>(phi: &F, psi: &G, potential: &A, params: &CouplingParams, x: Point) -> Result<FourVector>
where
    F: Field<Value = RealField8> + ?Sized,
    G: Field<Value = RealField8> + ?Sized,
    A: Field<Value = FourVector> + ?Sized,
{
    at_point(em_source_value(&phi.value(x), &psi.value(x), &potential.value(x), params), x)
}

/// Residuals of the coupled field equation in its four equivalent forms,
/// as Euclidean norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InteractingResiduals {
    /// `[D − κ(1+a)N]Φ`
    pub real_form: f64,
    /// `[iD − κ(1+a)]Ψ_I` with `Ψ_I = κ(1+iN)Φ`
    pub complex_form: f64,
    /// `[iγ∂ − κ(1+ã)]φ_a`
    pub dirac_a: f64,
    /// `[iγ∂ + κ(1+ã)]φ_b`
    pub dirac_b: f64,
    /// `|φ_a|`, for relative comparisons.
    pub spinor_norm: f64,
}

impl InteractingResiduals {
    pub fn max(&self) -> f64 {
        self.real_form.max(self.complex_form).max(self.dirac_a).max(self.dirac_b)
    }

    /// `|[iγ∂ − κ(1+ã)]φ_a| / (κ|φ_a|)`.
    pub fn dirac_a_relative(&self, kappa: f64) -> f64 {
        self.dirac_a / (kappa * self.spinor_norm)
    }
}

pub fn interacting_residual<F, A>(
    phi: &F,
    potential: &A,
    params: &CouplingParams,
    x: Point,
    h: f64,
) -> Result<InteractingResiduals>
where
    F: Field<Value = RealField8> + ?Sized,
    A: Field<Value = FourVector> + ?Sized,
{
    let m = &*MATRICES;
    let kappa = params.kappa;
    let a_up = potential.value(x);
    let (_, f2) = at_point(f1_f2(&a_up, params.e, params.big_k), x)?;
    let p = phi.value(x);
    let d = partials(phi, x, h)?;
    let dphi = (0..4).fold(RealField8::zeros(), |acc, al| acc + m.eta[al] * d[al]);

    let real = dphi - f2 * m.n * p * kappa;

    let i = Complex64::new(0.0, 1.0);
    let cx = |z: f64| Complex64::new(z, 0.0);
    let one_plus_in = Matrix8::<Complex64>::identity() + m.n.map(|z| Complex64::new(0.0, z));
    let complex =
        one_plus_in * dphi.map(cx) * (i * kappa) - f2.map(cx) * one_plus_in * p.map(cx) * cx(kappa * kappa);

    let at = a_op4(&a_up, params.e, params.big_k);
    let mass = (Matrix4::<Complex64>::identity() + at) * Complex64::new(kappa, 0.0);
    let pair = to_dirac(&p);
    let dpairs = d.map(|v| to_dirac(&v));
    let kinetic = |pick: fn(&crate::spinor::DiracPair) -> Spinor4| {
        (0..4).fold(Spinor4::zeros(), |acc, al| acc + m.gamma[al] * pick(&dpairs[al]) * i)
    };
    let res_a = kinetic(|q| q.phi_a) - mass * pair.phi_a;
    let res_b = kinetic(|q| q.phi_b) + mass * pair.phi_b;

    Ok(InteractingResiduals {
        real_form: real.norm(),
        complex_form: complex.norm(),
        dirac_a: res_a.norm(),
        dirac_b: res_b.norm(),
        spinor_norm: pair.phi_a.norm(),
    })
}

/// `χ = F₁DΦ`, the field whose Ψ_I combination is `κΦ + iχ`.
///
/// Evaluates to NaN where the coupling is singular; `contains` excludes
/// those points.
pub struct CoupledPartner<'a, F: ?Sized, A: ?Sized> {
    pub phi: &'a F,
    pub potential: &'a A,
    pub params: CouplingParams,
    pub h: f64,
}

impl<F, A> Field for CoupledPartner<'_, F, A>
where
    F: Field<Value = RealField8> + ?Sized,
    A: Field<Value = FourVector> + ?Sized,
{
    type Value = RealField8;

    fn value(&self, x: Point) -> RealField8 {
        let run = || -> Result<RealField8> {
            let (f1, _) = f1_f2(&self.potential.value(x), self.params.e, self.params.big_k)?;
            Ok(f1 * dirac_op(self.phi, x, self.h)?)
        };
        run().unwrap_or_else(|_| RealField8::from_element(f64::NAN))
    }

    fn contains(&self, x: Point) -> bool {
        self.phi.contains(x)
            && self.potential.contains(x)
            && (1.0 - coupling_scalar(&self.potential.value(x), self.params.e, self.params.big_k)).abs()
                > SINGULAR_TOLERANCE
    }
}

/// Momenta and canonical-equation residuals of the coupled system (`c = 1`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalReportInt {
    /// `Π_Φ = KΨ̄F₁η⁰`, stored transposed.
    pub momentum_phi: Vec<f64>,
    /// `Π_{Φ⁺} = KF₁Ψ`
    pub momentum_phi_adj: Vec<f64>,
    /// `DΦ − (1+a)Π_{Φ⁺}/K`
    pub eq_phi: f64,
    /// `(DΦ)‾ − Π_Φη⁰(1+a)/K`
    pub eq_phi_adj: f64,
    /// `D(Π_{Φ⁺}/K) + κ²(1+a)Φ`
    pub eq_momentum: f64,
    /// `(D(Π_{Φ⁺}/K))‾ + κ²Φ̄(1+a)`
    pub eq_momentum_adj: f64,
    /// Hamiltonian density from its canonical expression.
    pub hamiltonian: f64,
    /// `Π_Φ∂₀Φ + ∂₀Φ⁺Π_{Φ⁺} − L`
    pub legendre: f64,
    /// Scale for the residuals: `κ²|Φ|`.
    pub scale: f64,
}

impl CanonicalReportInt {
    pub fn max_residual(&self) -> f64 {
        [self.eq_phi, self.eq_phi_adj, self.eq_momentum, self.eq_momentum_adj].into_iter().fold(0.0, f64::max)
    }

    pub fn max_relative(&self) -> f64 {
        self.max_residual() / self.scale
    }
}

pub fn canonical_check_int<F, A>(
    phi: &F,
    potential: &A,
    params: &CouplingParams,
    x: Point,
    h: f64,
) -> Result<CanonicalReportInt>
where
    F: Field<Value = RealField8> + ?Sized,
    A: Field<Value = FourVector> + ?Sized,
{
    let m = &*MATRICES;
    let eta0 = &m.eta[0];
    let big_k = params.big_k;
    let k2 = params.kappa.powi(2);
    let a_up = potential.value(x);
    let (f1, f2) = at_point(f1_f2(&a_up, params.e, big_k), x)?;
    let p = phi.value(x);
    let dp = partials(phi, x, h)?;
    let psi = (0..4).fold(RealField8::zeros(), |acc, al| acc + m.eta[al] * dp[al]);

    let pi_adj = f1 * psi * big_k;
    let pi = (psi.transpose() * eta0 * f1 * eta0) * big_k;

    let eq_phi = psi - f2 * pi_adj / big_k;
    let eq_phi_adj = psi.transpose() * eta0 - pi * eta0 * f2 / big_k;

    let chi = CoupledPartner { phi, potential, params: *params, h };
    let dchi = partials(&chi, x, h)?;
    let d_chi = (0..4).fold(RealField8::zeros(), |acc, al| acc + m.eta[al] * dchi[al]);
    let eq_mom = d_chi + f2 * p * k2;
    let d_chi_bar = (0..4).fold(RealField8::zeros().transpose(), |acc, al| {
        acc + dchi[al].transpose() * m.eta[al].transpose() * eta0
    });
    let eq_mom_adj = d_chi_bar + p.transpose() * eta0 * f2 * k2;

    let spatial = (1..4).fold(RealField8::zeros(), |acc, j| acc + eta0 * m.eta[j] * dp[j]);
    let spatial_bar = (1..4).fold(RealField8::zeros().transpose(), |acc, j| acc + dp[j].transpose() * eta0 * m.eta[j]);
    let hamiltonian = (pi * eta0 * f2 * pi_adj)[(0, 0)] / big_k - (pi * spatial)[(0, 0)] - (spatial_bar * pi_adj)[(0, 0)]
        + big_k * k2 * bar(&p, &(f2 * p));
    let lagrangian = big_k * (bar(&psi, &(f1 * psi)) - k2 * bar(&p, &(f2 * p)));
    let legendre = (pi * dp[0])[(0, 0)] + (dp[0].transpose() * pi_adj)[(0, 0)] - lagrangian;

    Ok(CanonicalReportInt {
        momentum_phi: pi.iter().copied().collect(),
        momentum_phi_adj: pi_adj.iter().copied().collect(),
        eq_phi: eq_phi.amax(),
        eq_phi_adj: eq_phi_adj.amax(),
        eq_momentum: eq_mom.amax(),
        eq_momentum_adj: eq_mom_adj.amax(),
        hamiltonian,
        legendre,
        scale: k2 * p.norm(),
    })
}

/// Static Coulomb potential `A⁰ = strength/r` centred at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoulombPotential {
    pub strength: f64,
}

impl CoulombPotential {
    /// Nuclear charge `Z` attracting a field of charge `e`: strength `Z|e|`.
    pub fn nucleus(z: f64, e: f64) -> Self {
        Self { strength: z * e.abs() }
    }

    /// Radius of the sphere where `s = 1`.
    pub fn singular_radius(&self, params: &CouplingParams) -> f64 {
        (params.ratio() * self.strength).abs()
    }
}

impl Field for CoulombPotential {
    type Value = FourVector;

    fn value(&self, x: Point) -> FourVector {
        let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
        FourVector::new(self.strength / r, 0.0, 0.0, 0.0)
    }

    fn exact_partials(&self, x: Point) -> Option<[FourVector; 4]> {
        let r2 = x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        let r3 = r2 * r2.sqrt();
        Some(std::array::from_fn(|m| {
            let d = if m == 0 { 0.0 } else { -self.strength * x[m] / r3 };
            FourVector::new(d, 0.0, 0.0, 0.0)
        }))
    }

    fn contains(&self, x: Point) -> bool {
        x[1] * x[1] + x[2] * x[2] + x[3] * x[3] > 0.0
    }
}
