//! Time evolution of the real field on a periodic line along z.
//!
//! The equation `[D − κ(1+a)N]Φ = 0` restricted to fields that depend on
//! `(t, z)` only is solved for the time derivative,
//! `∂₀Φ = η⁰(κ(1+a)NΦ − η³∂_zΦ)`, with a fourth-order periodic stencil in
//! z and classical RK4 in time. Everything stays real.

use serde::Serialize;

use crate::algebra::{Matrix4, Matrix8, MATRICES};
use crate::conserved::{select_normalization, NormalizationLedger};
use crate::error::{Error, Result};
use crate::field::{Field, FieldValue, FourVector, RealField8, Spinor4};
use crate::free_field::PlaneWave;
use crate::interaction::{a_op, coupling_scalar, CouplingParams, SINGULAR_TOLERANCE};
use crate::spinor::to_dirac;

/// Largest accepted `dt/dz`.
pub const CFL_LIMIT: f64 = 0.5;

/// Smallest accepted number of grid points.
pub const MIN_POINTS: usize = 16;

/// Uniform periodic grid `z_i = i·dz`, `i = 0..n_z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    pub n_z: usize,
    pub dz: f64,
}

impl Grid1D {
    pub fn new(n_z: usize, box_l: f64) -> Result<Self> {
        if n_z < MIN_POINTS {
            return Err(Error::InvalidParameter(format!("grid needs at least {MIN_POINTS} points, got {n_z}")));
        }
        if !(box_l > 0.0 && box_l.is_finite()) {
            return Err(Error::InvalidParameter(format!("box side must be positive, got {box_l}")));
        }
        Ok(Self { n_z, dz: box_l / n_z as f64 })
    }

    pub fn box_l(&self) -> f64 {
        self.dz * self.n_z as f64
    }

    pub fn z(&self, i: usize) -> f64 {
        i as f64 * self.dz
    }

    /// Fourth-order periodic first derivative.
    pub fn derivative<V: FieldValue>(&self, f: &[V]) -> Vec<V> {
        let n = self.n_z;
        let c = 1.0 / (12.0 * self.dz);
        (0..n)
            .map(|i| {
                let at = |k: isize| f[(i as isize + k).rem_euclid(n as isize) as usize];
                let near = at(1).add_scaled(-1.0, at(-1));
                let far = at(2).add_scaled(-1.0, at(-2));
                V::zero().add_scaled(8.0 * c, near).add_scaled(-c, far)
            })
            .collect()
    }
}

/// Φ on the grid at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeState {
    pub t: f64,
    pub phi: Vec<RealField8>,
}

impl LatticeState {
    pub fn zeros(grid: &Grid1D) -> Self {
        Self { t: 0.0, phi: vec![RealField8::zeros(); grid.n_z] }
    }

    /// Sample a field at `(t, 0, 0, z_i)`.
    pub fn sample<F: Field<Value = RealField8> + ?Sized>(field: &F, grid: &Grid1D, t: f64) -> Self {
        Self { t, phi: (0..grid.n_z).map(|i| field.value([t, 0.0, 0.0, grid.z(i)])).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolveConfig {
    pub dt: f64,
    pub n_steps: usize,
    /// Record monitors every this many steps (and at the start and end).
    pub sample_every: usize,
}

impl EvolveConfig {
    pub fn cfl(&self, grid: &Grid1D) -> f64 {
        self.dt / grid.dz
    }

    pub fn validate(&self, grid: &Grid1D) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) || self.sample_every == 0 {
            return Err(Error::InvalidParameter(format!(
                "need dt > 0 and sample_every > 0, got dt = {}, sample_every = {}",
                self.dt, self.sample_every
            )));
        }
        let cfl = self.cfl(grid);
        if cfl > CFL_LIMIT {
            return Err(Error::CflViolation { cfl, limit: CFL_LIMIT });
        }
        Ok(())
    }
}

/// A static potential `A(z)` sampled on the grid, stored as `a` matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticPotential {
    pub a: Vec<Matrix8<f64>>,
}

impl StaticPotential {
    pub fn sample(grid: &Grid1D, params: &CouplingParams, potential: impl Fn(f64) -> FourVector) -> Result<Self> {
        let mut a = Vec::with_capacity(grid.n_z);
        for i in 0..grid.n_z {
            let z = grid.z(i);
            let value = potential(z);
            let denominator = 1.0 - coupling_scalar(&value, params.e, params.big_k);
            if denominator.abs() <= SINGULAR_TOLERANCE {
                return Err(Error::SingularCoupling { at: [0.0, 0.0, 0.0, z], denominator });
            }
            a.push(a_op(&value, params.e, params.big_k));
        }
        Ok(Self { a })
    }
}

/// Right-hand side `∂₀Φ` for the whole grid.
pub fn time_derivative(
    grid: &Grid1D,
    phi: &[RealField8],
    kappa: f64,
    potential: Option<&StaticPotential>,
) -> Vec<RealField8> {
    let m = &*MATRICES;
    let mass = m.eta[0] * m.n * kappa;
    let flux = m.eta[0] * m.eta[3];
    let dz = grid.derivative(phi);
    (0..grid.n_z)
        .map(|i| {
            let mut local = mass * phi[i];
            if let Some(p) = potential {
                local += m.eta[0] * p.a[i] * m.n * phi[i] * kappa;
            }
            local - flux * dz[i]
        })
        .collect()
}

/// One classical RK4 step for `y' = f(y)`.
pub fn rk4_step<V: FieldValue>(y: &[V], dt: f64, f: impl Fn(&[V]) -> Vec<V>) -> Vec<V> {
    let axpy = |base: &[V], c: f64, k: &[V]| base.iter().zip(k).map(|(b, d)| b.add_scaled(c, *d)).collect::<Vec<_>>();
    let k1 = f(y);
    let k2 = f(&axpy(y, 0.5 * dt, &k1));
    let k3 = f(&axpy(y, 0.5 * dt, &k2));
    let k4 = f(&axpy(y, dt, &k3));
    y.iter()
        .enumerate()
        .map(|(i, v)| {
            v.add_scaled(dt / 6.0, k1[i])
                .add_scaled(dt / 3.0, k2[i])
                .add_scaled(dt / 3.0, k3[i])
                .add_scaled(dt / 6.0, k4[i])
        })
        .collect()
}

/// Monitors recorded during a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub step: usize,
    pub t: f64,
    pub q: f64,
    pub p3: f64,
    pub s3: f64,
    /// Largest violation of the conjugate pairing of the two Dirac halves.
    pub reality_defect: f64,
    /// Largest pointwise deviation from the reference solution, if any.
    pub phase_err: Option<f64>,
    /// Phase of the mode `k` of the first component, in `(−π, π]`.
    pub mode_phase: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub final_state: LatticeState,
    pub ledger: NormalizationLedger,
}

impl Trajectory {
    /// `max |Q(t) − Q(0)| / Q(0)`.
    pub fn relative_charge_drift(&self) -> f64 {
        let q0 = self.samples[0].q;
        self.samples.iter().map(|s| (s.q - q0).abs() / q0.abs()).fold(0.0, f64::max)
    }

    pub fn max_phase_err(&self) -> Option<f64> {
        self.samples.iter().map(|s| s.phase_err).try_fold(0.0f64, |m, e| e.map(|v| m.max(v)))
    }

    /// `ω/k` from a least-squares fit of the unwrapped mode phase.
    pub fn phase_velocity(&self, k: f64) -> f64 {
        let mut unwrapped = Vec::with_capacity(self.samples.len());
        let mut offset = 0.0;
        let mut prev: Option<f64> = None;
        for s in &self.samples {
            if let Some(p) = prev {
                let jump = s.mode_phase - p;
                if jump > std::f64::consts::PI {
                    offset -= 2.0 * std::f64::consts::PI;
                } else if jump < -std::f64::consts::PI {
                    offset += 2.0 * std::f64::consts::PI;
                }
            }
            prev = Some(s.mode_phase);
            unwrapped.push((s.t, s.mode_phase + offset));
        }
        let n = unwrapped.len() as f64;
        let (st, sp) = unwrapped.iter().fold((0.0, 0.0), |(a, b), (t, p)| (a + t, b + p));
        let (mt, mp) = (st / n, sp / n);
        let (num, den) = unwrapped
            .iter()
            .fold((0.0, 0.0), |(a, b), (t, p)| (a + (t - mt) * (p - mp), b + (t - mt) * (t - mt)));
        num / den / k
    }
}

/// Monitor values for one state, using the family forms of the functionals.
pub fn monitors(
    grid: &Grid1D,
    state: &LatticeState,
    ledger: &NormalizationLedger,
    k_mode: f64,
    reference: Option<&PlaneWave>,
) -> Sample {
    let m = &*MATRICES;
    let kappa = ledger.kappa;
    let big_k = ledger.big_k;
    let cell = grid.dz * grid.box_l().powi(2);
    let dz = grid.derivative(&state.phi);
    let e12n = m.eta[1] * m.eta[2] * m.n;
    let (mut q, mut p3, mut s3, mut defect) = (0.0, 0.0, 0.0, 0.0f64);
    let (mut re, mut im) = (0.0, 0.0);
    for (i, phi) in state.phi.iter().enumerate() {
        q += 2.0 * kappa * kappa * phi.norm_squared();
        // ∂³ = −∂_z.
        p3 += -2.0 * kappa * big_k * phi.dot(&(m.n * (-dz[i])));
        s3 += -kappa * big_k * phi.dot(&(e12n * phi));
        defect = defect.max(to_dirac(phi).reality_defect());
        let (s, c) = (k_mode * grid.z(i)).sin_cos();
        re -= phi[0] * c;
        im -= phi[0] * s;
    }
    let phase_err = reference.map(|w| {
        state
            .phi
            .iter()
            .enumerate()
            .map(|(i, v)| (v - w.value([state.t, 0.0, 0.0, grid.z(i)])).amax())
            .fold(0.0, f64::max)
    });
    Sample {
        step: 0,
        t: state.t,
        q: ledger.const_q * q * cell,
        p3: ledger.const_p * p3 * cell,
        s3: ledger.const_m * s3 * cell,
        reality_defect: defect,
        phase_err,
        mode_phase: im.atan2(re),
    }
}

/// Integrate with RK4, recording monitors every `sample_every` steps.
///
/// The ledger is the plane-wave normalization for the grid's box. A
/// non-finite value aborts the run with the step index; a step above the
/// CFL limit is refused before starting.
pub fn evolve(
    grid: &Grid1D,
    initial: &LatticeState,
    config: &EvolveConfig,
    kappa: f64,
    potential: Option<&StaticPotential>,
    k_mode: f64,
    reference: Option<&PlaneWave>,
) -> Result<Trajectory> {
    config.validate(grid)?;
    if initial.phi.len() != grid.n_z {
        return Err(Error::InvalidParameter(format!("state has {} points, grid has {}", initial.phi.len(), grid.n_z)));
    }
    if let Some(p) = potential {
        if p.a.len() != grid.n_z {
            return Err(Error::InvalidParameter("potential does not match the grid".into()));
        }
    }
    let ledger = select_normalization(kappa, grid.box_l(), 1.0, 1.0)?;
    let mut state = initial.clone();
    let mut samples = vec![monitors(grid, &state, &ledger, k_mode, reference)];
    for step in 1..=config.n_steps {
        state.phi = rk4_step(&state.phi, config.dt, |y| time_derivative(grid, y, kappa, potential));
        state.t = initial.t + step as f64 * config.dt;
        if state.phi.iter().any(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(Error::NonFinite { step });
        }
        if step % config.sample_every == 0 || step == config.n_steps {
            let mut s = monitors(grid, &state, &ledger, k_mode, reference);
            s.step = step;
            samples.push(s);
        }
    }
    Ok(Trajectory { samples, final_state: state, ledger })
}

/// Comparison of a spatially uniform run with the exact rotation
/// `Φ(t) = cos(κt)Φ₀ + sin(κt)η⁰NΦ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassRotationReport {
    pub kappa: f64,
    pub t_final: f64,
    /// Largest deviation from the exact rotation over the run.
    pub max_error: f64,
    /// `|Φ(t_final) − Φ₀|`.
    pub return_distance: f64,
}

pub fn mass_rotation_check(kappa: f64, dt: f64, n_steps: usize) -> Result<MassRotationReport> {
    let grid = Grid1D::new(MIN_POINTS, 1.0)?;
    let phi0 = RealField8::from_fn(|r, _| 1.0 / (1.0 + r as f64));
    let rot = MATRICES.eta[0] * MATRICES.n;
    let mut phi = vec![phi0; grid.n_z];
    let mut max_error = 0.0f64;
    for step in 1..=n_steps {
        phi = rk4_step(&phi, dt, |y| time_derivative(&grid, y, kappa, None));
        let t = step as f64 * dt;
        let exact = phi0 * (kappa * t).cos() + rot * phi0 * (kappa * t).sin();
        max_error = phi.iter().map(|v| (v - exact).amax()).fold(max_error, f64::max);
    }
    Ok(MassRotationReport {
        kappa,
        t_final: n_steps as f64 * dt,
        max_error,
        return_distance: phi.iter().map(|v| (v - phi0).amax()).fold(0.0, f64::max),
    })
}

/// `∂₀φ = ∓iκγ⁰φ − γ⁰γ³∂_zφ` for the four-component field; the upper sign
/// is the upper Dirac half, the lower sign the partner half.
pub fn dirac4_time_derivative(grid: &Grid1D, phi: &[Spinor4], kappa: f64, mass_sign: f64) -> Vec<Spinor4> {
    let m = &*MATRICES;
    let mass: Matrix4<num_complex::Complex64> = m.gamma[0] * num_complex::Complex64::new(0.0, -mass_sign * kappa);
    let flux = m.gamma[0] * m.gamma[3];
    let dz = grid.derivative(phi);
    (0..grid.n_z).map(|i| mass * phi[i] - flux * dz[i]).collect()
}

/// Evolve a four-component field with the same scheme as the real field.
pub fn evolve_dirac4(grid: &Grid1D, initial: &[Spinor4], kappa: f64, mass_sign: f64, dt: f64, n_steps: usize) -> Vec<Spinor4> {
    let mut phi = initial.to_vec();
    for _ in 0..n_steps {
        phi = rk4_step(&phi, dt, |y| dirac4_time_derivative(grid, y, kappa, mass_sign));
    }
    phi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_field::{plane_wave_phi, PlaneWaveParams};
    use std::f64::consts::PI;
    use proptest::prelude::*;

    fn wave_setup(n_z: usize) -> (Grid1D, PlaneWave, PlaneWaveParams) {
        let params = PlaneWaveParams::from_mode(1.0, 1, 2.0 * PI).unwrap();
        (Grid1D::new(n_z, 2.0 * PI).unwrap(), plane_wave_phi(params), params)
    }

    #[test]
    fn derivative_matches_plane_wave_time_derivative() {
        let errs: Vec<f64> = [32, 64]
            .iter()
            .map(|&n| {
                let (grid, wave, _) = wave_setup(n);
                let state = LatticeState::sample(&wave, &grid, 0.3);
                let rhs = time_derivative(&grid, &state.phi, 1.0, None);
                (0..n)
                    .map(|i| (rhs[i] - wave.exact_partials([0.3, 0.0, 0.0, grid.z(i)]).unwrap()[0]).amax())
                    .fold(0.0, f64::max)
            })
            .collect();
        assert!(errs[1] < 1e-5, "{errs:?}");
        assert!(errs[0] / errs[1] > 14.0, "{errs:?}");
    }

    #[test]
    fn uniform_field_rotates_with_mass() {
        let grid = Grid1D::new(16, 1.0).unwrap();
        let phi = vec![RealField8::from_fn(|r, _| r as f64); 16];
        assert!(time_derivative(&grid, &phi, 0.0, None).iter().all(|v| v.amax() == 0.0));
        let rhs = time_derivative(&grid, &phi, 2.0, None);
        let expected = MATRICES.eta[0] * MATRICES.n * phi[0] * 2.0;
        assert!(rhs.iter().all(|v| (v - expected).amax() < 1e-12));
    }

    #[test]
    fn zero_data_stays_zero() {
        let (grid, _, _) = wave_setup(32);
        let cfg = EvolveConfig { dt: grid.dz / 4.0, n_steps: 50, sample_every: 10 };
        let traj = evolve(&grid, &LatticeState::zeros(&grid), &cfg, 1.0, None, 1.0, None).unwrap();
        assert!(traj.final_state.phi.iter().all(|v| v.amax() == 0.0));
    }

    #[test]
    fn cfl_violation_is_refused() {
        let (grid, wave, _) = wave_setup(32);
        let cfg = EvolveConfig { dt: grid.dz, n_steps: 1, sample_every: 1 };
        let state = LatticeState::sample(&wave, &grid, 0.0);
        assert!(matches!(evolve(&grid, &state, &cfg, 1.0, None, 1.0, None), Err(Error::CflViolation { .. })));
    }

    #[test]
    fn blow_up_is_reported_with_step() {
        let grid = Grid1D::new(16, 1.0).unwrap();
        let mut state = LatticeState::zeros(&grid);
        state.phi[3][2] = f64::NAN;
        let cfg = EvolveConfig { dt: 0.01, n_steps: 5, sample_every: 1 };
        assert!(matches!(evolve(&grid, &state, &cfg, 1.0, None, 0.0, None), Err(Error::NonFinite { step: 1 })));
    }

    #[test]
    fn mass_rotation_period_and_half_period() {
        let n = 2000;
        let kappa = 1.5;
        let period = 2.0 * PI / kappa;
        let full = mass_rotation_check(kappa, period / n as f64, n).unwrap();
        assert!(full.return_distance < 1e-8 && full.max_error < 1e-8, "{full:?}");
        let half = mass_rotation_check(kappa, period / n as f64, n / 2).unwrap();
        let phi0 = RealField8::from_fn(|r, _| 1.0 / (1.0 + r as f64));
        assert!((half.return_distance - 2.0 * phi0.amax()).abs() < 1e-8);
        let still = mass_rotation_check(0.0, 0.01, 100).unwrap();
        assert_eq!(still.return_distance, 0.0);
    }

    #[test]
    fn short_run_conserves_and_tracks_reference() {
        let (grid, wave, params) = wave_setup(64);
        let cfg = EvolveConfig { dt: grid.dz / 4.0, n_steps: 400, sample_every: 20 };
        let state = LatticeState::sample(&wave, &grid, 0.0);
        let traj = evolve(&grid, &state, &cfg, 1.0, None, params.k, Some(&wave)).unwrap();
        assert!((traj.samples[0].q - 1.0).abs() < 1e-12);
        assert!((traj.samples[0].p3 - params.k).abs() < 1e-5);
        assert!((traj.samples[0].s3 - 0.5).abs() < 1e-12);
        assert!(traj.relative_charge_drift() < 1e-7);
        assert!(traj.max_phase_err().unwrap() < 1e-4);
        assert!(traj.samples.iter().all(|s| s.reality_defect < 1e-14));
        let v = traj.phase_velocity(params.k);
        assert!((v - params.k0() / params.k).abs() < 1e-4, "{v}");
    }

    #[test]
    fn real_evolution_commutes_with_transform() {
        let (grid, wave, _) = wave_setup(32);
        let state = LatticeState::sample(&wave, &grid, 0.0);
        let dt = grid.dz / 4.0;
        let steps = 40;
        let cfg = EvolveConfig { dt, n_steps: steps, sample_every: steps };
        let real = evolve(&grid, &state, &cfg, 1.0, None, 0.0, None).unwrap().final_state;
        let pairs: Vec<_> = state.phi.iter().map(to_dirac).collect();
        let upper = evolve_dirac4(&grid, &pairs.iter().map(|p| p.phi_a).collect::<Vec<_>>(), 1.0, 1.0, dt, steps);
        let lower = evolve_dirac4(&grid, &pairs.iter().map(|p| p.phi_b).collect::<Vec<_>>(), 1.0, -1.0, dt, steps);
        for i in 0..grid.n_z {
            let t = to_dirac(&real.phi[i]);
            assert!((t.phi_a - upper[i]).iter().all(|z| z.norm() < 1e-13));
            assert!((t.phi_b - lower[i]).iter().all(|z| z.norm() < 1e-13));
        }
    }

    #[test]
    fn static_potential_rejects_singular_shell() {
        let grid = Grid1D::new(16, 1.0).unwrap();
        let params = CouplingParams::new(1.0, 1.0, 1.0).unwrap();
        assert!(StaticPotential::sample(&grid, &params, |_| FourVector::new(1.0, 0.0, 0.0, 0.0)).is_err());
        let uniform = StaticPotential::sample(&grid, &params, |_| FourVector::new(0.2, 0.0, 0.0, 0.0)).unwrap();
        let phi = vec![RealField8::from_fn(|r, _| r as f64); 16];
        let with = time_derivative(&grid, &phi, 1.0, Some(&uniform));
        // A constant scalar potential shifts the mass: κ → κ(1 + 0.2η⁰).
        let expected = MATRICES.eta[0] * (Matrix8::identity() + MATRICES.eta[0] * 0.2) * MATRICES.n * phi[0];
        assert!((with[0] - expected).amax() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn evolution_commutes_with_transform_for_any_data(
            data in prop::collection::vec(-1.0f64..1.0, 16 * 8),
            kappa in 0.0f64..3.0,
        ) {
            let grid = Grid1D::new(16, 2.0 * PI).unwrap();
            let state = LatticeState {
                t: 0.0,
                phi: data.chunks_exact(8).map(RealField8::from_column_slice).collect(),
            };
            let dt = grid.dz / 4.0;
            let steps = 10;
            let cfg = EvolveConfig { dt, n_steps: steps, sample_every: steps };
            let real = evolve(&grid, &state, &cfg, kappa, None, 0.0, None).unwrap().final_state;
            let pairs: Vec<_> = state.phi.iter().map(to_dirac).collect();
            let upper = evolve_dirac4(&grid, &pairs.iter().map(|p| p.phi_a).collect::<Vec<_>>(), kappa, 1.0, dt, steps);
            let lower = evolve_dirac4(&grid, &pairs.iter().map(|p| p.phi_b).collect::<Vec<_>>(), kappa, -1.0, dt, steps);
            for i in 0..grid.n_z {
                let t = to_dirac(&real.phi[i]);
                prop_assert!((t.phi_a - upper[i]).iter().all(|z| z.norm() < 1e-12));
                prop_assert!((t.phi_b - lower[i]).iter().all(|z| z.norm() < 1e-12));
            }
        }
    }
}
