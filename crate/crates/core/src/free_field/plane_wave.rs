//! Stationary plane-wave solution of `(D − κN)Φ = 0` travelling along z,
//! and its four-component Dirac counterpart.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Matrix4, MATRICES};
use crate::error::{Error, Result};
use crate::field::{partials, Field, Point, RealField8, Spinor4};

/// Mass parameter, z-momentum and periodic box side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveParams {
    pub kappa: f64,
    pub k: f64,
    pub box_l: f64,
}

impl PlaneWaveParams {
    pub fn new(kappa: f64, k: f64, box_l: f64) -> Result<Self> {
        let p = Self { kappa, k, box_l };
        p.validate()?;
        Ok(p)
    }

    /// Wave with `mode` whole wavelengths in the box: `k = 2π·mode/L`.
    pub fn from_mode(kappa: f64, mode: i64, box_l: f64) -> Result<Self> {
        Self::new(kappa, 2.0 * PI * mode as f64 / box_l, box_l)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return Err(Error::InvalidParameter(format!("kappa must be positive, got {}", self.kappa)));
        }
        if !self.k.is_finite() {
            return Err(Error::InvalidParameter("k must be finite".into()));
        }
        if !(self.box_l > 0.0 && self.box_l.is_finite()) {
            return Err(Error::InvalidParameter(format!("box side must be positive, got {}", self.box_l)));
        }
        Ok(())
    }

    /// `k₀ = √(κ² + k²)`.
    pub fn k0(&self) -> f64 {
        self.kappa.hypot(self.k)
    }

    /// Number of wavelengths in the box, if it is an integer.
    pub fn commensurate_mode(&self) -> Result<i64> {
        let cycles = self.k * self.box_l / (2.0 * PI);
        let rounded = cycles.round();
        if (cycles - rounded).abs() > 1e-9 * cycles.abs().max(1.0) {
            return Err(Error::Incommensurate { box_l: self.box_l, cycles });
        }
        Ok(rounded as i64)
    }

    /// Upper-index wave vector `k^α = (k₀, 0, 0, k)`.
    pub fn wave_vector(&self) -> [f64; 4] {
        [self.k0(), 0.0, 0.0, self.k]
    }
}

/// Real eight-component plane wave
///
/// `Φ = √((k₀+κ)/k₀) (−cos θ, −sin θ, 0, 0, r sin θ, −r cos θ, 0, 0)`,
/// `θ = k₀x⁰ − kz`, `r = k/(k₀+κ)`.
///
/// The frequency can be detuned away from `k₀` to build fields that violate
/// the dispersion relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub params: PlaneWaveParams,
    pub omega: f64,
}

pub fn plane_wave_phi(params: PlaneWaveParams) -> PlaneWave {
    PlaneWave { params, omega: params.k0() }
}

impl PlaneWave {
    /// Same profile but with time frequency `omega` instead of `k₀`.
    pub fn detuned(params: PlaneWaveParams, omega: f64) -> Self {
        Self { params, omega }
    }

    fn phase(&self, x: Point) -> f64 {
        self.omega * x[0] - self.params.k * x[3]
    }

    fn prefactor_and_ratio(&self) -> (f64, f64) {
        let k0 = self.params.k0();
        let kappa = self.params.kappa;
        (((k0 + kappa) / k0).sqrt(), self.params.k / (k0 + kappa))
    }

    fn profile(&self, theta: f64) -> RealField8 {
        let (pre, r) = self.prefactor_and_ratio();
        let (s, c) = theta.sin_cos();
        RealField8::from_column_slice(&[-c, -s, 0.0, 0.0, r * s, -r * c, 0.0, 0.0]) * pre
    }

    fn profile_derivative(&self, theta: f64) -> RealField8 {
        let (pre, r) = self.prefactor_and_ratio();
        let (s, c) = theta.sin_cos();
        RealField8::from_column_slice(&[s, -c, 0.0, 0.0, r * c, r * s, 0.0, 0.0]) * pre
    }

    /// `∂_α θ`.
    fn phase_gradient(&self) -> [f64; 4] {
        [self.omega, 0.0, 0.0, -self.params.k]
    }
}

impl Field for PlaneWave {
    type Value = RealField8;

    fn value(&self, x: Point) -> RealField8 {
        self.profile(self.phase(x))
    }

    fn exact_partials(&self, x: Point) -> Option<[RealField8; 4]> {
        let d = self.profile_derivative(self.phase(x));
        let g = self.phase_gradient();
        Some(std::array::from_fn(|a| d * g[a]))
    }

    fn exact_second_partials(&self, x: Point) -> Option<[[RealField8; 4]; 4]> {
        let v = self.profile(self.phase(x));
        let g = self.phase_gradient();
        Some(std::array::from_fn(|a| std::array::from_fn(|b| -v * (g[a] * g[b]))))
    }
}

/// Four-component positive-energy plane wave
/// `φ_a = √((k₀+κ)/2k₀) (1, 0, k/(k₀+κ), 0) e^{−i(k₀x⁰ − kz)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveDirac {
    pub params: PlaneWaveParams,
}

pub fn plane_wave_dirac(params: PlaneWaveParams) -> PlaneWaveDirac {
    PlaneWaveDirac { params }
}

impl PlaneWaveDirac {
    pub fn amplitude(&self) -> Spinor4 {
        let k0 = self.params.k0();
        let kappa = self.params.kappa;
        let pre = ((k0 + kappa) / (2.0 * k0)).sqrt();
        Spinor4::new(
            Complex64::new(pre, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(pre * self.params.k / (k0 + kappa), 0.0),
            Complex64::new(0.0, 0.0),
        )
    }

    fn phase_gradient(&self) -> [f64; 4] {
        [self.params.k0(), 0.0, 0.0, -self.params.k]
    }
}

impl Field for PlaneWaveDirac {
    type Value = Spinor4;

    fn value(&self, x: Point) -> Spinor4 {
        let theta = self.params.k0() * x[0] - self.params.k * x[3];
        self.amplitude() * Complex64::from_polar(1.0, -theta)
    }

    fn exact_partials(&self, x: Point) -> Option<[Spinor4; 4]> {
        let v = self.value(x);
        let g = self.phase_gradient();
        Some(std::array::from_fn(|a| v * Complex64::new(0.0, -g[a])))
    }
}

/// `iγ^α∂_αφ − Mφ` for a four-component field and mass matrix `M`.
pub fn dirac4_residual<F>(field: &F, mass: &Matrix4<Complex64>, x: Point, h: f64) -> Result<Spinor4>
where
    F: Field<Value = Spinor4> + ?Sized,
{
    let d = partials(field, x, h)?;
    let i = Complex64::new(0.0, 1.0);
    let kinetic = (0..4).fold(Spinor4::zeros(), |acc, a| acc + MATRICES.gamma[a] * d[a] * i);
    Ok(kinetic - mass * field.value(x))
}
