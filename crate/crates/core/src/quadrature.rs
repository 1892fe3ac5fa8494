//! Spatial integration rules for the conserved functionals.
//!
//! A rule is a list of spatial nodes with weights; integrands are
//! evaluated at `(t, x, y, z)` for a fixed time `t`.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};
use crate::field::Point;
use crate::free_field::PlaneWaveParams;

pub trait Quadrature: Sync {
    /// Spatial nodes `(x, y, z)` and their weights.
    fn nodes(&self) -> Vec<([f64; 3], f64)>;

    /// `Σ w·f(t, x)`, failing on the first failing evaluation.
    fn integrate<T, F>(&self, t: f64, f: F) -> Result<T>
    where
        T: std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
        F: Fn(Point) -> Result<T>,
        Self: Sized,
    {
        let mut acc: Option<T> = None;
        for ([x, y, z], w) in self.nodes() {
            let v = f([t, x, y, z])? * w;
            acc = Some(match acc {
                Some(a) => a + v,
                None => v,
            });
        }
        acc.ok_or_else(|| Error::InvalidParameter("quadrature rule has no nodes".into()))
    }
}

/// Midpoint rule along z on `[0, L)`, with the two transverse directions
/// contributing an exact factor `L²`.
///
/// For integrands that are trigonometric polynomials in z with periods
/// dividing L the rule is exact up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodicSlab {
    pub box_l: f64,
    pub n_z: usize,
}

/// Minimum grid points per wavelength accepted by [`PeriodicSlab::for_plane_wave`].
pub const MIN_POINTS_PER_WAVELENGTH: usize = 16;

impl PeriodicSlab {
    pub fn new(box_l: f64, n_z: usize) -> Result<Self> {
        if !(box_l > 0.0 && box_l.is_finite()) || n_z == 0 {
            return Err(Error::InvalidParameter(format!("slab needs L > 0 and n_z > 0, got L = {box_l}, n_z = {n_z}")));
        }
        Ok(Self { box_l, n_z })
    }

    /// A slab matched to a plane wave: the box must hold a whole number of
    /// wavelengths, and the grid must resolve the wavelength.
    pub fn for_plane_wave(params: &PlaneWaveParams, n_z: usize) -> Result<Self> {
        let mode = params.commensurate_mode()?.unsigned_abs() as usize;
        if mode > 0 && n_z < MIN_POINTS_PER_WAVELENGTH * mode {
            return Err(Error::InvalidParameter(format!(
                "{n_z} points resolve mode {mode} with fewer than {MIN_POINTS_PER_WAVELENGTH} points per wavelength"
            )));
        }
        Self::new(params.box_l, n_z)
    }

    pub fn dz(&self) -> f64 {
        self.box_l / self.n_z as f64
    }

    pub fn volume(&self) -> f64 {
        self.box_l.powi(3)
    }
}

impl Quadrature for PeriodicSlab {
    fn nodes(&self) -> Vec<([f64; 3], f64)> {
        let dz = self.dz();
        let w = dz * self.box_l * self.box_l;
        (0..self.n_z).map(|i| ([0.0, 0.0, (i as f64 + 0.5) * dz], w)).collect()
    }
}

/// Product rule on the shell `r_min ≤ r ≤ r_max`: trapezoid in `ln r`,
/// Gauss–Legendre in `cos ϑ`, uniform in the azimuth.
///
/// The trapezoid in `ln r` converges quickly for integrands that vanish
/// like a power of r at the origin and decay exponentially far out.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalShell {
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub n_phi: usize,
}

impl SphericalShell {
    pub fn new(r_min: f64, r_max: f64, n_r: usize, n_theta: usize, n_phi: usize) -> Result<Self> {
        if !(r_min > 0.0 && r_max > r_min) || n_r < 2 || n_theta == 0 || n_phi == 0 {
            return Err(Error::InvalidParameter(format!(
                "bad shell: r in [{r_min}, {r_max}], grid {n_r} x {n_theta} x {n_phi}"
            )));
        }
        Ok(Self { r_min, r_max, n_r, n_theta, n_phi })
    }

    /// Radial nodes and weights (already including `r` from `dr = r ds`).
    pub fn radial(&self) -> Vec<(f64, f64)> {
        let s0 = self.r_min.ln();
        let ds = (self.r_max.ln() - s0) / (self.n_r - 1) as f64;
        (0..self.n_r)
            .map(|i| {
                let r = (s0 + i as f64 * ds).exp();
                let end = if i == 0 || i == self.n_r - 1 { 0.5 } else { 1.0 };
                (r, end * ds * r)
            })
            .collect()
    }

    /// `∫ f(r) r² dr` using the radial nodes only, for radial integrands.
    pub fn integrate_radial(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.radial().into_iter().map(|(r, w)| w * r * r * f(r)).sum()
    }
}

impl Quadrature for SphericalShell {
    fn nodes(&self) -> Vec<([f64; 3], f64)> {
        let legendre = GaussLegendre::new(NonZeroUsize::new(self.n_theta).expect("n_theta checked"));
        let dphi = 2.0 * std::f64::consts::PI / self.n_phi as f64;
        let mut out = Vec::with_capacity(self.n_r * self.n_theta * self.n_phi);
        for (r, wr) in self.radial() {
            for &(mu, wmu) in legendre.as_node_weight_pairs() {
                let sin_t = (1.0 - mu * mu).sqrt();
                for k in 0..self.n_phi {
                    let ph = (k as f64 + 0.5) * dphi;
                    let p = [r * sin_t * ph.cos(), r * sin_t * ph.sin(), r * mu];
                    out.push((p, wr * r * r * wmu * dphi));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn slab_integrates_trigonometric_polynomials_exactly() {
        let slab = PeriodicSlab::new(2.0 * PI, 32).unwrap();
        let v: f64 = slab.integrate(0.0, |x| Ok((3.0 * x[3]).cos().powi(2))).unwrap();
        assert!((v - PI * (2.0 * PI).powi(2)).abs() < 1e-12 * v);
    }

    #[test]
    fn slab_rejects_incommensurate_and_underresolved_waves() {
        let off = PlaneWaveParams::new(1.0, 1.5, 2.0 * PI).unwrap();
        assert!(matches!(PeriodicSlab::for_plane_wave(&off, 64), Err(Error::Incommensurate { .. })));
        let fine = PlaneWaveParams::from_mode(1.0, 3, 2.0 * PI).unwrap();
        assert!(PeriodicSlab::for_plane_wave(&fine, 32).is_err());
        assert!(PeriodicSlab::for_plane_wave(&fine, 48).is_ok());
    }

    #[test]
    fn shell_volume_of_gaussian() {
        let shell = SphericalShell::new(1e-6, 12.0, 800, 6, 4).unwrap();
        let v: f64 = shell.integrate(0.0, |x| Ok((-(x[1] * x[1] + x[2] * x[2] + x[3] * x[3])).exp())).unwrap();
        assert!((v - PI.powf(1.5)).abs() < 1e-10, "{v}");
    }

    #[test]
    fn shell_angular_rule_is_exact_for_low_harmonics() {
        let shell = SphericalShell::new(0.5, 1.0, 200, 4, 8).unwrap();
        // ∫ z² over the shell = (4π/3)(r⁵/5)|.
        let v: f64 = shell.integrate(0.0, |x| Ok(x[3] * x[3])).unwrap();
        let exact = 4.0 * PI / 15.0 * (1.0 - 0.5f64.powi(5));
        assert!((v - exact).abs() < 1e-4 * exact);
    }
}
