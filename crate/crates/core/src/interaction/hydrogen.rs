//! Coulomb ground state, analytic and by shooting.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::field::{Field, Point, RealField8, Spinor4};
use crate::spinor::from_dirac;

/// Analytic ground state `g = A r^{γ−1}e^{−λr}`, `f = −g(1−γ)/(Zα)`,
/// normalized so that `∫r²(g² + f²)dr = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGroundState {
    pub z: f64,
    pub alpha_fs: f64,
    pub kappa: f64,
    /// `√(1 − (Zα)²)`
    pub gamma: f64,
    /// Energy `κγ`.
    pub k0: f64,
    /// Decay rate `κZα`.
    pub lambda: f64,
    /// Amplitude `A`.
    pub amplitude: f64,
}

pub fn hydrogen_ground_state(z: f64, alpha_fs: f64, kappa: f64) -> Result<RadialGroundState> {
    if !(z > 0.0 && alpha_fs > 0.0 && kappa > 0.0) || !(z * alpha_fs).is_finite() || !kappa.is_finite() {
        return Err(Error::InvalidParameter(format!("need Z, alpha, kappa > 0, got {z}, {alpha_fs}, {kappa}")));
    }
    let za = z * alpha_fs;
    if za >= 1.0 {
        return Err(Error::Supercritical(za));
    }
    let gm = (1.0 - za * za).sqrt();
    let lambda = kappa * za;
    let ratio = (1.0 - gm) / za;
    let radial = gamma(2.0 * gm + 1.0) / (2.0 * lambda).powf(2.0 * gm + 1.0);
    let amplitude = 1.0 / ((1.0 + ratio * ratio) * radial).sqrt();
    Ok(RadialGroundState { z, alpha_fs, kappa, gamma: gm, k0: kappa * gm, lambda, amplitude })
}

impl RadialGroundState {
    pub fn za(&self) -> f64 {
        self.z * self.alpha_fs
    }

    /// `f/g`.
    pub fn small_ratio(&self) -> f64 {
        -(1.0 - self.gamma) / self.za()
    }

    pub fn g(&self, r: f64) -> f64 {
        self.amplitude * r.powf(self.gamma - 1.0) * (-self.lambda * r).exp()
    }

    pub fn f(&self, r: f64) -> f64 {
        self.small_ratio() * self.g(r)
    }

    /// `d ln g / dr`.
    fn log_slope(&self, r: f64) -> f64 {
        (self.gamma - 1.0) / r - self.lambda
    }

    /// `∫(g² + f²)d³x = 4π`.
    pub fn norm_integral(&self) -> f64 {
        4.0 * PI
    }

    /// `∫(g² + f²)d³x` over the ball `r < radius`.
    pub fn norm_inside(&self, radius: f64) -> f64 {
        let shape = 2.0 * self.gamma + 1.0;
        4.0 * PI * statrs::function::gamma::gamma_lr(shape, 2.0 * self.lambda * radius)
    }

    /// Bohr-scaled length `1/(Zακ)`.
    pub fn length_scale(&self) -> f64 {
        1.0 / self.lambda
    }
}

/// Radial functions from the numerical integrator, normalized like the
/// analytic state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShootingSolution {
    pub k0: f64,
    pub r: Vec<f64>,
    pub g: Vec<f64>,
    pub f: Vec<f64>,
    pub bisection_steps: usize,
}

impl ShootingSolution {
    /// Linear interpolation in `ln r` between grid nodes.
    pub fn interpolate(&self, r: f64) -> Option<(f64, f64)> {
        let i = self.r.partition_point(|&v| v <= r);
        if i == 0 || i >= self.r.len() {
            return None;
        }
        let (r0, r1) = (self.r[i - 1].ln(), self.r[i].ln());
        let t = (r.ln() - r0) / (r1 - r0);
        Some((self.g[i - 1] * (1.0 - t) + self.g[i] * t, self.f[i - 1] * (1.0 - t) + self.f[i] * t))
    }
}

struct Radial {
    za: f64,
    mass: f64,
}

impl Radial {
    /// Derivatives with respect to `s = ln r` of `u = rg`, `v = rf`.
    fn rhs(&self, r: f64, energy: f64, y: [f64; 2]) -> [f64; 2] {
        let v_pot = -self.za / r;
        let [u, v] = y;
        [r * (u / r + (energy + self.mass - v_pot) * v), r * (-v / r - (energy - self.mass - v_pot) * u)]
    }

    fn rk4(&self, s: f64, ds: f64, energy: f64, y: [f64; 2]) -> [f64; 2] {
        let add = |y: [f64; 2], k: [f64; 2], c: f64| [y[0] + c * k[0], y[1] + c * k[1]];
        let k1 = self.rhs(s.exp(), energy, y);
        let k2 = self.rhs((s + 0.5 * ds).exp(), energy, add(y, k1, 0.5 * ds));
        let k3 = self.rhs((s + 0.5 * ds).exp(), energy, add(y, k2, 0.5 * ds));
        let k4 = self.rhs((s + ds).exp(), energy, add(y, k3, ds));
        [
            y[0] + ds / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + ds / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    }

    /// RK4 from `s0` to `s1`, with substeps where the decay length is
    /// short compared to the step in `r`.
    fn advance(&self, s0: f64, s1: f64, energy: f64, mut y: [f64; 2]) -> [f64; 2] {
        let rate = self.za * self.mass * s0.max(s1).exp();
        let n = rate.max(1.0).ceil() as usize;
        let ds = (s1 - s0) / n as f64;
        for j in 0..n {
            y = self.rk4(s0 + j as f64 * ds, ds, energy, y);
        }
        y
    }

    fn gamma(&self) -> f64 {
        (1.0 - self.za * self.za).sqrt()
    }

    /// Outward from the origin to node `m`, inward from the last node to
    /// node `m`. Values are rescaled on the way to avoid overflow.
    fn sweep(&self, s: &[f64], m: usize, energy: f64, keep: bool) -> (Vec<[f64; 2]>, [f64; 2], [f64; 2]) {
        let n = s.len();
        let mut path = if keep { vec![[0.0; 2]; n] } else { Vec::new() };
        let gm = self.gamma();
        let r0 = s[0].exp();
        let mut y = [r0.powf(gm), r0.powf(gm) * (gm - 1.0) / self.za];
        if keep {
            path[0] = y;
        }
        for i in 0..m {
            y = self.advance(s[i], s[i + 1], energy, y);
            let mag = y[0].abs().max(y[1].abs());
            if mag > 1e100 {
                y = [y[0] / mag, y[1] / mag];
                if keep {
                    path[..=i].iter_mut().for_each(|p| *p = [p[0] / mag, p[1] / mag]);
                }
            }
            if keep {
                path[i + 1] = y;
            }
        }
        let out = y;

        let tail = -((self.mass - energy) / (self.mass + energy)).max(0.0).sqrt();
        let mut y = [1.0, tail];
        let mut inward = vec![[0.0; 2]; if keep { n - m } else { 0 }];
        if keep {
            inward[n - 1 - m] = y;
        }
        for i in (m + 1..n).rev() {
            y = self.advance(s[i], s[i - 1], energy, y);
            let mag = y[0].abs().max(y[1].abs());
            if mag > 1e100 {
                y = [y[0] / mag, y[1] / mag];
                if keep {
                    inward[i - m..].iter_mut().for_each(|p| *p = [p[0] / mag, p[1] / mag]);
                }
            }
            if keep {
                inward[i - 1 - m] = y;
            }
        }
        if keep {
            // Join the two branches at node m.
            let c = if y[0].abs() > y[1].abs() { out[0] / y[0] } else { out[1] / y[1] };
            for (k, p) in inward.iter().enumerate().skip(1) {
                path[m + k] = [p[0] * c, p[1] * c];
            }
        }
        (path, out, y)
    }

    /// Normalized Wronskian of the two branches at the matching node.
    fn mismatch(&self, s: &[f64], m: usize, energy: f64) -> f64 {
        let (_, o, i) = self.sweep(s, m, energy, false);
        (o[0] * i[1] - o[1] * i[0]) / (o[0].hypot(o[1]) * i[0].hypot(i[1]))
    }
}

/// Find the lowest bound state of the radial Coulomb problem by shooting.
///
/// The grid is logarithmic on `[10⁻⁶, 40]/(Zακ)` with `grid_points`
/// nodes; branches are matched at `r = 1/(Zακ)`.
pub fn shoot_ground_state(z: f64, alpha_fs: f64, kappa: f64, grid_points: usize) -> Result<ShootingSolution> {
    if grid_points < 100 {
        return Err(Error::InvalidParameter(format!("need at least 100 grid points, got {grid_points}")));
    }
    let za = z * alpha_fs;
    if za >= 1.0 {
        return Err(Error::Supercritical(za));
    }
    if !(za > 0.0 && kappa > 0.0) {
        return Err(Error::InvalidParameter(format!("need Z alpha > 0 and kappa > 0, got {za}, {kappa}")));
    }
    let scale = 1.0 / (za * kappa);
    let (s_lo, s_hi) = ((1e-6 * scale).ln(), (40.0 * scale).ln());
    let ds = (s_hi - s_lo) / (grid_points - 1) as f64;
    let s: Vec<f64> = (0..grid_points).map(|i| s_lo + i as f64 * ds).collect();
    let m = s.partition_point(|&v| v < scale.ln());
    let radial = Radial { za, mass: kappa };

    // Scan the binding energy downward from deep binding; the first sign
    // change of the mismatch brackets the lowest state.
    let mut binding = 0.999 * kappa;
    let mut prev = radial.mismatch(&s, m, kappa - binding);
    let mut bracket = None;
    while binding > 1e-14 * kappa {
        let next = binding * 0.8;
        let val = radial.mismatch(&s, m, kappa - next);
        if val.signum() != prev.signum() {
            bracket = Some((kappa - binding, kappa - next));
            break;
        }
        binding = next;
        prev = val;
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| Error::Shooting("no bound state found".into()))?;
    let mut f_lo = radial.mismatch(&s, m, lo);
    let mut steps = 0;
    while hi - lo > 4.0 * f64::EPSILON * kappa && steps < 200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = radial.mismatch(&s, m, mid);
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    let energy = 0.5 * (lo + hi);

    let (path, _, _) = radial.sweep(&s, m, energy, true);
    let r: Vec<f64> = s.iter().map(|v| v.exp()).collect();
    // ∫(u² + v²)dr with dr = r ds, trapezoid in s.
    let norm: f64 = path
        .iter()
        .zip(&r)
        .enumerate()
        .map(|(i, (p, ri))| {
            let w = if i == 0 || i == grid_points - 1 { 0.5 } else { 1.0 };
            w * ds * ri * (p[0] * p[0] + p[1] * p[1])
        })
        .sum();
    let sign = if path[m][0] < 0.0 { -1.0 } else { 1.0 };
    let c = sign / norm.sqrt();
    let g = path.iter().zip(&r).map(|(p, ri)| c * p[0] / ri).collect();
    let f = path.iter().zip(&r).map(|(p, ri)| c * p[1] / ri).collect();
    Ok(ShootingSolution { k0: energy, r, g, f, bisection_steps: steps })
}

/// Four-component ground state with spin up:
/// `φ_a = e^{−ik₀t}/√4π · (g, 0, −if·z/r, −if·(x+iy)/r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenDirac {
    pub state: RadialGroundState,
}

impl HydrogenDirac {
    /// Static profile and its spatial gradient.
    fn profile(&self, x: Point) -> (Spinor4, [Spinor4; 3]) {
        let st = &self.state;
        let (px, py, pz) = (x[1], x[2], x[3]);
        let r = (px * px + py * py + pz * pz).sqrt();
        let norm = 1.0 / (4.0 * PI).sqrt();
        let g = st.g(r);
        let slope = st.log_slope(r);
        // h = f/r and its radial derivative.
        let h = st.f(r) / r;
        let dh = h * (slope - 1.0 / r);
        let i = Complex64::new(0.0, 1.0);
        let value = Spinor4::new(
            Complex64::new(g * norm, 0.0),
            Complex64::new(0.0, 0.0),
            -i * h * pz * norm,
            -i * h * Complex64::new(px, py) * norm,
        );
        let pos = [px, py, pz];
        let grad = std::array::from_fn(|j| {
            let radial = pos[j] / r;
            let dg = g * slope * radial;
            let dz = dh * radial * pz + if j == 2 { h } else { 0.0 };
            let dxy = Complex64::new(dh * radial * px, dh * radial * py)
                + match j {
                    0 => Complex64::new(h, 0.0),
                    1 => Complex64::new(0.0, h),
                    _ => Complex64::new(0.0, 0.0),
                };
            Spinor4::new(Complex64::new(dg * norm, 0.0), Complex64::new(0.0, 0.0), -i * dz * norm, -i * dxy * norm)
        });
        (value, grad)
    }

    fn phase(&self, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, -self.state.k0 * t)
    }
}

impl Field for HydrogenDirac {
    type Value = Spinor4;

    fn value(&self, x: Point) -> Spinor4 {
        self.profile(x).0 * self.phase(x[0])
    }

    fn exact_partials(&self, x: Point) -> Option<[Spinor4; 4]> {
        let (v, grad) = self.profile(x);
        let ph = self.phase(x[0]);
        let dt = v * ph * Complex64::new(0.0, -self.state.k0);
        Some([dt, grad[0] * ph, grad[1] * ph, grad[2] * ph])
    }

    fn contains(&self, x: Point) -> bool {
        x[1] * x[1] + x[2] * x[2] + x[3] * x[3] > 0.0
    }
}

/// The real eight-component field of the ground state; `Φ⁺Φ = (g² + f²)/2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HydrogenPhi {
    pub dirac: HydrogenDirac,
}

impl HydrogenPhi {
    pub fn new(state: RadialGroundState) -> Self {
        Self { dirac: HydrogenDirac { state } }
    }
}

impl Field for HydrogenPhi {
    type Value = RealField8;

    fn value(&self, x: Point) -> RealField8 {
        from_dirac(&self.dirac.value(x))
    }

    fn exact_partials(&self, x: Point) -> Option<[RealField8; 4]> {
        Some(self.dirac.exact_partials(x)?.map(|d| from_dirac(&d)))
    }

    fn contains(&self, x: Point) -> bool {
        self.dirac.contains(x)
    }
}
