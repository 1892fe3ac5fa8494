//! The Maxwell system packed into the eight-component real field.
//!
//! Potentials `A^α = (φ, A)` and `C^α = (f, C)` fill the Φ column as
//! `(−A_x, −A_y, −A_z, f, C_x, C_y, C_z, −φ)`. The field strengths
//! `F^{αβ}`, `F̃^{αβ}` and the scalars `F = ∂_αC^α`, `G = ∂_αA^α` fill
//! the Ψ column as `(E, F, B, G)` with `E_i = F^{i0}`, `B_i = F̃^{i0}`.

use crate::error::Result;
use crate::field::{partials, shifted, Field, FourVector, Point, RealField8, METRIC};

/// Totally antisymmetric symbol with `ε^{0123} = +1`.
pub fn levi_civita(a: usize, b: usize, c: usize, d: usize) -> f64 {
    let idx = [a, b, c, d];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
        }
    }
    let mut sign = 1.0;
    let mut perm = idx;
    for i in 0..4 {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

/// Pack two four-potentials into the Φ column.
pub fn phi_column(a: &FourVector, c: &FourVector) -> RealField8 {
    RealField8::from_column_slice(&[-a[1], -a[2], -a[3], c[0], c[1], c[2], c[3], -a[0]])
}

fn unpack_column(v: &RealField8) -> (FourVector, FourVector) {
    (FourVector::new(-v[7], -v[0], -v[1], -v[2]), FourVector::new(v[3], v[4], v[5], v[6]))
}

/// A pair of four-potentials viewed as one eight-component field.
pub struct EmPotentials<A, C> {
    pub a: A,
    pub c: C,
}

impl<A, C> Field for EmPotentials<A, C>
where
    A: Field<Value = FourVector>,
    C: Field<Value = FourVector>,
{
    type Value = RealField8;

    fn value(&self, x: Point) -> RealField8 {
        phi_column(&self.a.value(x), &self.c.value(x))
    }

    fn exact_partials(&self, x: Point) -> Option<[RealField8; 4]> {
        let da = self.a.exact_partials(x)?;
        let dc = self.c.exact_partials(x)?;
        Some(std::array::from_fn(|m| phi_column(&da[m], &dc[m])))
    }

    fn exact_second_partials(&self, x: Point) -> Option<[[RealField8; 4]; 4]> {
        let da = self.a.exact_second_partials(x)?;
        let dc = self.c.exact_second_partials(x)?;
        Some(std::array::from_fn(|m| std::array::from_fn(|n| phi_column(&da[m][n], &dc[m][n]))))
    }

    fn contains(&self, x: Point) -> bool {
        self.a.contains(x) && self.c.contains(x)
    }
}

/// `A^α = ε^α sin(k_μ x^μ)`; a vacuum wave when `k² = 0` and `k·ε = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacuumWave {
    pub polarization: FourVector,
    /// Upper-index wave vector.
    pub wave_vector: FourVector,
}

impl VacuumWave {
    fn phase(&self, x: Point) -> f64 {
        (0..4).map(|m| METRIC[m] * self.wave_vector[m] * x[m]).sum()
    }

    fn lower_k(&self) -> [f64; 4] {
        std::array::from_fn(|m| METRIC[m] * self.wave_vector[m])
    }

    /// Zero four-potential.
    pub fn zero() -> Self {
        Self { polarization: FourVector::zeros(), wave_vector: FourVector::zeros() }
    }
}

impl Field for VacuumWave {
    type Value = FourVector;

    fn value(&self, x: Point) -> FourVector {
        self.polarization * self.phase(x).sin()
    }

    fn exact_partials(&self, x: Point) -> Option<[FourVector; 4]> {
        let c = self.phase(x).cos();
        let k = self.lower_k();
        Some(std::array::from_fn(|m| self.polarization * (c * k[m])))
    }

    fn exact_second_partials(&self, x: Point) -> Option<[[FourVector; 4]; 4]> {
        let s = self.phase(x).sin();
        let k = self.lower_k();
        Some(std::array::from_fn(|m| std::array::from_fn(|n| self.polarization * (-s * k[m] * k[n]))))
    }
}

/// Field strengths and gauge scalars at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellFields {
    /// `F^{αβ}`
    pub f: [[f64; 4]; 4],
    /// `F̃^{αβ}`
    pub f_dual: [[f64; 4]; 4],
    /// `F = ∂_α C^α`
    pub f_scalar: f64,
    /// `G = ∂_α A^α`
    pub g_scalar: f64,
}

impl MaxwellFields {
    pub fn electric(&self) -> [f64; 3] {
        [self.f[1][0], self.f[2][0], self.f[3][0]]
    }

    pub fn magnetic(&self) -> [f64; 3] {
        [self.f_dual[1][0], self.f_dual[2][0], self.f_dual[3][0]]
    }

    /// The Ψ column `(E, F, B, G)`.
    pub fn psi_column(&self) -> RealField8 {
        let e = self.electric();
        let b = self.magnetic();
        RealField8::from_column_slice(&[e[0], e[1], e[2], self.f_scalar, b[0], b[1], b[2], self.g_scalar])
    }
}

/// Evaluate the field strengths from derivatives of the potentials:
///
/// `F^{αβ} = ∂^αA^β − ∂^βA^α − ½ε^{αβξζ}(∂_ξC_ζ − ∂_ζC_ξ)`,
/// `F̃^{αβ} = ∂^αC^β − ∂^βC^α + ½ε^{αβξζ}(∂_ξA_ζ − ∂_ζA_ξ)`.
pub fn maxwell_fields<A, C>(em: &EmPotentials<A, C>, x: Point, h: f64) -> Result<MaxwellFields>
where
    A: Field<Value = FourVector>,
    C: Field<Value = FourVector>,
{
    let d = partials(em, x, h)?;
    // da[μ][ν] = ∂_μ A^ν, dc likewise.
    let mut da = [[0.0; 4]; 4];
    let mut dc = [[0.0; 4]; 4];
    for m in 0..4 {
        let (a, c) = unpack_column(&d[m]);
        for n in 0..4 {
            da[m][n] = a[n];
            dc[m][n] = c[n];
        }
    }
    // Mixed-index forms: ∂^μ X^ν and ∂_μ X_ν.
    let up = |t: &[[f64; 4]; 4], m: usize, n: usize| METRIC[m] * t[m][n];
    let down = |t: &[[f64; 4]; 4], m: usize, n: usize| METRIC[n] * t[m][n];

    let mut f = [[0.0; 4]; 4];
    let mut f_dual = [[0.0; 4]; 4];
    for al in 0..4 {
        for be in 0..4 {
            let mut eps_c = 0.0;
            let mut eps_a = 0.0;
            for xi in 0..4 {
                for ze in 0..4 {
                    let e = levi_civita(al, be, xi, ze);
                    if e != 0.0 {
                        eps_c += e * (down(&dc, xi, ze) - down(&dc, ze, xi));
                        eps_a += e * (down(&da, xi, ze) - down(&da, ze, xi));
                    }
                }
            }
            f[al][be] = up(&da, al, be) - up(&da, be, al) - 0.5 * eps_c;
            f_dual[al][be] = up(&dc, al, be) - up(&dc, be, al) + 0.5 * eps_a;
        }
    }
    let f_scalar = (0..4).map(|m| dc[m][m]).sum();
    let g_scalar = (0..4).map(|m| da[m][m]).sum();
    Ok(MaxwellFields { f, f_dual, f_scalar, g_scalar })
}

/// The Ψ column assembled from the field-strength tensors.
pub fn maxwell_assemble<A, C>(em: &EmPotentials<A, C>, x: Point, h: f64) -> Result<RealField8>
where
    A: Field<Value = FourVector>,
    C: Field<Value = FourVector>,
{
    Ok(maxwell_fields(em, x, h)?.psi_column())
}

/// Residuals `∂_α(F^{αβ} + g^{αβ}G)` and `∂_α(F̃^{αβ} + g^{αβ}F)`.
pub fn maxwell_residual<A, C>(em: &EmPotentials<A, C>, x: Point, h: f64) -> Result<[FourVector; 2]>
where
    A: Field<Value = FourVector>,
    C: Field<Value = FourVector>,
{
    let tensors = |p: Point| -> Result<([[f64; 4]; 4], [[f64; 4]; 4])> {
        let mf = maxwell_fields(em, p, h)?;
        let mut t1 = mf.f;
        let mut t2 = mf.f_dual;
        for a in 0..4 {
            t1[a][a] += METRIC[a] * mf.g_scalar;
            t2[a][a] += METRIC[a] * mf.f_scalar;
        }
        Ok((t1, t2))
    };
    let mut r1 = FourVector::zeros();
    let mut r2 = FourVector::zeros();
    let weights = [(1.0, 8.0), (-1.0, -8.0), (2.0, -1.0), (-2.0, 1.0)];
    for al in 0..4 {
        for (k, w) in weights {
            let (t1, t2) = tensors(shifted(x, al, k * h))?;
            for be in 0..4 {
                r1[be] += w * t1[al][be] / (12.0 * h);
                r2[be] += w * t2[al][be] / (12.0 * h);
            }
        }
    }
    Ok([r1, r2])
}
