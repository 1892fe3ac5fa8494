//! Fields sampled on spacetime and their partial derivatives.
//!
//! A [`Field`] maps a spacetime point `(x⁰, x, y, z)` to a value. Analytic
//! fields may supply exact first (and second) partials; otherwise the
//! derivative helpers fall back to fourth-order central differences.
//! Natural units are used throughout: `x⁰ = ct = t` and `ħ = c = 1`.

use nalgebra::SMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Spacetime point `(x⁰, x¹, x², x³)`.
pub type Point = [f64; 4];

/// Real eight-component field value (Φ, Ψ of the real formulation).
pub type RealField8 = SMatrix<f64, 8, 1>;
/// Complex eight-component field value (Ψ_I, Ψ_II).
pub type ComplexField8 = SMatrix<Complex64, 8, 1>;
/// Four-component Dirac spinor.
pub type Spinor4 = SMatrix<Complex64, 4, 1>;
/// Real four-vector with an upper index.
pub type FourVector = SMatrix<f64, 4, 1>;

/// Minkowski metric diagonal, signature (+, −, −, −).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Default finite-difference step in units of `1/κ`.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Values that can be combined linearly for finite differences.
pub trait FieldValue: Copy + Send + Sync + 'static {
    fn zero() -> Self;
    /// `self + c * other`
    fn add_scaled(self, c: f64, other: Self) -> Self;
    fn max_abs(&self) -> f64;
}

impl FieldValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add_scaled(self, c: f64, other: Self) -> Self {
        self + c * other
    }
    fn max_abs(&self) -> f64 {
        self.abs()
    }
}

impl<const R: usize, const C: usize> FieldValue for SMatrix<f64, R, C> {
    fn zero() -> Self {
        Self::zeros()
    }
    fn add_scaled(self, c: f64, other: Self) -> Self {
        self + other * c
    }
    fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl<const R: usize, const C: usize> FieldValue for SMatrix<Complex64, R, C> {
    fn zero() -> Self {
        Self::zeros()
    }
    fn add_scaled(self, c: f64, other: Self) -> Self {
        self + other * Complex64::new(c, 0.0)
    }
    fn max_abs(&self) -> f64 {
        self.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

/// Eight-component values that a real 8×8 matrix can act on.
pub trait EightComponent: FieldValue {
    fn apply(m: &SMatrix<f64, 8, 8>, v: &Self) -> Self;
}

impl EightComponent for RealField8 {
    fn apply(m: &SMatrix<f64, 8, 8>, v: &Self) -> Self {
        m * v
    }
}

impl EightComponent for ComplexField8 {
    fn apply(m: &SMatrix<f64, 8, 8>, v: &Self) -> Self {
        m.map(|x| Complex64::new(x, 0.0)) * v
    }
}

/// A function of spacetime.
///
/// Implementations must be callable from several threads at once.
pub trait Field: Sync {
    type Value: FieldValue;

    fn value(&self, x: Point) -> Self::Value;

    /// Exact `∂_α` (lower index), when known analytically.
    fn exact_partials(&self, _x: Point) -> Option<[Self::Value; 4]> {
        None
    }

    /// Exact `∂_α ∂_β`, when known analytically.
    fn exact_second_partials(&self, _x: Point) -> Option<[[Self::Value; 4]; 4]> {
        None
    }

    /// Whether the field may be evaluated at `x`.
    fn contains(&self, _x: Point) -> bool {
        true
    }
}

impl<F: Field + ?Sized> Field for &F {
    type Value = F::Value;
    fn value(&self, x: Point) -> Self::Value {
        (**self).value(x)
    }
    fn exact_partials(&self, x: Point) -> Option<[Self::Value; 4]> {
        (**self).exact_partials(x)
    }
    fn exact_second_partials(&self, x: Point) -> Option<[[Self::Value; 4]; 4]> {
        (**self).exact_second_partials(x)
    }
    fn contains(&self, x: Point) -> bool {
        (**self).contains(x)
    }
}

/// Closure-backed field without analytic derivatives.
#[derive(Clone, Copy)]
pub struct FnField<F>(pub F);

impl<F, V> Field for FnField<F>
where
    F: Fn(Point) -> V + Sync,
    V: FieldValue,
{
    type Value = V;
    fn value(&self, x: Point) -> V {
        (self.0)(x)
    }
}

/// Closure-backed field with an analytic gradient.
#[derive(Clone, Copy)]
pub struct FnFieldWithPartials<F, D> {
    pub value: F,
    pub partials: D,
}

impl<F, D, V> Field for FnFieldWithPartials<F, D>
where
    F: Fn(Point) -> V + Sync,
    D: Fn(Point) -> [V; 4] + Sync,
    V: FieldValue,
{
    type Value = V;
    fn value(&self, x: Point) -> V {
        (self.value)(x)
    }
    fn exact_partials(&self, x: Point) -> Option<[V; 4]> {
        Some((self.partials)(x))
    }
}

pub fn shifted(x: Point, axis: usize, d: f64) -> Point {
    let mut y = x;
    y[axis] += d;
    y
}

fn check_stencil<F: Field + ?Sized>(field: &F, x: Point, h: f64) -> Result<()> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidParameter(format!("finite-difference step must be positive, got {h}")));
    }
    for axis in 0..4 {
        for k in [-2.0, -1.0, 1.0, 2.0] {
            let p = shifted(x, axis, k * h);
            if !field.contains(p) {
                return Err(Error::OutOfDomain { point: p });
            }
        }
    }
    Ok(())
}

/// Fourth-order central difference of `f` along one axis.
pub fn central_difference<V: FieldValue>(f: impl Fn(Point) -> V, x: Point, axis: usize, h: f64) -> V {
    let fp1 = f(shifted(x, axis, h));
    let fm1 = f(shifted(x, axis, -h));
    let fp2 = f(shifted(x, axis, 2.0 * h));
    let fm2 = f(shifted(x, axis, -2.0 * h));
    let s = 1.0 / (12.0 * h);
    V::zero()
        .add_scaled(8.0 * s, fp1)
        .add_scaled(-8.0 * s, fm1)
        .add_scaled(-s, fp2)
        .add_scaled(s, fm2)
}

/// Finite-difference partials, ignoring any analytic gradient.
pub fn fd_partials<F: Field + ?Sized>(field: &F, x: Point, h: f64) -> Result<[F::Value; 4]> {
    if !field.contains(x) {
        return Err(Error::OutOfDomain { point: x });
    }
    check_stencil(field, x, h)?;
    Ok(std::array::from_fn(|axis| central_difference(|p| field.value(p), x, axis, h)))
}

/// `∂_α field` at `x`: exact when available, else fourth-order differences with step `h`.
pub fn partials<F: Field + ?Sized>(field: &F, x: Point, h: f64) -> Result<[F::Value; 4]> {
    if !field.contains(x) {
        return Err(Error::OutOfDomain { point: x });
    }
    if let Some(d) = field.exact_partials(x) {
        return Ok(d);
    }
    fd_partials(field, x, h)
}

/// `∂_α ∂_β field` at `x`.
///
/// Uses exact second partials when present, else differences the exact
/// gradient, else a nested fourth-order stencil.
pub fn second_partials<F: Field + ?Sized>(field: &F, x: Point, h: f64) -> Result<[[F::Value; 4]; 4]> {
    if !field.contains(x) {
        return Err(Error::OutOfDomain { point: x });
    }
    if let Some(d2) = field.exact_second_partials(x) {
        return Ok(d2);
    }
    check_stencil(field, x, h)?;
    if field.exact_partials(x).is_some() {
        let mut out = [[F::Value::zero(); 4]; 4];
        for (alpha, row) in out.iter_mut().enumerate() {
            let d = central_difference(
                |p| {
                    let g = field.exact_partials(p).expect("gradient present at centre");
                    Grad(g)
                },
                x,
                alpha,
                h,
            );
            *row = d.0;
        }
        return Ok(out);
    }
    let mut out = [[F::Value::zero(); 4]; 4];
    for (alpha, row) in out.iter_mut().enumerate() {
        let d = central_difference(
            |p| Grad(std::array::from_fn(|beta| central_difference(|q| field.value(q), p, beta, h))),
            x,
            alpha,
            h,
        );
        *row = d.0;
    }
    Ok(out)
}

/// d'Alembertian `∂_α ∂^α field = ∂₀² − ∇²`.
pub fn dalembertian<F: Field + ?Sized>(field: &F, x: Point, h: f64) -> Result<F::Value> {
    let d2 = second_partials(field, x, h)?;
    Ok((0..4).fold(F::Value::zero(), |acc, a| acc.add_scaled(METRIC[a], d2[a][a])))
}

/// Raise the index of a gradient: `∂^α = g^{αβ} ∂_β`.
pub fn raise<V: FieldValue>(d: [V; 4]) -> [V; 4] {
    std::array::from_fn(|a| V::zero().add_scaled(METRIC[a], d[a]))
}

/// Lower the index of a four-vector.
pub fn lower(v: &FourVector) -> FourVector {
    FourVector::from_fn(|a, _| METRIC[a] * v[a])
}

/// Array of field values so a whole gradient can go through one stencil.
#[derive(Clone, Copy)]
struct Grad<V>([V; 4]);

impl<V: FieldValue> FieldValue for Grad<V> {
    fn zero() -> Self {
        Grad([V::zero(); 4])
    }
    fn add_scaled(self, c: f64, other: Self) -> Self {
        Grad(std::array::from_fn(|i| self.0[i].add_scaled(c, other.0[i])))
    }
    fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.max_abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn fourth_order_stencil_is_exact_on_quartics() {
        let f = FnField(|x: Point| x[1].powi(4) - 3.0 * x[0] * x[3] + x[2].powi(3));
        let x = [0.3, -0.7, 1.1, 0.4];
        let d = fd_partials(&f, x, 0.1).unwrap();
        assert_relative_eq!(d[0], -3.0 * x[3], epsilon = 1e-12);
        assert_relative_eq!(d[1], 4.0 * x[1].powi(3), epsilon = 1e-12);
        assert_relative_eq!(d[2], 3.0 * x[2].powi(2), epsilon = 1e-12);
        assert_relative_eq!(d[3], -3.0 * x[0], epsilon = 1e-12);
    }

    #[test]
    fn difference_error_scales_as_h_to_the_fourth() {
        let f = FnField(|x: Point| (2.0 * x[3]).sin());
        let x = [0.0, 0.0, 0.0, 0.37];
        let exact = 2.0 * (2.0f64 * 0.37).cos();
        let e1 = (fd_partials(&f, x, 0.02).unwrap()[3] - exact).abs();
        let e2 = (fd_partials(&f, x, 0.01).unwrap()[3] - exact).abs();
        let order = (e1 / e2).log2();
        assert!((order - 4.0).abs() < 0.1, "order {order}");
    }

    #[test]
    fn dalembertian_of_wave_vanishes_on_light_cone() {
        let f = FnField(|x: Point| (x[0] - x[1]).sin());
        let v = dalembertian(&f, [0.2, 0.5, 0.0, 0.0], 1e-2).unwrap();
        assert!(v.abs() < 1e-8);
        let g = FnField(|x: Point| x[2] * x[2]);
        assert_relative_eq!(dalembertian(&g, [0.0; 4], 1e-2).unwrap(), -2.0, epsilon = 1e-9);
    }

    #[test]
    fn stencil_outside_domain_is_reported() {
        struct HalfSpace;
        impl Field for HalfSpace {
            type Value = f64;
            fn value(&self, x: Point) -> f64 {
                x[1]
            }
            fn contains(&self, x: Point) -> bool {
                x[1] > 0.0
            }
        }
        let err = partials(&HalfSpace, [0.0, 0.001, 0.0, 0.0], 0.01).unwrap_err();
        assert!(matches!(err, Error::OutOfDomain { .. }));
        assert!(partials(&HalfSpace, [0.0, 1.0, 0.0, 0.0], 0.01).is_ok());
    }

    #[test]
    fn raise_flips_spatial_signs() {
        let r = raise([1.0, 2.0, 3.0, 4.0]);
        assert_eq!(r, [1.0, -2.0, -3.0, -4.0]);
    }
}
