//! The concrete matrices of the real formulation and their identities.
//!
//! The real matrices `η^α` and `N` are built with integer entries so that
//! the Clifford and commutation identities can be checked exactly. The
//! unitary `S` carries `1/√2` factors and is checked in floating point.

use std::sync::LazyLock;

use nalgebra::SMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Matrix8<T> = SMatrix<T, 8, 8>;
pub type Matrix4<T> = SMatrix<T, 4, 4>;

/// Diagonal of `g^{αβ}`, signature (+, −, −, −).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricSignature;

impl MetricSignature {
    pub const DIAGONAL: [i32; 4] = [1, -1, -1, -1];

    pub fn g(alpha: usize, beta: usize) -> i32 {
        if alpha == beta {
            Self::DIAGONAL[alpha]
        } else {
            0
        }
    }
}

/// Floating-point tolerance for identities involving `S`.
pub const FLOAT_TOLERANCE: f64 = 1e-15;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_index(alpha: usize) -> Result<()> {
    if alpha > 3 {
        Err(Error::IndexOutOfRange(alpha))
    } else {
        Ok(())
    }
}

/// The 4×4 blocks `a^1, a^2, a^3` of the spatial `η^i`.
pub fn a_block(i: usize) -> Result<Matrix4<i32>> {
    let rows: [[i32; 4]; 4] = match i {
        1 => [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]],
        2 => [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        3 => [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
        _ => return Err(Error::IndexOutOfRange(i)),
    };
    Ok(Matrix4::from_fn(|r, col| rows[r][col]))
}

/// Real 8×8 matrix `η^α`.
///
/// `η^0 = diag(1₄, −1₄)`, `η^i = [[0, a^i], [−a^{i+}, 0]]`.
pub fn eta(alpha: usize) -> Result<Matrix8<i32>> {
    check_index(alpha)?;
    let mut m = Matrix8::<i32>::zeros();
    if alpha == 0 {
        for k in 0..8 {
            m[(k, k)] = if k < 4 { 1 } else { -1 };
        }
    } else {
        let a = a_block(alpha)?;
        m.fixed_view_mut::<4, 4>(0, 4).copy_from(&a);
        m.fixed_view_mut::<4, 4>(4, 0).copy_from(&(-a.transpose()));
    }
    Ok(m)
}

/// The real matrix `N_a`.
pub fn n_a() -> Matrix4<i32> {
    let rows = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
    Matrix4::from_fn(|r, col| rows[r][col])
}

/// The real matrix `N_b`.
pub fn n_b() -> Matrix4<i32> {
    let rows = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]];
    Matrix4::from_fn(|r, col| rows[r][col])
}

/// `N = diag(N_a, N_b)`; squares to `−1` and commutes with every `η^α`.
pub fn n_matrix() -> Matrix8<i32> {
    let mut m = Matrix8::<i32>::zeros();
    m.fixed_view_mut::<4, 4>(0, 0).copy_from(&n_a());
    m.fixed_view_mut::<4, 4>(4, 4).copy_from(&n_b());
    m
}

/// Unitary matrix that block-diagonalises the real system into two
/// four-component Dirac equations.
pub fn s_matrix() -> Matrix8<Complex64> {
    let o = c(0.0);
    let p = c(1.0);
    let m = c(-1.0);
    let pi = I;
    let mi = -I;
    let rows = [
        [m, pi, o, o, o, o, o, o],
        [o, o, p, mi, o, o, o, o],
        [o, o, o, o, mi, m, o, o],
        [o, o, o, o, o, o, pi, m],
        [o, o, m, mi, o, o, o, o],
        [m, mi, o, o, o, o, o, o],
        [o, o, o, o, o, o, mi, m],
        [o, o, o, o, mi, p, o, o],
    ];
    let scale = c(std::f64::consts::FRAC_1_SQRT_2);
    Matrix8::from_fn(|r, col| rows[r][col] * scale)
}

/// Dirac–Pauli `γ^α`: `γ⁰ = diag(1, 1, −1, −1)`, `γ^i = [[0, σ^i], [−σ^i, 0]]`.
pub fn gamma(alpha: usize) -> Result<Matrix4<Complex64>> {
    check_index(alpha)?;
    let mut m = Matrix4::<Complex64>::zeros();
    if alpha == 0 {
        for k in 0..4 {
            m[(k, k)] = c(if k < 2 { 1.0 } else { -1.0 });
        }
        return Ok(m);
    }
    let sigma: [[Complex64; 2]; 2] = match alpha {
        1 => [[c(0.0), c(1.0)], [c(1.0), c(0.0)]],
        2 => [[c(0.0), -I], [I, c(0.0)]],
        _ => [[c(1.0), c(0.0)], [c(0.0), c(-1.0)]],
    };
    for r in 0..2 {
        for col in 0..2 {
            m[(r, col + 2)] = sigma[r][col];
            m[(r + 2, col)] = -sigma[r][col];
        }
    }
    Ok(m)
}

pub fn to_real<const D: usize>(m: &SMatrix<i32, D, D>) -> SMatrix<f64, D, D> {
    m.map(f64::from)
}

pub fn to_complex<const D: usize>(m: &SMatrix<i32, D, D>) -> SMatrix<Complex64, D, D> {
    m.map(|v| c(f64::from(v)))
}

pub fn block_diag4(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> Matrix8<Complex64> {
    let mut m = Matrix8::zeros();
    m.fixed_view_mut::<4, 4>(0, 0).copy_from(a);
    m.fixed_view_mut::<4, 4>(4, 4).copy_from(b);
    m
}

/// Cached floating-point copies of the matrices, for hot loops.
pub struct RealMatrices {
    pub eta: [Matrix8<f64>; 4],
    pub n: Matrix8<f64>,
    pub n_b: Matrix4<f64>,
    pub gamma: [Matrix4<Complex64>; 4],
    pub s: Matrix8<Complex64>,
    pub s_adjoint: Matrix8<Complex64>,
}

pub static MATRICES: LazyLock<RealMatrices> = LazyLock::new(|| {
    let s = s_matrix();
    RealMatrices {
        eta: std::array::from_fn(|a| to_real(&eta(a).expect("index in range"))),
        n: to_real(&n_matrix()),
        n_b: to_real(&n_b()),
        gamma: std::array::from_fn(|a| gamma(a).expect("index in range")),
        s_adjoint: s.adjoint(),
        s,
    }
});

/// The matrices an [`AlgebraReport`] is computed from.
///
/// Fields are public so a caller can perturb an entry and confirm that
/// the verification flags it.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraSet {
    pub eta: [Matrix8<i32>; 4],
    pub n: Matrix8<i32>,
    pub n_b: Matrix4<i32>,
    pub gamma: [Matrix4<Complex64>; 4],
    pub s: Matrix8<Complex64>,
}

impl AlgebraSet {
    pub fn standard() -> Self {
        Self {
            eta: std::array::from_fn(|a| eta(a).expect("index in range")),
            n: n_matrix(),
            n_b: n_b(),
            gamma: std::array::from_fn(|a| gamma(a).expect("index in range")),
            s: s_matrix(),
        }
    }
}

impl Default for AlgebraSet {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity_name: String,
    pub max_abs_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub checks: Vec<IdentityCheck>,
    pub float_tolerance: f64,
    pub all_pass: bool,
}

impl AlgebraReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.identity_name == name)
    }
}

fn int_dev<const D: usize>(m: &SMatrix<i32, D, D>) -> f64 {
    m.iter().map(|v| v.abs()).max().map_or(0.0, f64::from)
}

fn cplx_dev<const D: usize>(m: &SMatrix<Complex64, D, D>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.norm()))
}

/// Check every identity of the matrix algebra on the standard matrices.
pub fn verify_algebra() -> AlgebraReport {
    verify_algebra_with(&AlgebraSet::standard(), FLOAT_TOLERANCE)
}

/// Check every identity on an arbitrary (possibly tampered) matrix set.
///
/// Integer identities must hold with deviation exactly zero; identities
/// involving `S` must hold below `float_tol`.
pub fn verify_algebra_with(set: &AlgebraSet, float_tol: f64) -> AlgebraReport {
    let mut checks = Vec::with_capacity(26);
    let mut exact = |name: String, dev: f64| {
        checks.push(IdentityCheck { identity_name: name, max_abs_deviation: dev, pass: dev == 0.0 });
    };

    let id8 = Matrix8::<i32>::identity();
    for a in 0..4 {
        for b in 0..4 {
            let anti = set.eta[a] * set.eta[b] + set.eta[b] * set.eta[a];
            let dev = int_dev(&(anti - id8 * (2 * MetricSignature::g(a, b))));
            exact(format!("eta_anticommutator[{a},{b}]"), dev);
        }
    }

    exact("n_antihermitian".into(), int_dev(&(set.n.transpose() + set.n)));
    exact("n_squares_to_minus_one".into(), int_dev(&(set.n * set.n + id8)));
    let comm = (0..4)
        .map(|a| int_dev(&(set.n * set.eta[a] - set.eta[a] * set.n)))
        .fold(0.0, f64::max);
    exact("n_commutes_with_eta".into(), comm);

    let mut float = |name: String, dev: f64| {
        checks.push(IdentityCheck { identity_name: name, max_abs_deviation: dev, pass: dev < float_tol });
    };

    let s_adj = set.s.adjoint();
    float("s_unitary".into(), cplx_dev(&(set.s * s_adj - Matrix8::<Complex64>::identity())));

    let nb = to_complex(&set.n_b);
    for b in 0..4 {
        let (name, dev) = if b == 2 {
            ("n_b_anticommutes_gamma2".to_string(), cplx_dev(&(nb * set.gamma[2] + set.gamma[2] * nb)))
        } else {
            (format!("n_b_commutes_gamma{b}"), cplx_dev(&(nb * set.gamma[b] - set.gamma[b] * nb)))
        };
        float(name, dev);
    }

    let conj_eta = (0..4)
        .map(|a| {
            let lhs = set.s * to_complex(&set.eta[a]) * s_adj;
            cplx_dev(&(lhs - block_diag4(&set.gamma[a], &set.gamma[a])))
        })
        .fold(0.0, f64::max);
    float("s_eta_conjugation".into(), conj_eta);

    let minus_i = Matrix4::<Complex64>::identity() * (-I);
    let plus_i = Matrix4::<Complex64>::identity() * I;
    let conj_n = cplx_dev(&(set.s * to_complex(&set.n) * s_adj - block_diag4(&minus_i, &plus_i)));
    float("s_n_conjugation".into(), conj_n);

    let all_pass = checks.iter().all(|c| c.pass);
    AlgebraReport { checks, float_tolerance: float_tol, all_pass }
}
