use thiserror::Error;

use crate::field::Point;

#[derive(Debug, Error)]
pub enum Error {
    #[error("spacetime index {0} out of range 0..=3")]
    IndexOutOfRange(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field is not real: max imaginary residue {max_imag:e} exceeds {tolerance:e}")]
    RealityViolation { max_imag: f64, tolerance: f64 },

    #[error("stencil point {point:?} lies outside the field's domain")]
    OutOfDomain { point: Point },

    /// `at` is the spacetime point, or the potential value for pointwise calls.
    #[error("coupling is singular at {at:?}: 1 - a^2 = {denominator:e}")]
    SingularCoupling { at: [f64; 4], denominator: f64 },

    #[error("supercritical nuclear charge: Z*alpha = {0} >= 1")]
    Supercritical(f64),

    #[error("box of side {box_l} does not hold an integer number of wavelengths (k L / 2pi = {cycles})")]
    Incommensurate { box_l: f64, cycles: f64 },

    #[error("CFL number {cfl} exceeds the stability limit {limit}")]
    CflViolation { cfl: f64, limit: f64 },

    #[error("non-finite value in lattice state at step {step}")]
    NonFinite { step: usize },

    #[error("shooting solver failed: {0}")]
    Shooting(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
