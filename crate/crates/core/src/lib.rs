//! The Dirac field as a real eight-component field.
//!
//! The crate builds the real matrices `η^α`, `N` and the unitary `S`,
//! converts between the real field Φ and four-component Dirac spinors,
//! provides exact free and Coulomb-bound solutions, evaluates the charge,
//! energy-momentum and spin functionals, implements the electromagnetic
//! coupling through the matrix factors `F₁`, `F₂`, and evolves the real
//! first-order system on a periodic lattice.
//!
//! Units are natural (`ħ = c = 1`); κ is an inverse length.
//!
//! Each capability has a runnable program under `examples/`; the
//! `realdirac` binary wraps the same functionality for scripted use.

pub mod algebra;
pub mod cli;
pub mod conserved;
pub mod error;
pub mod field;
pub mod free_field;
pub mod interaction;
pub mod io;
pub mod lattice;
pub mod quadrature;
pub mod spinor;

pub use error::{Error, Result};
pub use field::{ComplexField8, Field, FourVector, Point, RealField8, Spinor4};
