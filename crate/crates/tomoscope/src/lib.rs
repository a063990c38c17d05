//! Optical homodyne tomography toolkit.
//!
//! The probability density `w(X, theta)` of the rotated quadrature
//! `X_theta = q cos(theta) + p sin(theta)` fully characterises a quantum
//! state. This crate builds such tomograms from density matrices, converts
//! between tomograms, Wigner functions and density matrices, applies
//! quantum observables directly in tomogram space, and evaluates their
//! expectation values through dual symbols.

pub mod catalogue;
pub mod config;
pub mod error;
pub mod io;
pub mod numgrid;
pub mod phasespace;
pub mod radon;
pub mod states;
pub mod symbols;
pub mod tomops;
pub mod verify;

pub use error::{Result, TomoError};
pub use numgrid::{AngleGrid, FilterSpec, Grid1D, ZeroModePolicy};
pub use phasespace::WignerFunction;
pub use radon::OpticalTomogram;
pub use symbols::{OperatorMatrix, RegularDualSymbol, SingularDualSymbol};
pub use states::{DensityMatrix, ModeParams, Observable, WaveFunction};

/// Scalar type used by all numerics.
pub type Real = f64;
/// Complex scalar used by all numerics.
pub type Complex = num_complex::Complex64;
