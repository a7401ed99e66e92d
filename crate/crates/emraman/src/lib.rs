//! Numerical spectral theory, resonance geometry and Raman growth rates for the
//! two-fluid Euler-Maxwell system, with symbolic-flow and Zakharov solvers.
//!
//! The crate is organised by topic:
//!
//! * [`spectral`]: the 14x14 hyperbolic symbol, its eigenvalues, eigenvectors
//!   and projectors.
//! * [`resonance`]: phase functions, resonant sets, thresholds, separation
//!   checks and cut-offs.
//! * [`interaction`]: the leading source term, interaction coefficients, traces
//!   and growth rates.
//! * [`symflow`]: time integration of the 2- and 3-block symbolic-flow systems.
//! * [`zakharov`]: split-step solver for the envelope equations.
//!
//! Dense frequency sweeps go through [`sweep`], which runs on rayon when the
//! `parallel` feature is on (the default) and sequentially otherwise.

pub mod csv;
pub mod fourier;
pub mod interaction;
pub mod params;
pub mod resonance;
pub mod spectral;
pub mod sweep;
pub mod symflow;
pub mod zakharov;

pub use num_complex::Complex64 as C64;
pub use params::{Frequency, ParamError, PlasmaParams};

/// `i`, the imaginary unit.
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}
