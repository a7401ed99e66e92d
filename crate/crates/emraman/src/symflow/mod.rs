//! Symbolic flow: frozen 2- and 3-block transport systems in `(t, y)`, their
//! numerical integration, analytic oracles and growth-rate fits.

mod block;
mod oracles;
mod solver;

pub use block::{BlockKind, BlockSpec, Coupling, CouplingOptions, Envelope, Triplet};
pub use oracles::{
    classify_delta_m, estimate_growth, far_field_oracle, resonant_ode_oracle, DeltaM, DeltaMClass, GrowthFit,
};
pub use solver::{
    field_norms, run_flow, run_flow_with, Datum, FlowGrid, FlowSolver, FlowTrajectory, RunOptions, Snapshot,
};

use crate::resonance::ResonanceError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymflowError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("time step {dt:e} exceeds the transport limit {limit:e}")]
    Cfl { dt: f64, limit: f64 },
    #[error("envelope support radius {radius} exceeds a quarter of the period {length}")]
    Support { radius: f64, length: f64 },
    #[error("datum does not match the block and grid")]
    Datum,
    #[error("the far-field oracle needs a block without coupling")]
    Coupled,
    #[error("need at least 10 samples in the fit window, got {0}")]
    TooFewSamples(usize),
    #[error("non-positive norm at t = {0}")]
    NonPositiveNorm(f64),
    #[error(transparent)]
    Resonance(#[from] ResonanceError),
}
