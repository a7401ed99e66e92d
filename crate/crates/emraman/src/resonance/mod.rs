//! Phase functions `Phi_{jj'}(xi, eta) = lambda_j(xi + k, eta) - lambda_j'(xi, eta) - omega`
//! of the limiting branches (with `lambda_3 = 0`), their zero sets, the
//! thresholds in `k`, separation checks and the resonance cut-offs.

mod curve;
mod cutoff;
mod phase;
mod roots;
mod separation;
mod thresholds;

pub use curve::{resonance_curve, GridSpec, ResonanceCurve};
pub use cutoff::{chi0, cutoff_chi, is_resonant_pair, CutoffFamily, CutoffVariant};
pub use phase::{phase, phase_and_gradient, phase_gradient_xi_r};
pub use roots::{
    default_r_window, default_xi_window, find_axis_resonances, space_time_resonances, SCAN_STEP, SPACE_TIME_TOL,
};
pub use separation::{
    separation_report, Expectation, Intersection, SeparationEntry, SeparationReport, Verdict, INTERSECTIONS,
};
pub use thresholds::{k_c, k_min, space_time_condition, thresholds, Thresholds};

use crate::Frequency;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ResonanceError {
    #[error("pair ({0},{1}) is not an ordered pair of branches 1..=5 with j < j'")]
    InvalidPair(u8, u8),
    #[error("invalid scan window [{0}, {1}]")]
    InvalidWindow(f64, f64),
    #[error("root tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error(
        "space-time localisation needs sqrt(1+k^2) <= (1-theta_e^2)/theta_e^2; got sqrt(1+k^2) = {lhs} > {rhs}"
    )]
    Regime { lhs: f64, rhs: f64 },
    #[error("cut-off scale delta_res must be positive, got {0}")]
    InvalidDelta(f64),
}

/// An ordered pair `(j, j')` of limiting branches with `j < j'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairLabel {
    j: u8,
    jp: u8,
}

impl PairLabel {
    pub fn new(j: u8, jp: u8) -> Result<Self, ResonanceError> {
        if (1..=5).contains(&j) && (1..=5).contains(&jp) && j < jp {
            Ok(Self { j, jp })
        } else {
            Err(ResonanceError::InvalidPair(j, jp))
        }
    }

    /// Panicking constructor for literals.
    pub const fn of(j: u8, jp: u8) -> Self {
        assert!(j >= 1 && jp <= 5 && j < jp, "invalid pair");
        Self { j, jp }
    }

    pub fn j(&self) -> u8 {
        self.j
    }
    pub fn jp(&self) -> u8 {
        self.jp
    }

    /// All ten ordered pairs.
    pub fn all() -> Vec<PairLabel> {
        let mut v = Vec::with_capacity(10);
        for j in 1..=5 {
            for jp in (j + 1)..=5 {
                v.push(PairLabel { j, jp });
            }
        }
        v
    }
}

impl std::fmt::Display for PairLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.j, self.jp)
    }
}

impl std::str::FromStr for PairLabel {
    type Err = ResonanceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut it = t.split(',').map(|x| x.trim().parse::<u8>());
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => PairLabel::new(a, b),
            _ => Err(ResonanceError::InvalidPair(0, 0)),
        }
    }
}

/// A located zero of a phase function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceRecord {
    pub pair: PairLabel,
    pub zeta: Frequency,
    /// `|Phi(zeta)|` at the returned point.
    pub phase_residual: f64,
    /// Transverse group-velocity mismatch `d_eta Phi(zeta)`.
    pub nu: [f64; 2],
    pub is_space_time: bool,
}
