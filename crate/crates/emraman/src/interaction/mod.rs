//! Leading source term `B_p`, interaction coefficients, resonance traces,
//! scalarisation and growth rates.

mod rates;
mod scalarize;
mod source;
mod trace;

pub use rates::{
    classify_raman, growth_rates, is_backward, leading_raman_rates, raman_rates, rate_from_trace, traces_at_resonances,
    GrowthRateReport, RamanClass, RamanEntry, RamanRates, TRACE_PAIRS,
};
pub use scalarize::{scalarize, Scalarized};
pub use source::{interaction_matrix, source_action, source_matrix};
pub use trace::{
    acoustic_coupling, leading_trace_12, leading_trace_14, resonance_trace, trace_closed_form, trace_cubed_form,
    AcousticCoupling, ClosedTrace,
};

use crate::resonance::{PairLabel, ResonanceError};
use crate::spectral::SpectralError;
use crate::{Frequency, PlasmaParams, C64};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InteractionError {
    #[error("|k| = {k} is not above k_c = {k_c}: no amplifying resonance, the system is stable")]
    BelowThreshold { k: f64, k_c: f64 },
    #[error("amplitude must be non-negative, got {0}")]
    Amplitude(f64),
    #[error("no closed-form trace for pair ({0},{1})")]
    NoClosedForm(u8, u8),
    #[error("pair ({0},{1}) is not an acoustic pair")]
    NotAcoustic(u8, u8),
    #[error("matrix is not rank one (sigma_2/sigma_1 = {ratio:e})")]
    NotRankOne { ratio: f64 },
    #[error("trace of the product vanishes")]
    ZeroTrace,
    #[error("incompatible block shapes")]
    Shape,
    #[error(transparent)]
    Resonance(#[from] ResonanceError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Unstable,
    Stable,
    Transparent,
    AcousticSmall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamanDirection {
    Backward,
    Forward,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InteractionReport {
    pub pair: PairLabel,
    pub zeta: Frequency,
    pub trace_matrix: C64,
    pub trace_closed: Option<C64>,
    pub classification: Classification,
    pub raman_direction: RamanDirection,
    /// Set off the axis, where the source keeps the convective term.
    pub approximate: bool,
}

/// Trace data and classification of one pair at one frequency.
pub fn interaction_report(params: &PlasmaParams, pair: PairLabel, zeta: &Frequency) -> Result<InteractionReport, InteractionError> {
    let trace_matrix = resonance_trace(params, pair, zeta);
    let acoustic = matches!((pair.j(), pair.jp()), (1, 3) | (3, 5));
    let trace_closed = if zeta.on_axis() && !acoustic {
        match trace_closed_form(params, pair, zeta.xi) {
            Ok(t) => t.exact(),
            Err(InteractionError::NoClosedForm(..)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let t = trace_matrix.re;
    let classification = if acoustic {
        Classification::AcousticSmall
    } else if trace_matrix.norm() <= 1e-12 {
        Classification::Transparent
    } else if t > 0.0 {
        Classification::Unstable
    } else {
        Classification::Stable
    };
    let raman_direction = match classification {
        Classification::Unstable if pair == PairLabel::of(1, 4) || pair == PairLabel::of(2, 5) => {
            if is_backward(params, pair, zeta.xi) {
                RamanDirection::Backward
            } else {
                RamanDirection::Forward
            }
        }
        _ => RamanDirection::NotApplicable,
    };
    Ok(InteractionReport {
        pair,
        zeta: *zeta,
        trace_matrix,
        trace_closed,
        classification,
        raman_direction,
        approximate: !zeta.on_axis(),
    })
}
