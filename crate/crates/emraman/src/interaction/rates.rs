use super::trace::{acoustic_coupling, resonance_trace};
use super::InteractionError;
use crate::resonance::{k_c, space_time_resonances, PairLabel};
use crate::sweep::map;
use crate::{Frequency, PlasmaParams};
use serde::Serialize;

/// Pairs whose rates come from the trace at their axis resonances.
pub const TRACE_PAIRS: [PairLabel; 7] = [
    PairLabel::of(1, 2),
    PairLabel::of(1, 4),
    PairLabel::of(2, 3),
    PairLabel::of(2, 4),
    PairLabel::of(2, 5),
    PairLabel::of(3, 4),
    PairLabel::of(4, 5),
];

#[derive(Debug, Clone, Serialize)]
pub struct GrowthRateReport {
    pub gamma_per_pair: Vec<(PairLabel, f64)>,
    pub gamma: f64,
    pub argmax_pair: PairLabel,
    pub argmax_xi: f64,
    pub amplitude_max: f64,
    /// `amplitude * sqrt(bound)` for (1,3) and (3,5); reported, not maximised.
    pub acoustic: Vec<(PairLabel, f64)>,
}

impl GrowthRateReport {
    pub fn rate(&self, pair: PairLabel) -> Option<f64> {
        self.gamma_per_pair.iter().find(|(p, _)| *p == pair).map(|&(_, g)| g)
    }
}

/// `Re sqrt(tr)` with the principal branch, so negative traces give 0.
pub fn rate_from_trace(tr: crate::C64) -> f64 {
    tr.sqrt().re
}

/// `(xi, trace)` at every axis resonance of `pair`.
pub fn traces_at_resonances(params: &PlasmaParams, pair: PairLabel) -> Result<Vec<(f64, crate::C64)>, InteractionError> {
    let roots = space_time_resonances(params, pair)?;
    Ok(roots.iter().map(|r| (r.zeta.xi, resonance_trace(params, pair, &Frequency::axis(r.zeta.xi)))).collect())
}

/// Rates `gamma_jj' = amplitude * max Re sqrt(tr)` over the space-time
/// resonances of each pair, and their maximum. Ties prefer (1,4).
pub fn growth_rates(params: &PlasmaParams, amplitude_max: f64) -> Result<GrowthRateReport, InteractionError> {
    let kc = k_c(params.theta_e());
    if params.k().abs() <= kc {
        return Err(InteractionError::BelowThreshold { k: params.k(), k_c: kc });
    }
    if !(amplitude_max >= 0.0) {
        return Err(InteractionError::Amplitude(amplitude_max));
    }
    let per = map(&TRACE_PAIRS, |&pair| {
        traces_at_resonances(params, pair).map(|ts| {
            ts.into_iter()
                .map(|(xi, tr)| (xi, amplitude_max * rate_from_trace(tr)))
                .fold((f64::NAN, 0.0), |acc, c| if c.1 > acc.1 || acc.0.is_nan() { c } else { acc })
        })
    });
    let mut gamma_per_pair = Vec::with_capacity(TRACE_PAIRS.len());
    let mut best = (PairLabel::of(1, 4), f64::NAN, f64::NEG_INFINITY);
    for (pair, r) in TRACE_PAIRS.iter().zip(per) {
        let (xi, g) = r?;
        gamma_per_pair.push((*pair, g));
        let prefer = *pair == PairLabel::of(1, 4) && g >= best.2;
        if g > best.2 || prefer {
            best = (*pair, xi, g);
        }
    }
    let acoustic = [PairLabel::of(1, 3), PairLabel::of(3, 5)]
        .into_iter()
        .map(|p| acoustic_coupling(params, p).map(|a| (p, amplitude_max * a.bound.sqrt())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GrowthRateReport {
        gamma_per_pair,
        gamma: best.2.max(0.0),
        argmax_pair: best.0,
        argmax_xi: best.1,
        amplitude_max,
        acoustic,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RamanClass {
    Stable,
    UnstableBackward,
    UnstableForward,
    Transparent,
    AcousticSmall,
}

impl std::fmt::Display for RamanClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RamanClass::Stable => "stable",
            RamanClass::UnstableBackward => "unstable-backward",
            RamanClass::UnstableForward => "unstable-forward",
            RamanClass::Transparent => "transparent",
            RamanClass::AcousticSmall => "acoustic-small",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RamanEntry {
    pub pair: PairLabel,
    pub xi: f64,
    pub trace: f64,
    pub class: RamanClass,
}

/// Whether the electromagnetic wave of an unstable (1,4) or (2,5) resonance
/// at `xi` travels against the incident wave.
pub fn is_backward(params: &PlasmaParams, pair: PairLabel, xi: f64) -> bool {
    let k = params.k();
    let em_velocity_sign = if pair == PairLabel::of(2, 5) { -xi.signum() } else { (xi + k).signum() };
    em_velocity_sign != k.signum()
}

/// Classification of every axis resonance of the trace pairs and the acoustic pairs.
pub fn classify_raman(params: &PlasmaParams) -> Result<Vec<RamanEntry>, InteractionError> {
    let kc = k_c(params.theta_e());
    if params.k().abs() <= kc {
        return Err(InteractionError::BelowThreshold { k: params.k(), k_c: kc });
    }
    let mut out = Vec::new();
    for pair in TRACE_PAIRS {
        for (xi, tr) in traces_at_resonances(params, pair)? {
            let t = tr.re;
            let class = if t.abs() <= 1e-12 {
                RamanClass::Transparent
            } else if t < 0.0 {
                RamanClass::Stable
            } else if is_backward(params, pair, xi) {
                RamanClass::UnstableBackward
            } else {
                RamanClass::UnstableForward
            };
            out.push(RamanEntry { pair, xi, trace: t, class });
        }
    }
    for pair in [PairLabel::of(1, 3), PairLabel::of(3, 5)] {
        for r in space_time_resonances(params, pair)? {
            out.push(RamanEntry { pair, xi: r.zeta.xi, trace: f64::NAN, class: RamanClass::AcousticSmall });
        }
    }
    Ok(out)
}

/// Backward and forward Raman rates from the (1,4) resonances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RamanRates {
    pub backward: f64,
    pub forward: f64,
    pub xi_backward: f64,
    pub xi_forward: f64,
}

/// `amplitude * Re sqrt(tr_14)` at the backward and forward (1,4) roots.
pub fn raman_rates(params: &PlasmaParams, amplitude: f64) -> Result<RamanRates, InteractionError> {
    let kc = k_c(params.theta_e());
    if params.k().abs() <= kc {
        return Err(InteractionError::BelowThreshold { k: params.k(), k_c: kc });
    }
    let pair = PairLabel::of(1, 4);
    let mut out = RamanRates { backward: 0.0, forward: 0.0, xi_backward: f64::NAN, xi_forward: f64::NAN };
    for (xi, tr) in traces_at_resonances(params, pair)? {
        let g = amplitude * rate_from_trace(tr);
        if is_backward(params, pair, xi) {
            if out.xi_backward.is_nan() || g > out.backward {
                out.backward = g;
                out.xi_backward = xi;
            }
        } else if out.xi_forward.is_nan() || g > out.forward {
            out.forward = g;
            out.xi_forward = xi;
        }
    }
    Ok(out)
}

/// Leading-order `(backward, forward)` rates from the small-`theta_e` trace
/// formula; `theta_e` may be any positive number. Even in `k`.
pub fn leading_raman_rates(k: f64, theta_e: f64, amplitude: f64) -> (f64, f64) {
    let b = super::leading_trace_14(k.abs(), theta_e, -1.0);
    let f = super::leading_trace_14(k.abs(), theta_e, 1.0);
    (amplitude * b.max(0.0).sqrt(), amplitude * f.max(0.0).sqrt())
}
