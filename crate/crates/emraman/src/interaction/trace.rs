use super::source::{interaction_matrix, source_matrix};
use super::InteractionError;
use crate::resonance::PairLabel;
use crate::spectral::{acoustic_vector, inner, transverse_basis, transverse_vector};
use crate::{c, Frequency, PlasmaParams, C64};
use serde::Serialize;

/// `tr B_{1jj'}(zeta) B_{-1j'j}(xi + k, eta)` from projector products.
pub fn resonance_trace(params: &PlasmaParams, pair: PairLabel, zeta: &Frequency) -> C64 {
    let (j, jp) = (pair.j(), pair.jp());
    let fwd = interaction_matrix(params, 1, j, jp, zeta);
    let back = interaction_matrix(params, -1, jp, j, &zeta.shifted(params.k()));
    (fwd * back).trace()
}

/// Closed-form trace, or the size of the `sqrt(eps)` bound for the acoustic pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ClosedTrace {
    Exact(C64),
    SqrtEpsBound(f64),
}

impl ClosedTrace {
    pub fn exact(&self) -> Option<C64> {
        match self {
            ClosedTrace::Exact(v) => Some(*v),
            ClosedTrace::SqrtEpsBound(_) => None,
        }
    }
}

fn l1(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

fn l2(th: f64, x: f64) -> f64 {
    (1.0 + th * th * x * x).sqrt()
}

/// Closed forms of the trace on the axis.
pub fn trace_closed_form(params: &PlasmaParams, pair: PairLabel, xi: f64) -> Result<ClosedTrace, InteractionError> {
    let th = params.theta_e();
    let xk = xi + params.k();
    let t2 = th * th;
    let v = match (pair.j(), pair.jp()) {
        (1, 2) => -t2 * xi * xi / (4.0 * l1(xk) * l2(th, xi)),
        (1, 4) => t2 * xi * xi / (4.0 * l1(xk) * l2(th, xi)),
        (4, 5) => -t2 * xk * xk / (4.0 * l2(th, xk) * l1(xi)),
        (2, 5) => t2 * xk * xk / (4.0 * l2(th, xk) * l1(xi)),
        (2, 4) | (2, 3) | (3, 4) => 0.0,
        (1, 3) | (3, 5) => return Ok(ClosedTrace::SqrtEpsBound(acoustic_coupling(params, pair)?.bound)),
        (a, b) => return Err(InteractionError::NoClosedForm(a, b)),
    };
    Ok(ClosedTrace::Exact(c(v)))
}

/// The same forms with the cube of the slow branch in the denominator, kept
/// only to quantify how far that variant is from the matrix trace.
pub fn trace_cubed_form(params: &PlasmaParams, pair: PairLabel, xi: f64) -> Option<f64> {
    let th = params.theta_e();
    let xk = xi + params.k();
    let t2 = th * th;
    match (pair.j(), pair.jp()) {
        (1, 2) => Some(-t2 * xi * xi / (4.0 * l1(xk) * l2(th, xi).powi(3))),
        (1, 4) => Some(t2 * xi * xi / (4.0 * l1(xk) * l2(th, xi).powi(3))),
        (4, 5) => Some(-t2 * xk * xk / (4.0 * l2(th, xk).powi(3) * l1(xi))),
        (2, 5) => Some(t2 * xk * xk / (4.0 * l2(th, xk).powi(3) * l1(xi))),
        _ => None,
    }
}

/// Small-`theta_e` leading term of the (1,4) trace at `xi_14^{sign}`;
/// `theta_e` is a plain number here so that the unit-scaled value is available.
pub fn leading_trace_14(k: f64, theta_e: f64, sign: f64) -> f64 {
    let w = (1.0 + k * k).sqrt();
    theta_e * theta_e * (-k + sign.signum() * (w * w - 2.0 * w).sqrt()).powi(2) / (4.0 * (w - 1.0))
}

/// Leading term of the (1,2) trace at `xi_12^{sign}`.
pub fn leading_trace_12(k: f64, theta_e: f64, sign: f64) -> f64 {
    let w = (1.0 + k * k).sqrt();
    -theta_e * theta_e * (-k + sign.signum() * (w * w + 2.0 * w).sqrt()).powi(2) / (4.0 * (w + 1.0))
}

/// Overlaps of the source with the acoustic branch for (1,3) or (3,5), with
/// the `epsilon > 0` acoustic vectors. `small` is the normalised overlap that
/// vanishes with `epsilon` (from the electromagnetic side), `large` the one
/// that stays of order one, and `bound = small * large`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcousticCoupling {
    pub pair: PairLabel,
    pub xi: f64,
    pub small: f64,
    pub large: f64,
    pub bound: f64,
}

/// (1,3) is evaluated at `xi = -2k`, (3,5) at `xi = k` (the non-zero
/// space-time resonances).
pub fn acoustic_coupling(params: &PlasmaParams, pair: PairLabel) -> Result<AcousticCoupling, InteractionError> {
    let k = params.k();
    let (xi, em_at, ac_at, em_mu) = match (pair.j(), pair.jp()) {
        (1, 3) => (-2.0 * k, -k, -2.0 * k, 1.0),
        (3, 5) => (k, k, 2.0 * k, -1.0),
        (a, b) => return Err(InteractionError::NotAcoustic(a, b)),
    };
    let ze = Frequency::axis(em_at);
    let za = Frequency::axis(ac_at);
    // (1,3): B_{-1} maps the EM wave at xi+k to xi; (3,5): B_1 maps xi to xi+k.
    let (p_em_to_ac, p_ac_to_em) = if pair.j() == 1 { (-1, 1) } else { (1, -1) };
    let mu = em_mu * l1(em_at);
    let mut small: f64 = 0.0;
    let mut large: f64 = 0.0;
    for sign in [1.0, -1.0] {
        let (_, a) = acoustic_vector(params, &za, sign, true)?;
        for w in transverse_basis(&ze) {
            let e = transverse_vector(params, &ze, mu, w, true);
            let en = e.norm();
            let s = inner(&(source_matrix(params, p_em_to_ac, &ze) * e), &a).norm() / en;
            let l = inner(&(source_matrix(params, p_ac_to_em, &za) * a), &e).norm() / en;
            small = small.max(s);
            large = large.max(l);
        }
    }
    Ok(AcousticCoupling { pair, xi, small, large, bound: small * large })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_trace_at_one_four_root() {
        let p = PlasmaParams::new(0.0, 0.1, 0.0, 3.0).unwrap();
        let xi = -4.793367316158819;
        let t = resonance_trace(&p, PairLabel::of(1, 4), &Frequency::axis(xi));
        assert!((t.re - 0.02522619370565703).abs() < 1e-12, "{t}");
        assert!(t.im.abs() < 1e-12);
    }

    #[test]
    fn matrix_matches_closed_form_off_resonance() {
        let p = PlasmaParams::new(0.0, 0.1, 0.3, 3.0).unwrap();
        for pair in [(1, 2), (1, 4), (2, 5), (4, 5), (2, 4), (2, 3), (3, 4)] {
            let pair = PairLabel::of(pair.0, pair.1);
            for xi in [-6.1, -2.0, -0.4, 0.9, 3.3] {
                let m = resonance_trace(&p, pair, &Frequency::axis(xi));
                let f = trace_closed_form(&p, pair, xi).unwrap().exact().unwrap();
                assert!((m - f).norm() < 1e-10, "{pair} {xi}: {m} vs {f}");
            }
        }
    }

    #[test]
    fn leading_terms_frozen() {
        assert!((leading_trace_14(3.0, 1.0, -1.0) - 2.795468257895504).abs() < 1e-12);
        assert!((leading_trace_12(3.0, 1.0, 1.0) + 0.06501013166550412).abs() < 1e-12);
    }

    #[test]
    fn acoustic_couplings_vanish_with_epsilon() {
        let p = PlasmaParams::new(1e-4, 0.1, 0.05, 3.0).unwrap();
        for pair in [PairLabel::of(1, 3), PairLabel::of(3, 5)] {
            let a = acoustic_coupling(&p, pair).unwrap();
            let b = acoustic_coupling(&p.with_epsilon(1e-6).unwrap(), pair).unwrap();
            assert!(a.small > 0.0 && a.large > 0.1, "{a:?}");
            let ratio = a.small / b.small;
            assert!((ratio - 10.0).abs() < 1.0, "{ratio}");
        }
        let p0 = p.with_epsilon(0.0).unwrap();
        assert!(acoustic_coupling(&p0, PairLabel::of(1, 3)).unwrap().small < 1e-14);
    }
}
