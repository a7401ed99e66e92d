use emraman::interaction::*;
use emraman::resonance::PairLabel;
use emraman::{Frequency, PlasmaParams};

fn p(theta: f64, k: f64) -> PlasmaParams {
    PlasmaParams::new(0.0, theta, 0.0, k).unwrap()
}

#[test]
fn frozen_growth_rate() {
    let g = growth_rates(&p(0.1, 3.0), 1.0).unwrap();
    assert!((g.gamma - 0.1588275596540381).abs() < 1e-12);
    let g2 = growth_rates(&p(0.1, 3.0), 2.5).unwrap();
    assert!((g2.gamma - 2.5 * g.gamma).abs() < 1e-12);
    assert_eq!(growth_rates(&p(0.1, 3.0), 0.0).unwrap().gamma, 0.0);
}

#[test]
fn frozen_trace_at_backward_root() {
    let t = resonance_trace(&p(0.1, 3.0), PairLabel::of(1, 4), &Frequency::axis(-4.793367316158819));
    assert!((t.re - 0.02522619370565703).abs() < 1e-12 && t.im.abs() < 1e-12);
}

#[test]
fn leading_trace_reference() {
    let t = leading_trace_14(3.0, 1.0, -1.0);
    assert!((t - 2.795468257895504).abs() < 1e-13);
    assert!((t.sqrt() - 1.67196538776839).abs() < 1e-12);
    let (b, f) = leading_raman_rates(-3.0, 1.0, 1.0);
    assert!((b - 1.67196538776839).abs() < 1e-12 && f < b);
}

#[test]
fn below_threshold_is_an_error() {
    assert!(matches!(growth_rates(&p(0.1, 1.0), 1.0), Err(InteractionError::BelowThreshold { .. })));
    assert!(raman_rates(&p(0.1, 1.7), 1.0).is_err());
}

#[test]
fn classification_covers_every_root() {
    let entries = classify_raman(&p(0.1, 3.0)).unwrap();
    let unstable: Vec<_> = entries
        .iter()
        .filter(|e| matches!(e.class, RamanClass::UnstableBackward | RamanClass::UnstableForward))
        .collect();
    assert!(!unstable.is_empty());
    assert!(unstable.iter().all(|e| e.trace > 0.0));
    for e in entries.iter().filter(|e| e.pair == PairLabel::of(1, 2) || e.pair == PairLabel::of(4, 5)) {
        assert_eq!(e.class, RamanClass::Stable);
    }
    let b = entries.iter().find(|e| e.class == RamanClass::UnstableBackward).unwrap();
    assert!(is_backward(&p(0.1, 3.0), b.pair, b.xi));
}

#[test]
fn rates_pick_the_two_roots() {
    let r = raman_rates(&p(0.1, 3.0), 1.0).unwrap();
    assert!((r.backward - 0.1588275596540381).abs() < 1e-12);
    assert!((r.xi_backward + 4.793367316158819).abs() < 1e-9);
    assert!(r.forward > 0.0 && r.forward < r.backward);
}

#[test]
fn cubed_form_differs_by_lambda2_squared() {
    let pr = p(0.1, 3.0);
    let xi = -4.793367316158819;
    let exact = trace_closed_form(&pr, PairLabel::of(1, 4), xi).unwrap().exact().unwrap().re;
    let cubed = trace_cubed_form(&pr, PairLabel::of(1, 4), xi).unwrap();
    let l2 = 1.0 + 0.01 * xi * xi;
    assert!((exact / cubed - l2).abs() < 1e-10);
}
