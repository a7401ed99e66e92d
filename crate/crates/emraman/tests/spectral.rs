use emraman::spectral::*;
use emraman::{Frequency, PlasmaParams, C64};

fn p(eps: f64) -> PlasmaParams {
    PlasmaParams::new(eps, 0.1, 0.05, 3.0).unwrap()
}

#[test]
fn limit_branches_match_klein_gordon() {
    for z in [Frequency::axis(0.0), Frequency::axis(-4.2), Frequency::new(1.5, [2.0, -0.7])] {
        let ev = eigenvalues(&p(0.0), &z, false).unwrap();
        let n2 = z.norm().powi(2);
        assert!((ev.lambda1 - (1.0 + n2).sqrt()).abs() < 1e-14);
        assert!((ev.lambda2 - (1.0 + 0.01 * n2).sqrt()).abs() < 1e-14);
        assert_eq!(ev.lambda3, 0.0);
    }
}

#[test]
fn quartic_roots_solve_the_quartic() {
    // lambda^4 - P lambda^2 + Q with the coefficients written out directly
    let (eps, th, al) = (1e-2, 0.1, 0.05);
    for rho in [0.0, 0.3, 2.0, 9.5] {
        let ev = eigenvalues(&p(eps), &Frequency::axis(rho), true).unwrap();
        let r2 = rho * rho;
        let pp = 1.0 + th * th * r2 + eps * al * al * r2 + eps / (th * th);
        let qq = eps * r2 * (al * al + al * al * th * th * r2 + 1.0);
        for l in [ev.lambda2, ev.lambda3] {
            let v = l.powi(4) - pp * l * l + qq;
            assert!(v.abs() < 1e-12 * pp * pp, "rho {rho}: {v}");
        }
    }
}

#[test]
fn slow_branch_shift_at_origin() {
    // at zeta = 0 the slow branch carries the full eps/theta^2 shift
    let eps = 1e-3;
    let ev = eigenvalues(&p(eps), &Frequency::axis(0.0), true).unwrap();
    assert!((ev.lambda2 - (1.0 + eps / 0.01f64).sqrt()).abs() < 1e-14);
    assert_eq!(ev.lambda3, 0.0);
}

#[test]
fn projectors_are_eigenprojectors() {
    let pr = p(0.0);
    let z = Frequency::new(-2.3, [0.8, 1.1]);
    let a = symbol_matrix(&pr, &z, false);
    let d = spectral_decomposition(&pr, &z);
    let mut total = 0.0;
    for e in &d.entries {
        let shifted = a - Mat14::identity() * C64::new(0.0, e.eigenvalue);
        assert!((shifted * e.projector).norm() < 1e-11);
        let tr = e.projector.trace();
        assert!((tr.re - tr.re.round()).abs() < 1e-11 && tr.im.abs() < 1e-11);
        total += tr.re;
    }
    assert!((total - 14.0).abs() < 1e-11);
    assert!((d.projector(ModeLabel::One).trace().re - 2.0).abs() < 1e-11);
    assert!((d.projector(ModeLabel::Two).trace().re - 1.0).abs() < 1e-11);
}

#[test]
fn decomposition_near_origin_stays_bounded() {
    let pr = p(0.0);
    for x in [1e-3, 1e-6, 1e-9] {
        let z = Frequency::axis(x);
        let d = spectral_decomposition(&pr, &z);
        assert!((symbol_matrix(&pr, &z, false) - d.reconstruction()).norm() < 1e-10);
        assert!(d.entries.iter().all(|e| e.projector.norm() < 1e3));
    }
}

#[test]
fn split_of_mode_three_sums_back() {
    let pr = p(0.0);
    let z = Frequency::new(0.7, [0.0, 2.0]);
    let (kernel, acoustic) = split_mode_three(&pr, &z).unwrap();
    let d = spectral_decomposition(&pr, &z);
    assert!((kernel + acoustic - d.projector(ModeLabel::Three)).norm() < 1e-10);
    assert!((kernel.trace().re - 6.0).abs() < 1e-10);
    assert!((acoustic.trace().re - 2.0).abs() < 1e-10);
}

#[test]
fn acoustic_asymptote_is_sqrt_eps_scaled() {
    let a = acoustic_asymptote(&p(1e-4), 2.0);
    let b = acoustic_asymptote(&p(1e-2), 2.0);
    assert!((b / a - 10.0).abs() < 1e-12);
}
