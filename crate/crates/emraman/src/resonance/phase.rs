use super::PairLabel;
use crate::spectral::{branch, branch_gradient_factor};
use crate::{Frequency, PlasmaParams};

/// `Phi_{jj'}` at `(xi, r)`, `r = |eta|`.
pub fn phase(params: &PlasmaParams, pair: PairLabel, xi: f64, r: f64) -> f64 {
    let th = params.theta_e();
    branch(pair.j(), th, xi + params.k(), r) - branch(pair.jp(), th, xi, r) - params.omega()
}

/// `(Phi, d_xi Phi, d_r Phi)` at `(xi, r)`.
pub fn phase_gradient_xi_r(params: &PlasmaParams, pair: PairLabel, xi: f64, r: f64) -> (f64, f64, f64) {
    let th = params.theta_e();
    let xk = xi + params.k();
    let fa = branch_gradient_factor(pair.j(), th, xk, r);
    let fb = branch_gradient_factor(pair.jp(), th, xi, r);
    (phase(params, pair, xi, r), fa * xk - fb * xi, (fa - fb) * r)
}

/// `Phi_{jj'}(zeta)` and its exact gradient in `eta`.
pub fn phase_and_gradient(params: &PlasmaParams, pair: PairLabel, zeta: &Frequency) -> (f64, [f64; 2]) {
    let th = params.theta_e();
    let r = zeta.r();
    let fa = branch_gradient_factor(pair.j(), th, zeta.xi + params.k(), r);
    let fb = branch_gradient_factor(pair.jp(), th, zeta.xi, r);
    let g = fa - fb;
    (phase(params, pair, zeta.xi, r), [g * zeta.eta[0], g * zeta.eta[1]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: f64) -> PlasmaParams {
        PlasmaParams::new(0.0, 0.1, 0.0, k).unwrap()
    }

    #[test]
    fn zero_frequency_values() {
        for k in [0.5, 2.0, -3.0] {
            assert!(phase(&p(k), PairLabel::of(1, 3), 0.0, 0.0).abs() < 1e-15);
            assert!((phase(&p(k), PairLabel::of(1, 2), 0.0, 0.0) + 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eta_gradient_vanishes_on_axis() {
        let (_, g) = phase_and_gradient(&p(3.0), PairLabel::of(1, 4), &Frequency::axis(-4.9));
        assert_eq!(g, [0.0, 0.0]);
    }

    #[test]
    fn gradients_match_finite_differences() {
        let pp = p(2.5);
        let h = 1e-6;
        for pair in PairLabel::all() {
            let (xi, r) = (0.37, 1.21);
            let (_, dx, dr) = phase_gradient_xi_r(&pp, pair, xi, r);
            let fx = (phase(&pp, pair, xi + h, r) - phase(&pp, pair, xi - h, r)) / (2.0 * h);
            let fr = (phase(&pp, pair, xi, r + h) - phase(&pp, pair, xi, r - h)) / (2.0 * h);
            assert!((dx - fx).abs() < 1e-7, "{pair}");
            assert!((dr - fr).abs() < 1e-7, "{pair}");
            let (_, g) = phase_and_gradient(&pp, pair, &Frequency::new(xi, [r * 0.6, r * 0.8]));
            assert!((g[0] - 0.6 * dr).abs() < 1e-12 && (g[1] - 0.8 * dr).abs() < 1e-12);
        }
    }
}
