use super::{idx, Mat14};
use crate::{c, Frequency, PlasmaParams, I};

/// The symbol `A(i zeta)`. With `with_epsilon = false` every `sqrt(epsilon)`
/// entry is dropped, giving the limiting symbol `A_0`.
pub fn symbol_matrix(params: &PlasmaParams, zeta: &Frequency, with_epsilon: bool) -> Mat14 {
    let th = params.theta_e();
    let a2 = params.alpha_ie().powi(2);
    let se = if with_epsilon { params.epsilon().sqrt() } else { 0.0 };
    let z = zeta.as_array();
    let mut m = Mat14::zeros();

    // [z]x as a matrix: ([z]x)_{ab} w_b = (z x w)_a
    let skew = [[0.0, -z[2], z[1]], [z[2], 0.0, -z[0]], [-z[1], z[0], 0.0]];
    for a in 0..3 {
        for b in 0..3 {
            m[(idx::B + a, idx::E + b)] = I * skew[a][b];
            m[(idx::E + a, idx::B + b)] = -I * skew[a][b];
        }
        m[(idx::E + a, idx::VE + a)] = c(-1.0);
        m[(idx::E + a, idx::VI + a)] = c(se / th);
        m[(idx::VE + a, idx::E + a)] = c(1.0);
        m[(idx::VE + a, idx::NE)] = I * (th * z[a]);
        m[(idx::NE, idx::VE + a)] = I * (th * z[a]);
        m[(idx::VI + a, idx::E + a)] = c(-se / th);
        m[(idx::VI + a, idx::NI)] = I * (a2 * se * z[a]);
        m[(idx::NI, idx::VI + a)] = I * (se * z[a]);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_frequency_keeps_only_zeroth_order_couplings() {
        let p = PlasmaParams::new(0.0, 0.1, 0.0, 3.0).unwrap();
        let m = symbol_matrix(&p, &Frequency::axis(0.0), false);
        let nonzero = m.iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 6);
        assert_eq!(m[(idx::E, idx::VE)], c(-1.0));
        assert_eq!(m[(idx::VE, idx::E)], c(1.0));
    }

    #[test]
    fn ion_coupling_entry() {
        let p = PlasmaParams::new(0.01, 0.1, 0.0, 3.0).unwrap();
        let m = symbol_matrix(&p, &Frequency::axis(1.0), true);
        assert!((m[(idx::E + 1, idx::VI + 1)] - c(1.0)).norm() < 1e-15);
        assert!((m[(idx::VI + 1, idx::E + 1)] + c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn limiting_symbol_is_anti_hermitian() {
        let p = PlasmaParams::new(0.3, 0.2, 0.7, 3.0).unwrap();
        let m = symbol_matrix(&p, &Frequency::new(0.3, [-1.2, 2.0]), false);
        let s = m + m.adjoint();
        assert!(s.norm() < 1e-14);
    }

    #[test]
    fn b_row_is_curl_of_e() {
        let p = PlasmaParams::new(0.0, 0.1, 0.0, 3.0).unwrap();
        let zeta = Frequency::new(0.5, [1.0, -2.0]);
        let mut u = super::super::Vec14::zeros();
        u[idx::E + 1] = c(1.0);
        let out = symbol_matrix(&p, &zeta, false) * u;
        // i zeta x (0,1,0) = i (-eta2, 0, xi)
        assert!((out[0] - I * 2.0).norm() < 1e-15);
        assert!((out[2] - I * 0.5).norm() < 1e-15);
    }
}
