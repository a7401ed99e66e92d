use super::{ModeLabel, SpectralError};
use crate::{Frequency, PlasmaParams};
use serde::Serialize;

/// Relative size below which the discriminant of the longitudinal quadratic
/// counts as a repeated root.
const DISC_TOL: f64 = 1e-12;

/// Real frequencies of the branches at one `zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalues {
    /// Fast Klein-Gordon (transverse) branch, `lambda_1 = -lambda_5`.
    pub lambda1: f64,
    /// Slow Klein-Gordon (longitudinal) branch, `lambda_2 = -lambda_4`.
    pub lambda2: f64,
    /// Acoustic branch `lambda_3^+ = -lambda_3^- >= 0`; identically 0 in the limit.
    pub lambda3: f64,
    /// Whether the `sqrt(epsilon)` terms were kept.
    pub with_epsilon: bool,
}

impl Eigenvalues {
    pub fn get(&self, label: ModeLabel) -> f64 {
        match label {
            ModeLabel::One => self.lambda1,
            ModeLabel::Two => self.lambda2,
            ModeLabel::ThreePlus => self.lambda3,
            ModeLabel::Three => 0.0,
            ModeLabel::ThreeMinus => -self.lambda3,
            ModeLabel::Four => -self.lambda2,
            ModeLabel::Five => -self.lambda1,
        }
    }

    /// Labels present for this branch choice, with their values.
    pub fn entries(&self) -> Vec<(ModeLabel, f64)> {
        let labels: &[ModeLabel] = if self.with_epsilon {
            &[
                ModeLabel::One,
                ModeLabel::Two,
                ModeLabel::ThreePlus,
                ModeLabel::Three,
                ModeLabel::ThreeMinus,
                ModeLabel::Four,
                ModeLabel::Five,
            ]
        } else {
            &ModeLabel::LIMIT
        };
        labels.iter().map(|&l| (l, self.get(l))).collect()
    }
}

/// The longitudinal eikonal quartic written as `s^2 - p s + q = 0` in `s = mu^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quartic {
    pub p: f64,
    pub q: f64,
    pub disc: f64,
    /// Larger root (slow Klein-Gordon branch squared).
    pub s_fast: f64,
    /// Smaller root (acoustic branch squared).
    pub s_slow: f64,
}

impl Quartic {
    pub fn new(params: &PlasmaParams, rho2: f64) -> Result<Self, SpectralError> {
        let th2 = params.theta_e().powi(2);
        let a2 = params.alpha_ie().powi(2);
        let eps = params.epsilon();
        let p = 1.0 + th2 * rho2 + eps * a2 * rho2 + eps / th2;
        let q = eps * rho2 * (a2 + a2 * th2 * rho2 + 1.0);
        Self::from_coefficients(p, q)
    }

    /// Roots of `s^2 - p s + q` with `p > 0`. For physical parameters the
    /// discriminant is at least `4 eps / theta^2`, so the error only fires on
    /// hand-built coefficients or a vanishing epsilon.
    pub fn from_coefficients(p: f64, q: f64) -> Result<Self, SpectralError> {
        let disc = p * p - 4.0 * q;
        if disc <= DISC_TOL * p * p {
            return Err(SpectralError::DegenerateDiscriminant { disc });
        }
        let s_fast = 0.5 * (p + disc.sqrt());
        // product of roots is q; avoids cancellation in (p - sqrt(disc)) / 2
        let s_slow = q / s_fast;
        Ok(Self { p, q, disc, s_fast, s_slow })
    }
}

/// Eigenvalues of `A(i zeta)`. In the limit (`with_epsilon = false`) these are
/// the closed forms `sqrt(1+|z|^2)`, `sqrt(1+theta^2|z|^2)` and 0.
pub fn eigenvalues(params: &PlasmaParams, zeta: &Frequency, with_epsilon: bool) -> Result<Eigenvalues, SpectralError> {
    let n2 = zeta.norm().powi(2);
    let th2 = params.theta_e().powi(2);
    if !with_epsilon || params.epsilon() == 0.0 {
        return Ok(Eigenvalues {
            lambda1: (1.0 + n2).sqrt(),
            lambda2: (1.0 + th2 * n2).sqrt(),
            lambda3: 0.0,
            with_epsilon,
        });
    }
    let eps = params.epsilon();
    let quartic = Quartic::new(params, n2)?;
    Ok(Eigenvalues {
        lambda1: (1.0 + eps / th2 + n2).sqrt(),
        lambda2: quartic.s_fast.sqrt(),
        lambda3: quartic.s_slow.sqrt(),
        with_epsilon,
    })
}

/// Small-epsilon approximation of the acoustic branch,
/// `sqrt(eps) |z| (alpha^2 + 1/(1+theta^2|z|^2))^(1/2)`.
pub fn acoustic_asymptote(params: &PlasmaParams, norm: f64) -> f64 {
    let a2 = params.alpha_ie().powi(2);
    let th2 = params.theta_e().powi(2);
    params.epsilon().sqrt() * norm * (a2 + 1.0 / (1.0 + th2 * norm * norm)).sqrt()
}

/// Limiting branch `j` (1..=5) at `(xi, r)`, with `lambda_3 = 0`.
pub fn branch(j: u8, theta_e: f64, xi: f64, r: f64) -> f64 {
    let n2 = xi * xi + r * r;
    match j {
        1 => (1.0 + n2).sqrt(),
        2 => (1.0 + theta_e * theta_e * n2).sqrt(),
        3 => 0.0,
        4 => -(1.0 + theta_e * theta_e * n2).sqrt(),
        5 => -(1.0 + n2).sqrt(),
        _ => panic!("branch index must be in 1..=5, got {j}"),
    }
}

/// Factor `c` such that `grad lambda_j = c * zeta` for the limiting branch `j`.
pub fn branch_gradient_factor(j: u8, theta_e: f64, xi: f64, r: f64) -> f64 {
    match j {
        3 => 0.0,
        1 | 5 => 1.0 / branch(j, theta_e, xi, r),
        2 | 4 => theta_e * theta_e / branch(j, theta_e, xi, r),
        _ => panic!("branch index must be in 1..=5, got {j}"),
    }
}

/// Closed-form gradient in `zeta` of a limiting eigenvalue.
pub fn gradient(params: &PlasmaParams, label: ModeLabel, zeta: &Frequency) -> [f64; 3] {
    let f = branch_gradient_factor(label.branch(), params.theta_e(), zeta.xi, zeta.r());
    let z = zeta.as_array();
    [f * z[0], f * z[1], f * z[2]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(eps: f64) -> PlasmaParams {
        PlasmaParams::new(eps, 0.1, 0.05, 3.0).unwrap()
    }

    #[test]
    fn limiting_closed_forms() {
        let e = eigenvalues(&p(0.0), &Frequency::axis(3.0), false).unwrap();
        assert!((e.lambda1 - 10f64.sqrt()).abs() < 1e-15);
        let e = eigenvalues(&p(0.0), &Frequency::axis(10.0), false).unwrap();
        assert!((e.lambda2 - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(e.get(ModeLabel::Three), 0.0);
        assert_eq!(e.get(ModeLabel::Four), -e.lambda2);
        assert_eq!(e.get(ModeLabel::Five), -e.lambda1);
    }

    #[test]
    fn quartic_roots_satisfy_the_equation() {
        let pp = p(1e-2);
        for &rho in &[0.0, 0.3, 2.0, 9.0] {
            let qd = Quartic::new(&pp, rho * rho).unwrap();
            for s in [qd.s_fast, qd.s_slow] {
                let res = s * s - qd.p * s + qd.q;
                assert!(res.abs() < 1e-12 * qd.p * qd.p, "rho={rho} residual {res}");
            }
        }
    }

    #[test]
    fn frozen_values_at_small_epsilon() {
        // independent high-precision evaluation of the quadratic in mu^2
        let e = eigenvalues(&p(1e-4), &Frequency::axis(2.0), true).unwrap();
        assert!((e.lambda2 - 1.02450911097568).abs() < 1e-12);
        assert!((e.lambda3 - 0.01954690583753114).abs() < 1e-13);
        assert!((acoustic_asymptote(&p(1e-4), 2.0) - 0.01963709206108136).abs() < 1e-13);
    }

    #[test]
    fn degenerate_discriminant_is_reported() {
        assert!(matches!(Quartic::from_coefficients(2.0, 1.0), Err(SpectralError::DegenerateDiscriminant { .. })));
        assert!(Quartic::from_coefficients(2.0, 0.5).is_ok());
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let pp = p(0.0);
        let z = Frequency::new(0.7, [-1.3, 0.4]);
        for label in [ModeLabel::One, ModeLabel::Two, ModeLabel::Four, ModeLabel::Five] {
            let g = gradient(&pp, label, &z);
            let h = 1e-6;
            let f = |zz: &Frequency| eigenvalues(&pp, zz, false).unwrap().get(label);
            let fd = [
                (f(&Frequency::new(z.xi + h, z.eta)) - f(&Frequency::new(z.xi - h, z.eta))) / (2.0 * h),
                (f(&Frequency::new(z.xi, [z.eta[0] + h, z.eta[1]])) - f(&Frequency::new(z.xi, [z.eta[0] - h, z.eta[1]]))) / (2.0 * h),
                (f(&Frequency::new(z.xi, [z.eta[0], z.eta[1] + h])) - f(&Frequency::new(z.xi, [z.eta[0], z.eta[1] - h]))) / (2.0 * h),
            ];
            for a in 0..3 {
                assert!((g[a] - fd[a]).abs() < 1e-6 * g[a].abs().max(1.0));
            }
        }
    }
}
