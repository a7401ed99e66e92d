use crate::PlasmaParams;
use serde::Serialize;

/// Threshold `k_c(theta)` above which the (1,4), (2,4), (2,5) resonances exist.
pub fn k_c(theta_e: f64) -> f64 {
    let t2 = theta_e * theta_e;
    let inner = 2.0 * (1.0 + t2) + 4.0 * (1.0 - t2 + t2 * t2).sqrt();
    inner.sqrt() / (std::f64::consts::SQRT_2 * (1.0 - t2))
}

/// `k_min = sqrt(3) ((1/theta - 1)^2 - 4)^(-1/2)`, defined for `theta < 1/3`.
pub fn k_min(theta_e: f64) -> Option<f64> {
    let d = (1.0 / theta_e - 1.0).powi(2) - 4.0;
    (d > 0.0).then(|| 3f64.sqrt() / d.sqrt())
}

/// `sqrt(1 + k^2) <= (1 - theta^2) / theta^2`.
pub fn space_time_condition(k: f64, theta_e: f64) -> bool {
    let t2 = theta_e * theta_e;
    (1.0 + k * k).sqrt() <= (1.0 - t2) / t2
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub k_c: f64,
    pub k_min: Option<f64>,
    pub cond_k_thetae: bool,
}

pub fn thresholds(params: &PlasmaParams) -> Thresholds {
    Thresholds {
        k_c: k_c(params.theta_e()),
        k_min: k_min(params.theta_e()),
        cond_k_thetae: space_time_condition(params.k(), params.theta_e()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_theta_limit_is_sqrt_three() {
        assert!((k_c(1e-6) - 3f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn frozen_values() {
        assert!((k_c(0.1) - 1.749568248941794).abs() < 1e-13);
        assert!((k_min(0.1).unwrap() - 0.1973855084879307).abs() < 1e-14);
        assert!(k_min(0.34).is_none());
    }

    #[test]
    fn condition_example() {
        let p = PlasmaParams::new(0.0, 0.1, 0.0, 3.0).unwrap();
        assert!(thresholds(&p).cond_k_thetae);
        assert!(!space_time_condition(100.0, 0.1));
    }
}
