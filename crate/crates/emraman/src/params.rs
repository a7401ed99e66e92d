use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("epsilon must lie in [0, 1], got {0}")]
    Epsilon(f64),
    #[error("theta_e must satisfy 0 < theta_e < 1, got {0}")]
    ThetaE(f64),
    #[error("alpha_ie must be finite and non-negative, got {0}")]
    AlphaIe(f64),
    #[error("k must be finite and non-zero, got {0}")]
    WaveNumber(f64),
}

/// Non-dimensional parameters. `omega` is always derived from `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct PlasmaParams {
    epsilon: f64,
    theta_e: f64,
    alpha_ie: f64,
    k: f64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    epsilon: f64,
    theta_e: f64,
    alpha_ie: f64,
    k: f64,
}

impl TryFrom<RawParams> for PlasmaParams {
    type Error = ParamError;
    fn try_from(r: RawParams) -> Result<Self, ParamError> {
        PlasmaParams::new(r.epsilon, r.theta_e, r.alpha_ie, r.k)
    }
}

impl From<PlasmaParams> for RawParams {
    fn from(p: PlasmaParams) -> Self {
        RawParams { epsilon: p.epsilon, theta_e: p.theta_e, alpha_ie: p.alpha_ie, k: p.k }
    }
}

impl PlasmaParams {
    /// `epsilon = 0` is accepted and selects the limiting symbol.
    pub fn new(epsilon: f64, theta_e: f64, alpha_ie: f64, k: f64) -> Result<Self, ParamError> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(ParamError::Epsilon(epsilon));
        }
        if !(theta_e > 0.0 && theta_e < 1.0) {
            return Err(ParamError::ThetaE(theta_e));
        }
        if !(alpha_ie.is_finite() && alpha_ie >= 0.0) {
            return Err(ParamError::AlphaIe(alpha_ie));
        }
        if !(k.is_finite() && k != 0.0) {
            return Err(ParamError::WaveNumber(k));
        }
        Ok(Self { epsilon, theta_e, alpha_ie, k })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    pub fn theta_e(&self) -> f64 {
        self.theta_e
    }
    pub fn alpha_ie(&self) -> f64 {
        self.alpha_ie
    }
    pub fn k(&self) -> f64 {
        self.k
    }
    /// `sqrt(1 + k^2)`.
    pub fn omega(&self) -> f64 {
        (1.0 + self.k * self.k).sqrt()
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self, ParamError> {
        Self::new(epsilon, self.theta_e, self.alpha_ie, self.k)
    }
    pub fn with_k(&self, k: f64) -> Result<Self, ParamError> {
        Self::new(self.epsilon, self.theta_e, self.alpha_ie, k)
    }
    pub fn with_theta_e(&self, theta_e: f64) -> Result<Self, ParamError> {
        Self::new(self.epsilon, theta_e, self.alpha_ie, self.k)
    }
}

/// A frequency `(xi, eta)` with `eta` transverse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Frequency {
    pub xi: f64,
    pub eta: [f64; 2],
}

impl Frequency {
    pub fn new(xi: f64, eta: [f64; 2]) -> Self {
        Self { xi, eta }
    }
    pub fn axis(xi: f64) -> Self {
        Self { xi, eta: [0.0, 0.0] }
    }
    /// Transverse modulus `|eta|`.
    pub fn r(&self) -> f64 {
        self.eta[0].hypot(self.eta[1])
    }
    pub fn norm(&self) -> f64 {
        (self.xi * self.xi + self.eta[0] * self.eta[0] + self.eta[1] * self.eta[1]).sqrt()
    }
    pub fn as_array(&self) -> [f64; 3] {
        [self.xi, self.eta[0], self.eta[1]]
    }
    /// `(xi + s, eta)`.
    pub fn shifted(&self, s: f64) -> Self {
        Self { xi: self.xi + s, eta: self.eta }
    }
    pub fn on_axis(&self) -> bool {
        self.eta == [0.0, 0.0]
    }
}
