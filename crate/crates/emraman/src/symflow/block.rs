use super::SymflowError;
use crate::interaction::{acoustic_coupling, interaction_matrix, resonance_trace};
use crate::resonance::{CutoffFamily, CutoffVariant, PairLabel};
use crate::spectral::{branch, branch_gradient_factor};
use crate::{c, Frequency, PlasmaParams, C64};
use serde::{Deserialize, Serialize};

/// Transverse envelope `g(y)` of the WKB amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    Constant { value: C64 },
    /// `amplitude * exp(-|y - center|^2 / width^2)`.
    Gaussian { amplitude: C64, width: f64, center: [f64; 2] },
}

impl Envelope {
    pub fn constant(value: f64) -> Self {
        Envelope::Constant { value: c(value) }
    }

    pub fn gaussian(amplitude: f64, width: f64) -> Self {
        Envelope::Gaussian { amplitude: c(amplitude), width, center: [0.0, 0.0] }
    }

    pub fn eval(&self, y: [f64; 2]) -> C64 {
        match *self {
            Envelope::Constant { value } => value,
            Envelope::Gaussian { amplitude, width, center } => {
                let d2 = (y[0] - center[0]).powi(2) + (y[1] - center[1]).powi(2);
                amplitude * (-d2 / (width * width)).exp()
            }
        }
    }

    pub fn max_abs(&self) -> f64 {
        match *self {
            Envelope::Constant { value } => value.norm(),
            Envelope::Gaussian { amplitude, .. } => amplitude.norm(),
        }
    }

    /// Radius outside which `|g| < 1e-6`, or `None` for a constant.
    pub fn support_radius(&self) -> Option<f64> {
        match *self {
            Envelope::Constant { .. } => None,
            Envelope::Gaussian { amplitude, width, center } => {
                let a = amplitude.norm();
                let r = if a > 1e-6 { width * (a / 1e-6).ln().sqrt() } else { 0.0 };
                Some(r + center[0].hypot(center[1]))
            }
        }
    }
}

/// `b(y) * T^from` added to `dT^to/dt` (times `1/sqrt(eps)`), with
/// `b(y) = coefficient * g(y)` or `coefficient * conj(g(y))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coupling {
    pub to: usize,
    pub from: usize,
    pub coefficient: C64,
    pub envelope: Envelope,
    pub conjugate: bool,
}

impl Coupling {
    pub fn eval(&self, y: [f64; 2]) -> C64 {
        let g = self.envelope.eval(y);
        self.coefficient * if self.conjugate { g.conj() } else { g }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Pair,
    Triplet,
    Uncoupled,
}

/// The two three-wave chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Triplet {
    /// Branches 2, 3, 4.
    T234,
    /// Branches 1, 3, 5.
    T135,
}

/// A frozen constant-coefficient block of the symbolic flow.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub kind: BlockKind,
    pub labels: Vec<u8>,
    pub frozen: Frequency,
    /// `mu_j` per component.
    pub mu: Vec<f64>,
    /// `d_eta mu_j` per component.
    pub grad_mu: Vec<[f64; 2]>,
    pub couplings: Vec<Coupling>,
}

/// Options shared by the block constructors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingOptions {
    pub envelope: Envelope,
    /// Multiply couplings by the cut-off `chi` of this variant at this scale.
    pub cutoff: Option<(f64, CutoffVariant)>,
}

impl Default for CouplingOptions {
    fn default() -> Self {
        Self { envelope: Envelope::constant(1.0), cutoff: None }
    }
}

fn mu_and_grad(params: &PlasmaParams, j: u8, xi: f64, eta: [f64; 2], shift: f64) -> (f64, [f64; 2]) {
    let th = params.theta_e();
    let r = eta[0].hypot(eta[1]);
    let f = branch_gradient_factor(j, th, xi, r);
    (branch(j, th, xi, r) + shift, [f * eta[0], f * eta[1]])
}

/// `(b+, b-)` for the edge `j <- j'` and back: `sqrt|tr|` and
/// `sign(tr) sqrt|tr|`; for a vanishing trace, `(|C12|, 0)`.
fn edge_coefficients(params: &PlasmaParams, pair: PairLabel, zeta: &Frequency) -> (C64, C64) {
    match (pair.j(), pair.jp()) {
        (1, 3) | (3, 5) => match acoustic_coupling(params, pair) {
            Ok(a) if pair.j() == 1 => (c(a.large), c(a.small)),
            Ok(a) => (c(a.small), c(a.large)),
            Err(_) => (c(0.0), c(0.0)),
        },
        _ => {
            let tr = resonance_trace(params, pair, zeta).re;
            if tr.abs() > 1e-14 {
                let s = tr.abs().sqrt();
                (c(s), c(tr.signum() * s))
            } else {
                (c(interaction_matrix(params, 1, pair.j(), pair.jp(), zeta).norm()), c(0.0))
            }
        }
    }
}

fn chi(params: &PlasmaParams, pair: PairLabel, zeta: &Frequency, opts: &CouplingOptions) -> Result<f64, SymflowError> {
    match opts.cutoff {
        None => Ok(1.0),
        Some((delta, variant)) => Ok(CutoffFamily::new(params).chi(pair, delta, variant, zeta)?),
    }
}

impl BlockSpec {
    /// Pair `(j, j')` frozen at `zeta`: `mu_j = lambda_j(xi+k, eta) - omega`,
    /// `mu_j' = lambda_j'(xi, eta)`.
    pub fn pair(params: &PlasmaParams, pair: PairLabel, zeta: &Frequency, opts: &CouplingOptions) -> Result<Self, SymflowError> {
        let (ma, ga) = mu_and_grad(params, pair.j(), zeta.xi + params.k(), zeta.eta, -params.omega());
        let (mb, gb) = mu_and_grad(params, pair.jp(), zeta.xi, zeta.eta, 0.0);
        let (bp, bm) = edge_coefficients(params, pair, zeta);
        let x = chi(params, pair, zeta, opts)?;
        let couplings = vec![
            Coupling { to: 0, from: 1, coefficient: bp * x, envelope: opts.envelope, conjugate: false },
            Coupling { to: 1, from: 0, coefficient: bm * x, envelope: opts.envelope, conjugate: true },
        ];
        Ok(Self {
            kind: BlockKind::Pair,
            labels: vec![pair.j(), pair.jp()],
            frozen: *zeta,
            mu: vec![ma, mb],
            grad_mu: vec![ga, gb],
            couplings,
        })
    }

    /// Three-wave chain at `zeta`: `(a, 3, b)` with `mu_a = lambda_a(xi+k) - omega`,
    /// `mu_3 = 0`, `mu_b = lambda_b(xi-k) + omega`; the edge `(a,3)` is taken at
    /// `zeta`, the edge `(3,b)` at `xi - k`.
    pub fn triplet(params: &PlasmaParams, which: Triplet, zeta: &Frequency, opts: &CouplingOptions) -> Result<Self, SymflowError> {
        let (a, b) = match which {
            Triplet::T234 => (2, 4),
            Triplet::T135 => (1, 5),
        };
        let k = params.k();
        let (ma, ga) = mu_and_grad(params, a, zeta.xi + k, zeta.eta, -params.omega());
        let (mb, gb) = mu_and_grad(params, b, zeta.xi - k, zeta.eta, params.omega());
        let zl = zeta.shifted(-k);
        let p1 = PairLabel::of(a, 3);
        let p2 = PairLabel::of(3, b);
        let (b1p, b1m) = edge_coefficients(params, p1, zeta);
        let (b2p, b2m) = edge_coefficients(params, p2, &zl);
        let x1 = chi(params, p1, zeta, opts)?;
        let x2 = chi(params, p2, &zl, opts)?;
        let env = opts.envelope;
        let couplings = vec![
            Coupling { to: 0, from: 1, coefficient: b1p * x1, envelope: env, conjugate: false },
            Coupling { to: 1, from: 0, coefficient: b1m * x1, envelope: env, conjugate: true },
            Coupling { to: 1, from: 2, coefficient: b2p * x2, envelope: env, conjugate: false },
            Coupling { to: 2, from: 1, coefficient: b2m * x2, envelope: env, conjugate: true },
        ];
        Ok(Self {
            kind: BlockKind::Triplet,
            labels: vec![a, 3, b],
            frozen: *zeta,
            mu: vec![ma, 0.0, mb],
            grad_mu: vec![ga, [0.0, 0.0], gb],
            couplings,
        })
    }

    /// Free transport with the given phases and velocities.
    pub fn uncoupled(labels: Vec<u8>, mu: Vec<f64>, grad_mu: Vec<[f64; 2]>) -> Self {
        Self { kind: BlockKind::Uncoupled, labels, frozen: Frequency::axis(0.0), mu, grad_mu, couplings: Vec::new() }
    }

    /// The same block with all couplings removed.
    pub fn without_coupling(&self) -> Self {
        Self { couplings: Vec::new(), ..self.clone() }
    }

    pub fn n_components(&self) -> usize {
        self.mu.len()
    }

    /// Largest real eigenvalue of the frozen coupling matrix at the envelope
    /// peak. The blocks are chains with zero diagonal, so the spectrum is
    /// `0, +-sqrt(sum of edge products)`.
    pub fn predicted_rate(&self) -> f64 {
        let g2 = self.couplings.iter().map(|c| c.envelope.max_abs().powi(2)).fold(0.0, f64::max);
        let mut s = c(0.0);
        for a in self.couplings.iter().filter(|c| c.to < c.from) {
            if let Some(b) = self.couplings.iter().find(|b| b.to == a.from && b.from == a.to) {
                s += a.coefficient * b.coefficient;
            }
        }
        (s * g2).sqrt().re
    }

    /// `max_j |d_eta mu_j|`.
    pub fn max_speed(&self) -> f64 {
        self.grad_mu.iter().map(|g| g[0].hypot(g[1])).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_four_block_at_resonance() {
        let p = PlasmaParams::new(1e-4, 0.1, 0.0, 3.0).unwrap();
        let z = Frequency::axis(-4.793367316158819);
        let b = BlockSpec::pair(&p, PairLabel::of(1, 4), &z, &CouplingOptions::default()).unwrap();
        assert!((b.mu[0] - b.mu[1]).abs() < 1e-12);
        assert_eq!(b.grad_mu, vec![[0.0, 0.0], [0.0, 0.0]]);
        let prod = b.couplings[0].coefficient * b.couplings[1].coefficient;
        assert!((prod.re - 0.02522619370565703).abs() < 1e-12);
    }

    #[test]
    fn gaussian_support() {
        let g = Envelope::gaussian(1.0, 2.0);
        let r = g.support_radius().unwrap();
        assert!((g.eval([r, 0.0]).re - 1e-6).abs() < 1e-12);
        assert!(Envelope::constant(1.0).support_radius().is_none());
    }
}
