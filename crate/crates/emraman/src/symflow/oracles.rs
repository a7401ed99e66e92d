use super::block::BlockSpec;
use super::solver::{FlowGrid, FlowTrajectory};
use super::SymflowError;
use crate::fourier::{shift_wavenumbers, FftNd};
use crate::{c, C64, I};
use serde::Serialize;

/// Closed-form solution of the uncoupled flow with a time-independent
/// source: `S^j(t) = e^{-i mu_j t/eps} d_j(y - v_j t) + int_0^t e^{-i mu_j (t-s)/eps} f_j(y - v_j (t-s)) ds`,
/// computed exactly in Fourier space. Fields are one per component.
pub fn far_field_oracle(
    spec: &BlockSpec,
    grid: &FlowGrid,
    t: f64,
    datum: &[Vec<C64>],
    source: &[Vec<C64>],
) -> Result<Vec<Vec<C64>>, SymflowError> {
    grid.validate()?;
    if !spec.couplings.is_empty() {
        return Err(SymflowError::Coupled);
    }
    let nc = spec.n_components();
    let np = grid.len();
    if datum.len() != nc || source.len() != nc || datum.iter().chain(source).any(|f| f.len() != np) {
        return Err(SymflowError::Datum);
    }
    let n = grid.n_points;
    let kx = shift_wavenumbers(n, grid.length);
    let kappa: Vec<[f64; 2]> = if grid.dim_y == 1 {
        kx.iter().map(|&a| [a, 0.0]).collect()
    } else {
        kx.iter().flat_map(|&a| kx.iter().map(move |&b| [a, b])).collect()
    };
    let fft = FftNd::new(&vec![n; grid.dim_y]);
    let eps = grid.epsilon;
    let se = eps.sqrt();
    let mut out = Vec::with_capacity(nc);
    for j in 0..nc {
        let v = [spec.grad_mu[j][0] / se, spec.grad_mu[j][1] / se];
        let mut d = datum[j].clone();
        let mut f = source[j].clone();
        fft.forward(&mut d);
        fft.forward(&mut f);
        for (i, kp) in kappa.iter().enumerate() {
            let a = spec.mu[j] / eps + kp[0] * v[0] + kp[1] * v[1];
            let e = (-I * (a * t)).exp();
            let integral = if (a * t).abs() < 1e-12 { c(t) } else { (c(1.0) - e) / (I * a) };
            d[i] = d[i] * e + f[i] * integral;
        }
        fft.inverse(&mut d);
        out.push(d);
    }
    Ok(out)
}

/// Fundamental matrix of `dS/dt = eps^{-1/2} [[0, b+], [b-, 0]] S` at time `t`.
pub fn resonant_ode_oracle(b_plus: C64, b_minus: C64, epsilon: f64, t: f64) -> [[C64; 2]; 2] {
    let s = (b_plus * b_minus).sqrt();
    let tau = t / epsilon.sqrt();
    if s.norm() < 1e-300 {
        return [[c(1.0), b_plus * tau], [b_minus * tau, c(1.0)]];
    }
    let ch = (s * tau).cosh();
    let sh = (s * tau).sinh() / s;
    [[ch, b_plus * sh], [b_minus * sh, ch]]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthFit {
    /// Slope of `log sup |S|` in `t`, times `sqrt(eps)`.
    pub rate: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub n_samples: usize,
    /// `r_squared >= 0.9`.
    pub reliable: bool,
}

/// Least-squares growth rate on `window`, in units where the prediction is `gamma`.
pub fn estimate_growth(traj: &FlowTrajectory, window: (f64, f64)) -> Result<GrowthFit, SymflowError> {
    let (a, b) = window;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &s) in traj.times.iter().zip(&traj.sup_norm) {
        if t >= a && t <= b {
            if !(s > 0.0) {
                return Err(SymflowError::NonPositiveNorm(t));
            }
            xs.push(t);
            ys.push(s.ln());
        }
    }
    let n = xs.len();
    if n < 10 {
        return Err(SymflowError::TooFewSamples(n));
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy > 0.0 { (sxy * sxy) / (sxx * syy) } else { 0.0 };
    Ok(GrowthFit { rate: slope * traj.epsilon.sqrt(), r_squared, window, n_samples: n, reliable: r_squared >= 0.9 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaMClass {
    Hyperbolic,
    Elliptic,
    Marginal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaM {
    pub value: f64,
    pub class: DeltaMClass,
}

/// `delta_M = -Phi^2 - sqrt(eps) 2 Phi (y.dPhi) + eps (4 Re(b+ b-) - (y.dPhi)^2)`;
/// elliptic when positive.
pub fn classify_delta_m(phi: f64, dphi_deta: [f64; 2], b_plus: C64, b_minus: C64, epsilon: f64, yhat: [f64; 2]) -> DeltaM {
    let d = yhat[0] * dphi_deta[0] + yhat[1] * dphi_deta[1];
    let bb = b_plus * b_minus;
    let se = epsilon.sqrt();
    let value = -phi * phi - se * 2.0 * phi * d + epsilon * (4.0 * bb.re - d * d);
    let scale = phi * phi + se * (2.0 * phi * d).abs() + epsilon * (4.0 * bb.norm() + d * d);
    let tol = 1e-12 * scale.max(f64::MIN_POSITIVE);
    let class = if value > tol {
        DeltaMClass::Elliptic
    } else if value < -tol {
        DeltaMClass::Hyperbolic
    } else {
        DeltaMClass::Marginal
    };
    DeltaM { value, class }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ode_oracle_cases() {
        let m = resonant_ode_oracle(c(1.0), c(1.0), 1e-4, 2.0 * 1e-2);
        assert!((m[0][0].re - 2f64.cosh()).abs() < 1e-12);
        for t in [0.1, 1.0, 10.0] {
            let r = resonant_ode_oracle(c(1.0), c(-1.0), 1e-4, t);
            assert!(r.iter().flatten().all(|z| z.norm() <= 1.0 + 1e-12));
        }
        let id = resonant_ode_oracle(c(0.0), c(0.0), 1e-4, 3.0);
        assert_eq!(id, [[c(1.0), c(0.0)], [c(0.0), c(1.0)]]);
    }

    #[test]
    fn delta_m_bullets() {
        let b = c(0.5);
        assert_eq!(classify_delta_m(0.3, [0.0, 0.0], b, b, 1e-8, [1.0, 0.0]).class, DeltaMClass::Hyperbolic);
        assert_eq!(classify_delta_m(0.0, [0.0, 0.0], b, b, 1e-4, [1.0, 0.0]).class, DeltaMClass::Elliptic);
        assert_eq!(classify_delta_m(0.0, [2.0, 0.0], b, b, 1e-4, [1.0, 0.0]).class, DeltaMClass::Hyperbolic);
    }
}
