//! Split-step Fourier solver for the envelope system
//!
//! ```text
//! i(d_t + (k/omega) d_x) E + (1/(2 omega)) Lap_Y E - (1/(2 omega theta_e^2)) E = (1/(2 omega)) n E
//! (d_t^2 - (alpha_ie + 1)^2 Lap_Y) n = -(2/omega^2) Lap_Y |E|^2
//! ```
//!
//! on a periodic box in `(x, Y)` with `Y` of dimension 1 or 2.

use crate::csv::Table;
use crate::fourier::{nodes, wavenumbers, FftNd};
use crate::spectral::StateVector;
use crate::{c, PlasmaParams, C64, I};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZakharovError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("envelope is not small near the box edge: {edge:e} relative to its maximum (need <= 1e-3)")]
    Support { edge: f64 },
    #[error("relative mass drift {drift:e} in one step exceeds 1e-6 (time step too large or solution not resolved)")]
    MassDrift { drift: f64 },
    #[error("max |E| grew beyond 1e3 times its initial value at t = {t}")]
    BlowUp { t: f64 },
    #[error("final time must be non-negative and dt positive")]
    Time,
}

/// Periodic box `[-L/2, L/2)^(1 + dim_y)` with `n_points` per direction,
/// axes ordered `(x, Y1[, Y2])`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZakharovGrid {
    pub dim_y: usize,
    pub n_points: usize,
    pub length: f64,
}

impl Default for ZakharovGrid {
    fn default() -> Self {
        Self { dim_y: 1, n_points: 128, length: 40.0 }
    }
}

impl ZakharovGrid {
    pub fn new(dim_y: usize, n_points: usize, length: f64) -> Result<Self, ZakharovError> {
        if !(dim_y == 1 || dim_y == 2) {
            return Err(ZakharovError::Grid(format!("dim_y must be 1 or 2, got {dim_y}")));
        }
        if n_points < 4 || !n_points.is_power_of_two() {
            return Err(ZakharovError::Grid(format!("n_points must be a power of two >= 4, got {n_points}")));
        }
        if !(length > 0.0) {
            return Err(ZakharovError::Grid("length must be positive".into()));
        }
        Ok(Self { dim_y, n_points, length })
    }

    pub fn shape(&self) -> Vec<usize> {
        vec![self.n_points; 1 + self.dim_y]
    }

    pub fn len(&self) -> usize {
        self.n_points.pow(1 + self.dim_y as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> f64 {
        (self.length / self.n_points as f64).powi(1 + self.dim_y as i32)
    }

    /// Coordinates of every node, `(x, Y1, Y2)` with `Y2 = 0` when `dim_y = 1`.
    pub fn points(&self) -> Vec<[f64; 3]> {
        let y = nodes(self.n_points, self.length);
        let mut out = Vec::with_capacity(self.len());
        for &a in &y {
            for &b in &y {
                if self.dim_y == 1 {
                    out.push([a, b, 0.0]);
                } else {
                    for &d in &y {
                        out.push([a, b, d]);
                    }
                }
            }
        }
        out
    }

    /// `(kappa_x, |kappa_Y|^2)` per Fourier mode, in FFT order.
    fn modes(&self) -> Vec<(f64, f64)> {
        let k = wavenumbers(self.n_points, self.length);
        let mut out = Vec::with_capacity(self.len());
        for &a in &k {
            for &b in &k {
                if self.dim_y == 1 {
                    out.push((a, b * b));
                } else {
                    for &d in &k {
                        out.push((a, b * b + d * d));
                    }
                }
            }
        }
        out
    }
}

/// Physical constants of the envelope system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZakharovParams {
    pub k: f64,
    pub omega: f64,
    pub theta_e: f64,
    pub alpha_ie: f64,
}

impl From<&PlasmaParams> for ZakharovParams {
    fn from(p: &PlasmaParams) -> Self {
        Self { k: p.k(), omega: p.omega(), theta_e: p.theta_e(), alpha_ie: p.alpha_ie() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZakharovState {
    pub grid: ZakharovGrid,
    pub params: ZakharovParams,
    pub e: Vec<C64>,
    pub n: Vec<f64>,
    pub n_t: Vec<f64>,
    pub time: f64,
}

impl ZakharovState {
    /// `int |E|^2`.
    pub fn mass(&self) -> f64 {
        self.e.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.cell_volume()
    }

    pub fn max_abs_e(&self) -> f64 {
        self.e.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Flattened fields as a table with columns x, y1, y2, re_e, im_e, n, n_t.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["x", "y1", "y2", "re_e", "im_e", "n", "n_t"]);
        for (i, p) in self.grid.points().iter().enumerate() {
            t.push(vec![p[0], p[1], p[2], self.e[i].re, self.e[i].im, self.n[i], self.n_t[i]]);
        }
        t
    }
}

/// `a(x, Y) = amplitude * exp(-|(x, Y)|^2 / width^2)`.
pub fn gaussian_envelope(amplitude: f64, width: f64) -> impl Fn([f64; 3]) -> C64 {
    move |p| c(amplitude * (-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / (width * width)).exp())
}

/// Leading WKB profile for harmonic `p = +-1` with envelope value `g_p`:
/// `B = g (ipk, 0, 0) x (0, 1, 0)`, `E = i p omega g (0, 1, 0)`, `v_e = g (0, 1, 0)`.
pub fn leading_profile(params: &PlasmaParams, p: i8, g: C64) -> StateVector {
    let pf = p as f64;
    let mut s = StateVector::default();
    s.b[2] = g * I * (pf * params.k());
    s.e[1] = g * I * (pf * params.omega());
    s.v_e[1] = g;
    s.v_i[1] = -g * (params.epsilon().sqrt() / params.theta_e());
    s
}

/// `E = i omega a`, `n = n_t = 0`. The envelope must be below `1e-3` of its
/// maximum within `L/8` of the box edge.
pub fn init_from_wkb(
    envelope: impl Fn([f64; 3]) -> C64,
    params: &PlasmaParams,
    grid: &ZakharovGrid,
) -> Result<ZakharovState, ZakharovError> {
    let zp = ZakharovParams::from(params);
    let pts = grid.points();
    let a: Vec<C64> = pts.iter().map(|&p| envelope(p)).collect();
    let amax = a.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let inner = 0.5 * grid.length - grid.length / 8.0;
    let edge = pts
        .iter()
        .zip(&a)
        .filter(|(p, _)| p.iter().any(|x| x.abs() > inner))
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    if amax > 0.0 && edge > 1e-3 * amax {
        return Err(ZakharovError::Support { edge: edge / amax });
    }
    Ok(ZakharovState {
        grid: *grid,
        params: zp,
        e: a.iter().map(|z| I * zp.omega * z).collect(),
        n: vec![0.0; grid.len()],
        n_t: vec![0.0; grid.len()],
        time: 0.0,
    })
}

/// Strang-split stepper holding FFT plans and mode tables.
pub struct ZakharovSolver {
    fft: FftNd,
    modes: Vec<(f64, f64)>,
    /// Couple `E` and `n`; when false both evolve freely.
    pub coupled: bool,
}

impl ZakharovSolver {
    pub fn new(grid: &ZakharovGrid) -> Self {
        Self { fft: FftNd::new(&grid.shape()), modes: grid.modes(), coupled: true }
    }

    pub fn uncoupled(grid: &ZakharovGrid) -> Self {
        Self { coupled: false, ..Self::new(grid) }
    }

    fn linear(&self, s: &mut ZakharovState, h: f64) {
        let pr = s.params;
        let w = pr.omega;
        let shift = 1.0 / (2.0 * w * pr.theta_e * pr.theta_e);
        self.fft.forward(&mut s.e);
        for (z, &(kx, ky2)) in s.e.iter_mut().zip(&self.modes) {
            *z *= (-I * (h * ((pr.k / w) * kx + ky2 / (2.0 * w) + shift))).exp();
        }
        self.fft.inverse(&mut s.e);
    }

    fn phase(&self, s: &mut ZakharovState, h: f64) {
        let w2 = 2.0 * s.params.omega;
        for (z, &n) in s.e.iter_mut().zip(&s.n) {
            *z *= (-I * (h * n / w2)).exp();
        }
    }

    /// Exact per-mode oscillator update with the source frozen over the step.
    /// Returns `max |Im n|` before the real part is taken.
    fn wave(&self, s: &mut ZakharovState, h: f64) -> f64 {
        let pr = s.params;
        let cs = pr.alpha_ie + 1.0;
        let mut n: Vec<C64> = s.n.iter().map(|&x| c(x)).collect();
        let mut nt: Vec<C64> = s.n_t.iter().map(|&x| c(x)).collect();
        self.fft.forward(&mut n);
        self.fft.forward(&mut nt);
        let src = if self.coupled {
            let mut q: Vec<C64> = s.e.iter().map(|z| c(z.norm_sqr())).collect();
            self.fft.forward(&mut q);
            Some(q)
        } else {
            None
        };
        let gain = 2.0 / (pr.omega * pr.omega);
        for (i, &(_, ky2)) in self.modes.iter().enumerate() {
            let om = cs * ky2.sqrt();
            let f = src.as_ref().map_or(c(0.0), |q| q[i] * (gain * ky2));
            if om == 0.0 {
                n[i] += nt[i] * h + f * (0.5 * h * h);
                nt[i] += f * h;
            } else {
                let eq = f / (om * om);
                let (sn, cn) = (om * h).sin_cos();
                let d = n[i] - eq;
                n[i] = d * cn + nt[i] * (sn / om) + eq;
                nt[i] = -d * (om * sn) + nt[i] * cn;
            }
        }
        self.fft.inverse(&mut n);
        self.fft.inverse(&mut nt);
        let mut im: f64 = 0.0;
        for i in 0..n.len() {
            im = im.max(n[i].im.abs()).max(nt[i].im.abs());
            s.n[i] = n[i].re;
            s.n_t[i] = nt[i].re;
        }
        im
    }

    /// One Strang step; returns `max |Im n|` of the wave update.
    pub fn step(&self, s: &mut ZakharovState, dt: f64) -> f64 {
        self.linear(s, 0.5 * dt);
        if self.coupled {
            self.phase(s, 0.5 * dt);
        }
        let im = self.wave(s, dt);
        if self.coupled {
            self.phase(s, 0.5 * dt);
        }
        self.linear(s, 0.5 * dt);
        s.time += dt;
        im
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZakharovReport {
    #[serde(skip)]
    pub final_state: ZakharovState,
    pub t_final: f64,
    pub steps: usize,
    /// `|M(T) - M(0)| / M(0)`.
    pub mass_drift: f64,
    /// `max_{t, x} |E| / omega`.
    pub amplitude_max: f64,
    /// Largest `|Im n|` seen before projection to real values.
    pub im_residual: f64,
}

/// Integrates to `t_final` with steps of at most `dt`, with the mass and
/// blow-up guards.
pub fn run_and_report(
    state: &ZakharovState,
    solver: &ZakharovSolver,
    t_final: f64,
    dt: f64,
) -> Result<ZakharovReport, ZakharovError> {
    if !(t_final >= 0.0) || !(dt > 0.0) {
        return Err(ZakharovError::Time);
    }
    let steps = (t_final / dt - 1e-9).ceil().max(0.0) as usize;
    let h = if steps > 0 { t_final / steps as f64 } else { 0.0 };
    let mut s = state.clone();
    let m0 = s.mass();
    let e0 = s.max_abs_e();
    let w = s.params.omega;
    let mut amp = e0 / w;
    let mut im: f64 = 0.0;
    let mut prev = m0;
    for _ in 0..steps {
        im = im.max(solver.step(&mut s, h));
        let m = s.mass();
        if m0 > 0.0 && (m - prev).abs() / m0 > 1e-6 {
            return Err(ZakharovError::MassDrift { drift: (m - prev).abs() / m0 });
        }
        prev = m;
        let emax = s.max_abs_e();
        if e0 > 0.0 && emax > 1e3 * e0 {
            return Err(ZakharovError::BlowUp { t: s.time });
        }
        amp = amp.max(emax / w);
    }
    let drift = if m0 > 0.0 { (s.mass() - m0).abs() / m0 } else { 0.0 };
    Ok(ZakharovReport { t_final: s.time, steps, mass_drift: drift, amplitude_max: amp, im_residual: im, final_state: s })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PlasmaParams {
        PlasmaParams::new(0.0, 0.1, 0.3, 3.0).unwrap()
    }

    #[test]
    fn initial_amplitude() {
        let g = ZakharovGrid::new(1, 64, 40.0).unwrap();
        let s = init_from_wkb(gaussian_envelope(1.0, 2.0), &params(), &g).unwrap();
        assert!((s.max_abs_e() - 10f64.sqrt()).abs() < 1e-12);
        let z = init_from_wkb(|_| c(0.0), &params(), &g).unwrap();
        assert_eq!(z.max_abs_e(), 0.0);
        assert!(init_from_wkb(gaussian_envelope(1.0, 12.0), &params(), &g).is_err());
    }

    #[test]
    fn polarisation() {
        let p = params();
        let g = C64::new(0.3, -0.2);
        let u = leading_profile(&p, 1, g);
        // (ipk,0,0) x (0,1,0) = (0,0,ipk)
        assert_eq!(u.b, [c(0.0), c(0.0), g * I * 3.0]);
        assert_eq!(u.e[1], g * I * p.omega());
    }

    #[test]
    fn one_step_preserves_mass() {
        let g = ZakharovGrid::new(1, 64, 40.0).unwrap();
        let s0 = init_from_wkb(gaussian_envelope(1.0, 3.0), &params(), &g).unwrap();
        let solver = ZakharovSolver::new(&g);
        let mut s = s0.clone();
        solver.step(&mut s, 1e-2);
        assert!((s.mass() - s0.mass()).abs() / s0.mass() < 1e-12);
    }
}
