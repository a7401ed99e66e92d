use super::phase::{phase, phase_and_gradient};
use super::thresholds::space_time_condition;
use super::{PairLabel, ResonanceError, ResonanceRecord};
use crate::sweep::map_indices;
use crate::{Frequency, PlasmaParams};

/// Step of the uniform sign-change scan.
pub const SCAN_STEP: f64 = 1e-3;
/// `|d_eta Phi|` below which a root counts as a space-time resonance.
pub const SPACE_TIME_TOL: f64 = 1e-10;
const ROOT_TOL: f64 = 1e-12;

/// Default `xi` window. Pairs whose roots sit near `+-k/theta_e` get a window
/// scaled by `1/theta_e`; all others use `|k| + 3 sqrt(omega^2 + 2 omega)`.
pub fn default_xi_window(params: &PlasmaParams, pair: PairLabel) -> (f64, f64) {
    let k = params.k().abs();
    let w = params.omega();
    let half = match (pair.j(), pair.jp()) {
        (2, 3) | (2, 4) | (3, 4) => k * (1.0 + 2.0 / params.theta_e()) + 10.0,
        _ => k + 3.0 * (w * w + 2.0 * w).sqrt(),
    };
    (-half, half)
}

/// Default transverse window `[0, 2|k|/theta_e]`.
pub fn default_r_window(params: &PlasmaParams) -> (f64, f64) {
    (0.0, 2.0 * params.k().abs() / params.theta_e())
}

pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let (a, b) = (f(lo).abs(), f(hi).abs());
    if a <= b {
        lo
    } else {
        hi
    }
}

fn record(params: &PlasmaParams, pair: PairLabel, xi: f64) -> ResonanceRecord {
    let zeta = Frequency::axis(xi);
    let (phi, nu) = phase_and_gradient(params, pair, &zeta);
    ResonanceRecord {
        pair,
        zeta,
        phase_residual: phi.abs(),
        nu,
        is_space_time: nu[0].hypot(nu[1]) <= SPACE_TIME_TOL,
    }
}

/// Roots of `xi -> Phi(xi, 0)` on `[a, b]`: uniform scan at [`SCAN_STEP`]
/// followed by bisection down to `tol`. Sorted by position.
pub fn find_axis_resonances(
    params: &PlasmaParams,
    pair: PairLabel,
    window: (f64, f64),
    tol: f64,
) -> Result<Vec<ResonanceRecord>, ResonanceError> {
    let (a, b) = window;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(ResonanceError::InvalidWindow(a, b));
    }
    if !(tol > 0.0) {
        return Err(ResonanceError::InvalidTolerance(tol));
    }
    let n = ((b - a) / SCAN_STEP).ceil() as usize;
    let h = (b - a) / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| if i == n { b } else { a + h * i as f64 }).collect();
    let f = |x: f64| phase(params, pair, x, 0.0);
    let vals = map_indices(xs.len(), |i| f(xs[i]));
    let tol = tol.min(ROOT_TOL);
    let mut roots = Vec::new();
    for i in 0..xs.len() {
        if vals[i] == 0.0 {
            roots.push(xs[i]);
        } else if i + 1 < xs.len() && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0) {
            roots.push(bisect(f, xs[i], xs[i + 1], tol));
        }
    }
    Ok(roots.into_iter().map(|x| record(params, pair, x)).collect())
}

/// Space-time resonances: the axis roots, each checked to have `d_eta Phi = 0`.
/// Requires the localisation condition `sqrt(1+k^2) <= (1-theta^2)/theta^2`.
pub fn space_time_resonances(params: &PlasmaParams, pair: PairLabel) -> Result<Vec<ResonanceRecord>, ResonanceError> {
    let th2 = params.theta_e().powi(2);
    if !space_time_condition(params.k(), params.theta_e()) {
        return Err(ResonanceError::Regime { lhs: params.omega(), rhs: (1.0 - th2) / th2 });
    }
    let roots = find_axis_resonances(params, pair, default_xi_window(params, pair), ROOT_TOL)?;
    Ok(roots.into_iter().filter(|r| r.is_space_time).collect())
}
