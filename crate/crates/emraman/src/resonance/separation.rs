use super::phase::phase_gradient_xi_r;
use super::roots::{default_r_window, default_xi_window};
use super::PairLabel;
use crate::sweep::map_indices;
use crate::PlasmaParams;
use serde::Serialize;

/// Expected outcome for an intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Empty,
    NonEmpty,
    /// Only the zero frequency.
    OriginOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Empty,
    NonEmpty,
    OriginOnly,
    Inconclusive,
}

/// `R_a ∩ (R_b + shift·k)`, or the same restricted to `eta = 0` when
/// `space_time` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Intersection {
    pub a: PairLabel,
    pub b: PairLabel,
    pub shift: i8,
    pub space_time: bool,
    pub expected: Expectation,
}

const fn r(a: (u8, u8), b: (u8, u8), shift: i8) -> Intersection {
    Intersection { a: PairLabel::of(a.0, a.1), b: PairLabel::of(b.0, b.1), shift, space_time: false, expected: Expectation::Empty }
}

const fn with(mut x: Intersection, expected: Expectation, space_time: bool) -> Intersection {
    x.expected = expected;
    x.space_time = space_time;
    x
}

/// Intersections checked by [`separation_report`].
pub const INTERSECTIONS: [Intersection; 25] = [
    r((1, 2), (2, 3), 1),
    r((1, 2), (2, 4), 1),
    r((2, 3), (2, 4), 0),
    r((2, 5), (2, 3), 0),
    r((2, 5), (2, 4), 0),
    r((1, 4), (3, 4), 0),
    r((2, 4), (3, 4), 0),
    r((3, 4), (4, 5), 1),
    r((1, 2), (1, 3), 0),
    r((1, 2), (1, 4), 0),
    r((1, 3), (1, 4), 0),
    r((1, 2), (2, 5), 1),
    r((1, 3), (2, 3), 0),
    r((1, 3), (3, 4), 1),
    with(r((1, 3), (3, 5), 1), Expectation::OriginOnly, false),
    with(r((2, 3), (3, 4), 1), Expectation::NonEmpty, false),
    with(r((2, 3), (3, 4), 1), Expectation::Empty, true),
    r((2, 3), (3, 5), 1),
    r((3, 4), (3, 5), 0),
    r((1, 4), (2, 4), 0),
    r((1, 4), (4, 5), 1),
    r((2, 4), (4, 5), 1),
    r((2, 5), (3, 5), 0),
    r((2, 5), (4, 5), 0),
    r((3, 5), (4, 5), 0),
];

impl Intersection {
    pub fn label(&self) -> String {
        let s = if self.space_time { 'S' } else { 'R' };
        let b = match self.shift {
            0 => format!("{s}{}{}", self.b.j(), self.b.jp()),
            1 => format!("({s}{}{}+k)", self.b.j(), self.b.jp()),
            n => format!("({s}{}{}{:+}k)", self.b.j(), self.b.jp(), n),
        };
        format!("{s}{}{} ∩ {b}", self.a.j(), self.a.jp())
    }

    /// `(Phi_a, Phi_b)` and the Jacobian rows in `(xi, r)`.
    fn eval(&self, params: &PlasmaParams, xi: f64, r: f64) -> ([f64; 2], [[f64; 2]; 2]) {
        let (fa, ax, ar) = phase_gradient_xi_r(params, self.a, xi, r);
        let (fb, bx, br) = phase_gradient_xi_r(params, self.b, xi - self.shift as f64 * params.k(), r);
        ([fa, fb], [[ax, ar], [bx, br]])
    }

    fn joint(&self, params: &PlasmaParams, xi: f64, r: f64) -> f64 {
        let (f, _) = self.eval(params, xi, r);
        f[0].abs().max(f[1].abs())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationEntry {
    pub label: String,
    pub intersection: Intersection,
    /// Smallest `max(|Phi_a|, |Phi_b|)` found.
    pub min_residual: f64,
    /// `(xi, r)` where it is attained.
    pub argmin: [f64; 2],
    /// Joint residual at the origin (origin-only checks).
    pub origin_residual: Option<f64>,
    pub verdict: Verdict,
    pub violation: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub delta_res: f64,
    /// Emptiness margin `10 delta_res`.
    pub margin: f64,
    pub entries: Vec<SeparationEntry>,
}

impl SeparationReport {
    pub fn violations(&self) -> impl Iterator<Item = &SeparationEntry> {
        self.entries.iter().filter(|e| e.violation)
    }

    pub fn entry(&self, label: &str) -> Option<&SeparationEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

const NONEMPTY_TOL: f64 = 1e-8;
const ORIGIN_BALL: f64 = 0.5;
const N_XI: usize = 1200;
const N_R: usize = 600;
const N_SEEDS: usize = 48;

/// Grid search plus Levenberg-Marquardt refinement for every entry of
/// [`INTERSECTIONS`]. Report only; `delta_res` must be positive.
pub fn separation_report(params: &PlasmaParams, delta_res: f64) -> SeparationReport {
    separation_report_with(params, delta_res, N_XI, N_R)
}

/// [`separation_report`] on an `n_xi x n_r` search grid.
pub fn separation_report_with(params: &PlasmaParams, delta_res: f64, n_xi: usize, n_r: usize) -> SeparationReport {
    let margin = 10.0 * delta_res;
    let entries = INTERSECTIONS
        .iter()
        .map(|x| {
            let excl = if x.expected == Expectation::OriginOnly { ORIGIN_BALL } else { 0.0 };
            let (min_residual, argmin) = if x.space_time {
                minimise_axis(params, x, n_xi * 20, excl)
            } else {
                minimise_plane(params, x, n_xi.max(8), n_r.max(4), excl)
            };
            let origin_residual = (x.expected == Expectation::OriginOnly).then(|| x.joint(params, 0.0, 0.0));
            let verdict = match origin_residual {
                Some(o) if o <= NONEMPTY_TOL && min_residual > margin => Verdict::OriginOnly,
                Some(o) if o > NONEMPTY_TOL && min_residual > margin => Verdict::Empty,
                _ if min_residual <= NONEMPTY_TOL => Verdict::NonEmpty,
                _ if min_residual > margin => Verdict::Empty,
                _ => Verdict::Inconclusive,
            };
            let expected = match x.expected {
                Expectation::Empty => Verdict::Empty,
                Expectation::NonEmpty => Verdict::NonEmpty,
                Expectation::OriginOnly => Verdict::OriginOnly,
            };
            SeparationEntry {
                label: x.label(),
                intersection: *x,
                min_residual,
                argmin,
                origin_residual,
                verdict,
                violation: verdict != expected,
            }
        })
        .collect();
    SeparationReport { delta_res, margin, entries }
}

fn xi_window(params: &PlasmaParams, x: &Intersection) -> (f64, f64) {
    let (a0, a1) = default_xi_window(params, x.a);
    let (b0, b1) = default_xi_window(params, x.b);
    let s = x.shift as f64 * params.k();
    (a0.min(b0 + s), a1.max(b1 + s))
}

fn minimise_axis(params: &PlasmaParams, x: &Intersection, n: usize, excl: f64) -> (f64, [f64; 2]) {
    let (lo, hi) = xi_window(params, x);
    let h = (hi - lo) / (n - 1) as f64;
    let vals = map_indices(n, |i| {
        let xi = lo + i as f64 * h;
        if xi.abs() < excl {
            f64::INFINITY
        } else {
            x.joint(params, xi, 0.0)
        }
    });
    let mut best = (f64::INFINITY, [lo, 0.0]);
    for i in 0..n {
        let left = if i > 0 { vals[i - 1] } else { f64::INFINITY };
        let right = if i + 1 < n { vals[i + 1] } else { f64::INFINITY };
        if vals[i].is_finite() && vals[i] <= left && vals[i] <= right {
            // golden-section on the bracketing cells
            let (mut a, mut b) = ((lo + (i as f64 - 1.0) * h).max(lo), (lo + (i as f64 + 1.0) * h).min(hi));
            let g = 0.5 * (5f64.sqrt() - 1.0);
            let f = |t: f64| if t.abs() < excl { f64::INFINITY } else { x.joint(params, t, 0.0) };
            for _ in 0..100 {
                let c = b - g * (b - a);
                let d = a + g * (b - a);
                if f(c) < f(d) {
                    b = d;
                } else {
                    a = c;
                }
            }
            let t = 0.5 * (a + b);
            let v = f(t).min(vals[i]);
            let arg = if f(t) <= vals[i] { t } else { lo + i as f64 * h };
            if v < best.0 {
                best = (v, [arg, 0.0]);
            }
        }
    }
    best
}

fn minimise_plane(params: &PlasmaParams, x: &Intersection, n_xi: usize, n_r: usize, excl: f64) -> (f64, [f64; 2]) {
    let (lo, hi) = xi_window(params, x);
    let (_, r_hi) = default_r_window(params);
    let r_hi = r_hi + 1.0;
    let hx = (hi - lo) / (n_xi - 1) as f64;
    let hr = r_hi / (n_r - 1) as f64;
    let at = |i: usize, j: usize| [lo + i as f64 * hx, j as f64 * hr];
    let outside = |p: [f64; 2]| p[0].hypot(p[1]) >= excl;
    let vals = map_indices(n_xi * n_r, |idx| {
        let p = at(idx / n_r, idx % n_r);
        if outside(p) {
            x.joint(params, p[0], p[1])
        } else {
            f64::INFINITY
        }
    });
    let mut minima: Vec<(f64, usize)> = (0..n_xi * n_r)
        .filter(|&idx| {
            let v = vals[idx];
            if !v.is_finite() {
                return false;
            }
            let (i, j) = ((idx / n_r) as isize, (idx % n_r) as isize);
            (-1..=1).all(|di| {
                (-1..=1).all(|dj| {
                    let (a, b) = (i + di, j + dj);
                    a < 0 || b < 0 || a >= n_xi as isize || b >= n_r as isize || vals[(a as usize) * n_r + b as usize] >= v
                })
            })
        })
        .map(|idx| (vals[idx], idx))
        .collect();
    minima.sort_by(|a, b| a.0.total_cmp(&b.0));
    minima.truncate(N_SEEDS);
    let refined = map_indices(minima.len(), |m| {
        let (v0, idx) = minima[m];
        let p0 = at(idx / n_r, idx % n_r);
        let (v, p) = levenberg_marquardt(params, x, p0);
        if v < v0 && outside(p) {
            (v, p)
        } else {
            (v0, p0)
        }
    });
    refined.into_iter().fold((f64::INFINITY, [0.0, 0.0]), |acc, c| if c.0 < acc.0 { c } else { acc })
}

fn levenberg_marquardt(params: &PlasmaParams, x: &Intersection, p0: [f64; 2]) -> (f64, [f64; 2]) {
    let mut p = p0;
    let mut lambda = 1e-3;
    let (mut f, mut jac) = x.eval(params, p[0], p[1]);
    let mut cost = f[0] * f[0] + f[1] * f[1];
    for _ in 0..200 {
        if f[0].abs().max(f[1].abs()) < 1e-15 {
            break;
        }
        // normal equations (J^T J + lambda diag) d = -J^T f
        let a11 = jac[0][0].powi(2) + jac[1][0].powi(2);
        let a22 = jac[0][1].powi(2) + jac[1][1].powi(2);
        let a12 = jac[0][0] * jac[0][1] + jac[1][0] * jac[1][1];
        let g1 = jac[0][0] * f[0] + jac[1][0] * f[1];
        let g2 = jac[0][1] * f[0] + jac[1][1] * f[1];
        let m11 = a11 + lambda * (a11 + 1e-12);
        let m22 = a22 + lambda * (a22 + 1e-12);
        let det = m11 * m22 - a12 * a12;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let d = [-(m22 * g1 - a12 * g2) / det, -(m11 * g2 - a12 * g1) / det];
        let q = [p[0] + d[0], (p[1] + d[1]).abs()];
        let (fq, jq) = x.eval(params, q[0], q[1]);
        let cq = fq[0] * fq[0] + fq[1] * fq[1];
        if cq < cost {
            p = q;
            f = fq;
            jac = jq;
            cost = cq;
            lambda = (lambda * 0.3).max(1e-12);
        } else {
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
    }
    (f[0].abs().max(f[1].abs()), p)
}
