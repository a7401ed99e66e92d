use super::phase::{phase, phase_gradient_xi_r};
use super::PairLabel;
use crate::sweep::map_indices;
use crate::PlasmaParams;
use serde::{Deserialize, Serialize};

/// Rectangular sampling window in the `(xi, r)` half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub xi_min: f64,
    pub xi_max: f64,
    pub r_max: f64,
    pub n_xi: usize,
    pub n_r: usize,
}

/// Piecewise-linear approximation of `{Phi = 0}`, with every vertex pulled
/// back onto the level set by a few Newton steps.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ResonanceCurve {
    pub pair: Option<PairLabel>,
    pub segments: Vec<[[f64; 2]; 2]>,
}

impl ResonanceCurve {
    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
    pub fn points(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        self.segments.iter().flat_map(|s| s.iter().copied())
    }
}

fn refine(params: &PlasmaParams, pair: PairLabel, mut p: [f64; 2]) -> [f64; 2] {
    for _ in 0..20 {
        let (f, fx, fr) = phase_gradient_xi_r(params, pair, p[0], p[1]);
        if f.abs() < 1e-14 {
            break;
        }
        let g2 = fx * fx + fr * fr;
        if g2 < 1e-300 {
            break;
        }
        p[0] -= f * fx / g2;
        p[1] = (p[1] - f * fr / g2).max(0.0);
    }
    p
}

/// Marching-squares extraction of the resonant set in `(xi, r = |eta|)`.
pub fn resonance_curve(params: &PlasmaParams, pair: PairLabel, grid: GridSpec) -> ResonanceCurve {
    let nx = grid.n_xi.max(2);
    let nr = grid.n_r.max(2);
    let hx = (grid.xi_max - grid.xi_min) / (nx - 1) as f64;
    let hr = grid.r_max / (nr - 1) as f64;
    let xi = |i: usize| grid.xi_min + hx * i as f64;
    let rr = |j: usize| hr * j as f64;
    let vals = map_indices(nx * nr, |n| phase(params, pair, xi(n / nr), rr(n % nr)));
    let v = |i: usize, j: usize| vals[i * nr + j];

    let cells: Vec<Vec<[[f64; 2]; 2]>> = map_indices((nx - 1) * (nr - 1), |c| {
        let (i, j) = (c / (nr - 1), c % (nr - 1));
        // corners counter-clockwise from (i, j)
        let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
        let f: Vec<f64> = corners.iter().map(|&(a, b)| v(a, b)).collect();
        let pos: Vec<[f64; 2]> = corners.iter().map(|&(a, b)| [xi(a), rr(b)]).collect();
        let mut crossings: Vec<(usize, [f64; 2])> = Vec::new();
        for e in 0..4 {
            let (a, b) = (e, (e + 1) % 4);
            if (f[a] < 0.0) != (f[b] < 0.0) {
                let t = f[a] / (f[a] - f[b]);
                crossings.push((e, [pos[a][0] + t * (pos[b][0] - pos[a][0]), pos[a][1] + t * (pos[b][1] - pos[a][1])]));
            }
        }
        let mut segs = Vec::new();
        match crossings.len() {
            2 => segs.push([crossings[0].1, crossings[1].1]),
            4 => {
                // saddle: decide the pairing from the cell centre
                let centre = phase(params, pair, 0.5 * (pos[0][0] + pos[2][0]), 0.5 * (pos[0][1] + pos[2][1]));
                if (centre < 0.0) == (f[0] < 0.0) {
                    segs.push([crossings[0].1, crossings[3].1]);
                    segs.push([crossings[1].1, crossings[2].1]);
                } else {
                    segs.push([crossings[0].1, crossings[1].1]);
                    segs.push([crossings[2].1, crossings[3].1]);
                }
            }
            _ => {}
        }
        segs.into_iter().map(|[a, b]| [refine(params, pair, a), refine(params, pair, b)]).collect()
    });
    ResonanceCurve { pair: Some(pair), segments: cells.into_iter().flatten().collect() }
}
