use super::block::BlockSpec;
use super::oracles::GrowthFit;
use super::SymflowError;
use crate::csv::Table;
use crate::fourier::{nodes, shift_wavenumbers, wrap, FftNd};
use crate::{c, C64, I};
use serde::{Deserialize, Serialize};

/// Periodic transverse grid and time step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowGrid {
    pub dim_y: usize,
    pub length: f64,
    pub n_points: usize,
    pub dt: f64,
    pub epsilon: f64,
}

impl FlowGrid {
    pub fn new(dim_y: usize, length: f64, n_points: usize, dt: f64, epsilon: f64) -> Result<Self, SymflowError> {
        let g = Self { dim_y, length, n_points, dt, epsilon };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), SymflowError> {
        if !(self.dim_y == 1 || self.dim_y == 2) {
            return Err(SymflowError::Grid(format!("dim_y must be 1 or 2, got {}", self.dim_y)));
        }
        if self.n_points < 4 || !self.n_points.is_power_of_two() {
            return Err(SymflowError::Grid(format!("n_points must be a power of two >= 4, got {}", self.n_points)));
        }
        if !(self.length > 0.0) || !(self.dt > 0.0) || !(self.epsilon > 0.0) {
            return Err(SymflowError::Grid("length, dt and epsilon must be positive".into()));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n_points as f64
    }

    pub fn len(&self) -> usize {
        self.n_points.pow(self.dim_y as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node coordinates, padded with 0 in the second slot when `dim_y = 1`.
    pub fn points(&self) -> Vec<[f64; 2]> {
        let y = nodes(self.n_points, self.length);
        if self.dim_y == 1 {
            y.iter().map(|&a| [a, 0.0]).collect()
        } else {
            y.iter().flat_map(|&a| y.iter().map(move |&b| [a, b])).collect()
        }
    }

    /// Largest admissible step `0.25 dy sqrt(eps) / max |d_eta mu|`.
    pub fn cfl_limit(&self, max_speed: f64) -> f64 {
        if max_speed == 0.0 {
            f64::INFINITY
        } else {
            0.25 * self.spacing() * self.epsilon.sqrt() / max_speed
        }
    }
}

/// Initial condition of the fundamental solution.
#[derive(Debug, Clone, PartialEq)]
pub enum Datum {
    /// `S(0) = Id`: one column per component.
    Identity,
    /// A single column, one field per component.
    Fields(Vec<Vec<C64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    pub t: f64,
    /// `[component][column][point]`, flattened.
    pub data: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowTrajectory {
    pub labels: Vec<u8>,
    pub epsilon: f64,
    pub n_columns: usize,
    pub grid: FlowGrid,
    pub times: Vec<f64>,
    /// `sup_y |S(t, y)|_F`.
    pub sup_norm: Vec<f64>,
    pub l2_norm: Vec<f64>,
    /// Per time, per component `sup_y |S^j(t, y)|`.
    pub component_sup: Vec<Vec<f64>>,
    pub snapshots: Vec<Snapshot>,
    pub fit: Option<GrowthFit>,
}

/// Norms of a `[component][column][point]` field.
pub fn field_norms(data: &[C64], n_comp: usize, n_cols: usize, grid: &FlowGrid) -> (f64, f64, Vec<f64>) {
    let np = grid.len();
    let cell = grid.spacing().powi(grid.dim_y as i32);
    let mut sup: f64 = 0.0;
    let mut l2 = 0.0;
    let mut comp = vec![0.0f64; n_comp];
    for p in 0..np {
        let mut tot = 0.0;
        for (j, cj) in comp.iter_mut().enumerate() {
            let s: f64 = (0..n_cols).map(|col| data[(j * n_cols + col) * np + p].norm_sqr()).sum();
            *cj = cj.max(s.sqrt());
            tot += s;
        }
        sup = sup.max(tot.sqrt());
        l2 += tot * cell;
    }
    (sup, l2.sqrt(), comp)
}

impl FlowTrajectory {
    pub fn to_table(&self) -> Table {
        let mut header = vec!["t".to_string(), "sup_norm".into(), "l2_norm".into()];
        header.extend(self.labels.iter().map(|j| format!("sup_{j}")));
        let mut t = Table::new(header);
        for (i, &time) in self.times.iter().enumerate() {
            let mut row = vec![time, self.sup_norm[i], self.l2_norm[i]];
            row.extend(&self.component_sup[i]);
            t.push(row);
        }
        t
    }

    pub fn to_csv(&self) -> String {
        self.to_table().to_csv()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    /// Store a snapshot every this many steps (0: first and last only).
    pub snapshot_every: usize,
}

/// Integrator for the oscillation-factored system
/// `dT^j/dt (z) = eps^{-1/2} sum b_jj'(z + v_j t) e^{i(mu_j - mu_j')t/eps} T^j'(z + (v_j - v_j')t)`,
/// `v_j = d_eta mu_j / sqrt(eps)`, with `S^j(t, y) = e^{-i mu_j t/eps} T^j(t, y - v_j t)`.
pub struct FlowSolver {
    spec: BlockSpec,
    grid: FlowGrid,
    fft: FftNd,
    kappa: Vec<[f64; 2]>,
    points: Vec<[f64; 2]>,
    velocity: Vec<[f64; 2]>,
    n_cols: usize,
    t: f64,
    state: Vec<C64>,
}

impl FlowSolver {
    pub fn new(spec: &BlockSpec, grid: &FlowGrid, datum: &Datum) -> Result<Self, SymflowError> {
        grid.validate()?;
        let limit = grid.cfl_limit(spec.max_speed());
        if grid.dt > limit {
            return Err(SymflowError::Cfl { dt: grid.dt, limit });
        }
        for cpl in &spec.couplings {
            if let Some(r) = cpl.envelope.support_radius() {
                if r > grid.length / 4.0 {
                    return Err(SymflowError::Support { radius: r, length: grid.length });
                }
            }
            if cpl.to >= spec.n_components() || cpl.from >= spec.n_components() {
                return Err(SymflowError::Grid("coupling index out of range".into()));
            }
        }
        let n = grid.n_points;
        let np = grid.len();
        let kx = shift_wavenumbers(n, grid.length);
        let kappa: Vec<[f64; 2]> = if grid.dim_y == 1 {
            kx.iter().map(|&a| [a, 0.0]).collect()
        } else {
            kx.iter().flat_map(|&a| kx.iter().map(move |&b| [a, b])).collect()
        };
        let shape = vec![n; grid.dim_y];
        let se = grid.epsilon.sqrt();
        let velocity = spec.grad_mu.iter().map(|g| [g[0] / se, g[1] / se]).collect();
        let nc = spec.n_components();
        let (n_cols, state) = match datum {
            Datum::Identity => {
                let mut s = vec![c(0.0); nc * nc * np];
                for j in 0..nc {
                    let base = (j * nc + j) * np;
                    s[base..base + np].fill(c(1.0));
                }
                (nc, s)
            }
            Datum::Fields(f) => {
                if f.len() != nc || f.iter().any(|v| v.len() != np) {
                    return Err(SymflowError::Datum);
                }
                (1, f.concat())
            }
        };
        Ok(Self {
            spec: spec.clone(),
            grid: *grid,
            fft: FftNd::new(&shape),
            kappa,
            points: grid.points(),
            velocity,
            n_cols,
            t: 0.0,
            state,
        })
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn n_columns(&self) -> usize {
        self.n_cols
    }

    /// Factored state `T`, `[component][column][point]`.
    pub fn breve(&self) -> &[C64] {
        &self.state
    }

    fn shift(&self, field: &mut [C64], a: [f64; 2]) {
        // field(z) -> field(z + a)
        self.fft.forward(field);
        for (z, k) in field.iter_mut().zip(&self.kappa) {
            *z *= (I * (k[0] * a[0] + k[1] * a[1])).exp();
        }
        self.fft.inverse(field);
    }

    fn rhs(&self, t: f64, x: &[C64], out: &mut [C64]) {
        out.fill(c(0.0));
        let np = self.grid.len();
        let nc = self.n_cols;
        let eps = self.grid.epsilon;
        let se = eps.sqrt();
        let len = self.grid.length;
        let mut tmp = vec![c(0.0); np];
        for cpl in &self.spec.couplings {
            let (a, b) = (cpl.to, cpl.from);
            let va = self.velocity[a];
            let vb = self.velocity[b];
            let shift = [(va[0] - vb[0]) * t, (va[1] - vb[1]) * t];
            let phase = (I * ((self.spec.mu[a] - self.spec.mu[b]) * t / eps)).exp() / se;
            let coef: Vec<C64> = self
                .points
                .iter()
                .map(|p| cpl.eval([wrap(p[0] + va[0] * t, len), wrap(p[1] + va[1] * t, len)]) * phase)
                .collect();
            for col in 0..nc {
                let src = &x[(b * nc + col) * np..(b * nc + col + 1) * np];
                tmp.copy_from_slice(src);
                if shift != [0.0, 0.0] {
                    self.shift(&mut tmp, shift);
                }
                let dst = &mut out[(a * nc + col) * np..(a * nc + col + 1) * np];
                for ((d, s), g) in dst.iter_mut().zip(&tmp).zip(&coef) {
                    *d += g * s;
                }
            }
        }
    }

    /// One RK4 step of size `dt` (negative steps integrate backwards).
    pub fn step(&mut self, dt: f64) {
        if self.spec.couplings.is_empty() {
            self.t += dt;
            return;
        }
        let n = self.state.len();
        let t = self.t;
        let mut k1 = vec![c(0.0); n];
        let mut k2 = vec![c(0.0); n];
        let mut k3 = vec![c(0.0); n];
        let mut k4 = vec![c(0.0); n];
        let mut y = vec![c(0.0); n];
        self.rhs(t, &self.state, &mut k1);
        for i in 0..n {
            y[i] = self.state[i] + k1[i] * (0.5 * dt);
        }
        self.rhs(t + 0.5 * dt, &y, &mut k2);
        for i in 0..n {
            y[i] = self.state[i] + k2[i] * (0.5 * dt);
        }
        self.rhs(t + 0.5 * dt, &y, &mut k3);
        for i in 0..n {
            y[i] = self.state[i] + k3[i] * dt;
        }
        self.rhs(t + dt, &y, &mut k4);
        for i in 0..n {
            self.state[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
        }
        self.t += dt;
    }

    /// The solution `S(t)` in the original variables.
    pub fn fields(&self) -> Vec<C64> {
        let np = self.grid.len();
        let nc = self.n_cols;
        let mut out = self.state.clone();
        for j in 0..self.spec.n_components() {
            let v = self.velocity[j];
            let ph = (-I * (self.spec.mu[j] * self.t / self.grid.epsilon)).exp();
            for col in 0..nc {
                let f = &mut out[(j * nc + col) * np..(j * nc + col + 1) * np];
                if v != [0.0, 0.0] {
                    self.shift(f, [-v[0] * self.t, -v[1] * self.t]);
                }
                for z in f.iter_mut() {
                    *z *= ph;
                }
            }
        }
        out
    }

    pub fn norms(&self) -> (f64, f64, Vec<f64>) {
        field_norms(&self.fields(), self.spec.n_components(), self.n_cols, &self.grid)
    }
}

/// [`run_flow_with`] keeping only the first and last snapshots.
pub fn run_flow(spec: &BlockSpec, grid: &FlowGrid, t_final: f64, datum: &Datum) -> Result<FlowTrajectory, SymflowError> {
    run_flow_with(spec, grid, t_final, datum, RunOptions::default())
}

/// Integrates from `t = 0` to `t_final`, recording norms after every step.
/// The step is shrunk slightly so that `t_final` is hit exactly.
pub fn run_flow_with(
    spec: &BlockSpec,
    grid: &FlowGrid,
    t_final: f64,
    datum: &Datum,
    opts: RunOptions,
) -> Result<FlowTrajectory, SymflowError> {
    if !(t_final >= 0.0) {
        return Err(SymflowError::Grid(format!("final time must be non-negative, got {t_final}")));
    }
    let mut solver = FlowSolver::new(spec, grid, datum)?;
    let steps = (t_final / grid.dt).ceil() as usize;
    let dt = if steps > 0 { t_final / steps as f64 } else { 0.0 };
    let nc = spec.n_components();
    let mut traj = FlowTrajectory {
        labels: spec.labels.clone(),
        epsilon: grid.epsilon,
        n_columns: solver.n_columns(),
        grid: *grid,
        times: Vec::with_capacity(steps + 1),
        sup_norm: Vec::with_capacity(steps + 1),
        l2_norm: Vec::with_capacity(steps + 1),
        component_sup: Vec::with_capacity(steps + 1),
        snapshots: Vec::new(),
        fit: None,
    };
    let record = |s: &FlowSolver, i: usize, traj: &mut FlowTrajectory| {
        let f = s.fields();
        let (sup, l2, comp) = field_norms(&f, nc, s.n_columns(), grid);
        traj.times.push(s.time());
        traj.sup_norm.push(sup);
        traj.l2_norm.push(l2);
        traj.component_sup.push(comp);
        let keep = i == 0 || i == steps || (opts.snapshot_every > 0 && i % opts.snapshot_every == 0);
        if keep {
            traj.snapshots.push(Snapshot { t: s.time(), data: f });
        }
    };
    record(&solver, 0, &mut traj);
    for i in 1..=steps {
        solver.step(dt);
        if i == steps {
            solver.t = t_final;
        }
        record(&solver, i, &mut traj);
    }
    Ok(traj)
}
