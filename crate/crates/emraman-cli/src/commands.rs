use crate::args::*;
use crate::output::{Artifact, Cell};
use crate::CliError;
use emraman::interaction::{
    classify_raman, growth_rates, leading_raman_rates, leading_trace_12, leading_trace_14, raman_rates,
    rate_from_trace, resonance_trace, traces_at_resonances,
};
use emraman::resonance::{
    default_r_window, default_xi_window, find_axis_resonances, k_c, phase, resonance_curve, separation_report,
    space_time_resonances, thresholds, GridSpec, PairLabel,
};
use emraman::spectral::{branch, eigenvalues, spectral_decomposition, symbol_matrix};
use emraman::sweep::{linspace, map};
use emraman::symflow::{estimate_growth, run_flow, BlockSpec, CouplingOptions, Datum, Envelope, FlowGrid, Triplet};
use emraman::zakharov::{gaussian_envelope, init_from_wkb, run_and_report, ZakharovGrid, ZakharovSolver};
use emraman::{Frequency, PlasmaParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ROOT_TOL: f64 = 1e-12;

fn params(c: &Common) -> Result<PlasmaParams, CliError> {
    Ok(PlasmaParams::new(c.epsilon, c.theta_e, c.alpha_ie, c.k)?)
}

fn pair_cell(p: PairLabel) -> Cell {
    Cell::Text(format!("{}{}", p.j(), p.jp()))
}

pub fn run(cli: &Cli) -> Result<Artifact, CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::Dispersion(a) => dispersion(c, a),
        Command::Resonances(a) => resonances(c, a),
        Command::Spacetime(a) => spacetime(c, a),
        Command::TraceScan(a) => trace_scan(c, a.k_min, a.k_max, a.samples, a.model),
        Command::RateScan(a) => rate_scan(c, a.k_min, a.k_max, a.samples, a.amplitude, a.model),
        Command::Flow(a) => flow(c, a),
        Command::Zakharov(a) => zakharov(c, a),
        Command::Report(a) => report(c, a),
        Command::Figure(a) => figure(c, a),
    }
}

fn check_samples(n: usize) -> Result<(), CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("--samples must be at least 2, got {n}")));
    }
    Ok(())
}

fn dispersion(c: &Common, a: &DispersionArgs) -> Result<Artifact, CliError> {
    let p = params(c)?;
    if let Some(n) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let zetas: Vec<Frequency> = (0..n)
            .map(|_| loop {
                let v = [rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0)];
                if v.iter().map(|x: &f64| x * x).sum::<f64>() <= 400.0 {
                    break Frequency::new(v[0], [v[1], v[2]]);
                }
            })
            .collect();
        let p0 = p.with_epsilon(0.0)?;
        let res = map(&zetas, |z| {
            let d = spectral_decomposition(&p0, z);
            (symbol_matrix(&p0, z, false) - d.reconstruction()).norm()
        });
        let mut out = Artifact::new(&["xi", "eta_1", "eta_2", "residual"]);
        for (z, r) in zetas.iter().zip(&res) {
            out.push(vec![z.xi.into(), z.eta[0].into(), z.eta[1].into(), (*r).into()]);
        }
        let worst = res.iter().copied().fold(0.0, f64::max);
        out.set_num("max_residual", worst);
        out.message = format!("{n} random frequencies, max reconstruction residual {worst:.3e}");
        return Ok(out);
    }
    check_samples(a.samples)?;
    let mut out =
        Artifact::new(&["xi", "r", "lambda_1", "lambda_2", "lambda_3", "lambda_4", "lambda_5", "lambda_3_minus"]);
    let xs = linspace(a.xi_min, a.xi_max, a.samples);
    let rows = map(&xs, |&xi| eigenvalues(&p, &Frequency::new(xi, [a.r, 0.0]), a.with_epsilon));
    for (xi, e) in xs.iter().zip(rows) {
        let e = e?;
        out.push(
            [*xi, a.r, e.lambda1, e.lambda2, e.lambda3, -e.lambda2, -e.lambda1, -e.lambda3]
                .into_iter()
                .map(Cell::from)
                .collect(),
        );
    }
    out.message = format!("{} samples of the variety on xi in [{}, {}]", a.samples, a.xi_min, a.xi_max);
    Ok(out)
}

fn resonances(c: &Common, a: &ResonanceArgs) -> Result<Artifact, CliError> {
    let p = params(c)?;
    let pairs = a.pair.map_or_else(PairLabel::all, |q| vec![q]);
    if a.curve {
        let mut out = Artifact::new(&["pair", "segment", "xi", "r"]);
        let mut n = 0;
        for pair in pairs {
            let (lo, hi) = default_xi_window(&p, pair);
            let grid = GridSpec {
                xi_min: a.xi_min.unwrap_or(lo),
                xi_max: a.xi_max.unwrap_or(hi),
                r_max: a.r_max.unwrap_or(default_r_window(&p).1),
                n_xi: a.grid_n,
                n_r: a.grid_n,
            };
            let curve = resonance_curve(&p, pair, grid);
            for (i, s) in curve.segments.iter().enumerate() {
                for v in s {
                    out.push(vec![pair_cell(pair), (i as f64).into(), v[0].into(), v[1].into()]);
                }
            }
            n += curve.segments.len();
        }
        out.message = format!("{n} curve segments");
        return Ok(out);
    }
    let mut out = Artifact::new(&["pair", "xi", "phase_residual", "nu_1", "nu_2", "space_time"]);
    let mut n = 0;
    for pair in pairs {
        let (lo, hi) = default_xi_window(&p, pair);
        let window = (a.xi_min.unwrap_or(lo), a.xi_max.unwrap_or(hi));
        let roots = find_axis_resonances(&p, pair, window, ROOT_TOL)?;
        if roots.is_empty() {
            let xs = linspace(window.0, window.1, 20001);
            let m = map(&xs, |&x| phase(&p, pair, x, 0.0).abs()).into_iter().fold(f64::INFINITY, f64::min);
            out.set_num(&format!("min_abs_phase_{}{}", pair.j(), pair.jp()), m);
        }
        for r in &roots {
            out.push(vec![
                pair_cell(pair),
                r.zeta.xi.into(),
                r.phase_residual.into(),
                r.nu[0].into(),
                r.nu[1].into(),
                r.is_space_time.into(),
            ]);
        }
        n += roots.len();
    }
    out.message = format!("{n} axis resonances");
    Ok(out)
}

fn spacetime(c: &Common, a: &SpacetimeArgs) -> Result<Artifact, CliError> {
    let p = params(c)?;
    let th = thresholds(&p);
    if a.separation {
        if !(a.delta_res > 0.0) {
            return Err(CliError::Usage(format!("--delta-res must be positive, got {}", a.delta_res)));
        }
        let rep = separation_report(&p, a.delta_res);
        let mut out = Artifact::new(&[
            "intersection",
            "min_residual",
            "argmin_xi",
            "argmin_r",
            "origin_residual",
            "expected",
            "verdict",
            "violation",
        ]);
        for e in &rep.entries {
            out.push(vec![
                e.label.as_str().into(),
                e.min_residual.into(),
                e.argmin[0].into(),
                e.argmin[1].into(),
                e.origin_residual.unwrap_or(f64::NAN).into(),
                format!("{:?}", e.intersection.expected).to_lowercase().into(),
                format!("{:?}", e.verdict).to_lowercase().into(),
                e.violation.into(),
            ]);
        }
        let v = rep.violations().count();
        out.set_num("delta_res", a.delta_res);
        out.set("violations", v);
        out.message = format!("{} intersections, {v} violations", rep.entries.len());
        return Ok(out);
    }
    let pairs = a.pair.map_or_else(PairLabel::all, |q| vec![q]);
    let mut out = Artifact::new(&["pair", "xi", "phase_residual", "trace"]);
    for pair in pairs {
        for r in space_time_resonances(&p, pair)? {
            let tr = resonance_trace(&p, pair, &r.zeta).re;
            out.push(vec![pair_cell(pair), r.zeta.xi.into(), r.phase_residual.into(), tr.into()]);
        }
    }
    out.set_num("k_c", th.k_c);
    out.set_num("k_min", th.k_min.unwrap_or(f64::NAN));
    out.set("cond_k_thetae", th.cond_k_thetae);
    out.message = format!("{} space-time resonances, k_c = {:.6}", out.rows.len(), th.k_c);
    Ok(out)
}

fn resolve_model(c: &Common, model: Model) -> Model {
    match model {
        Model::Auto if c.theta_e >= 1.0 => Model::Leading,
        Model::Auto => Model::Exact,
        m => m,
    }
}

fn k_grid(c: &Common, k_min: f64, k_max: f64, samples: usize, model: Model) -> Result<Vec<f64>, CliError> {
    check_samples(samples)?;
    if !(k_min > 0.0 && k_max > k_min) {
        return Err(CliError::Usage(format!("need 0 < --k-min < --k-max, got {k_min}, {k_max}")));
    }
    let threshold = match model {
        Model::Leading => 3f64.sqrt(),
        _ => k_c(c.theta_e),
    };
    if k_min <= threshold {
        return Err(CliError::Regime(format!(
            "--k-min = {k_min} is not above the threshold {threshold}: no amplifying (1,4) resonance"
        )));
    }
    Ok(linspace(k_min, k_max, samples))
}

/// Values at the smaller and larger root, NaN when absent.
fn two_roots(v: &[(f64, emraman::C64)]) -> (f64, f64) {
    match v {
        [] => (f64::NAN, f64::NAN),
        [x] => (x.1.re, f64::NAN),
        _ => (v[0].1.re, v[v.len() - 1].1.re),
    }
}

fn trace_scan(c: &Common, k_min: f64, k_max: f64, samples: usize, model: Model) -> Result<Artifact, CliError> {
    let model = resolve_model(c, model);
    let ks = k_grid(c, k_min, k_max, samples, model)?;
    let rows: Vec<Result<[f64; 5], CliError>> = match model {
        Model::Leading => {
            if !(c.theta_e > 0.0) {
                return Err(CliError::Usage(format!("--theta-e must be positive, got {}", c.theta_e)));
            }
            let th = c.theta_e;
            ks.iter()
                .map(|&k| {
                    Ok([
                        k,
                        leading_trace_14(k, th, -1.0),
                        leading_trace_14(k, th, 1.0),
                        leading_trace_12(k, th, 1.0),
                        leading_trace_12(k, th, -1.0),
                    ])
                })
                .collect()
        }
        _ => {
            let base = params(c)?;
            map(&ks, |&k| {
                let p = base.with_k(k)?;
                let t14 = traces_at_resonances(&p, PairLabel::of(1, 4))?;
                let t12 = traces_at_resonances(&p, PairLabel::of(1, 2))?;
                let (a, b) = two_roots(&t14);
                let (m, pl) = two_roots(&t12);
                Ok([k, a, b, pl, m])
            })
        }
    };
    let mut out = Artifact::new(&["k", "tr14_minus", "tr14_plus", "tr12_plus", "tr12_minus"]);
    for r in rows {
        out.push(r?.into_iter().map(Cell::from).collect());
    }
    out.set("model", format!("{model:?}").to_lowercase());
    out.message = format!("{samples} samples of the traces on k in [{k_min}, {k_max}]");
    Ok(out)
}

fn rate_scan(
    c: &Common,
    k_min: f64,
    k_max: f64,
    samples: usize,
    amplitude: f64,
    model: Model,
) -> Result<Artifact, CliError> {
    if !(amplitude >= 0.0) {
        return Err(CliError::Usage(format!("--amplitude must be non-negative, got {amplitude}")));
    }
    let model = resolve_model(c, model);
    let ks = k_grid(c, k_min, k_max, samples, model)?;
    let rows: Vec<Result<[f64; 3], CliError>> = match model {
        Model::Leading => {
            if !(c.theta_e > 0.0) {
                return Err(CliError::Usage(format!("--theta-e must be positive, got {}", c.theta_e)));
            }
            ks.iter()
                .map(|&k| {
                    let (b, f) = leading_raman_rates(k, c.theta_e, amplitude);
                    Ok([k, b, f])
                })
                .collect()
        }
        _ => {
            let base = params(c)?;
            map(&ks, |&k| {
                let r = raman_rates(&base.with_k(k)?, amplitude)?;
                Ok([k, r.backward, r.forward])
            })
        }
    };
    let mut out = Artifact::new(&["k", "gamma_backward", "gamma_forward"]);
    for r in rows {
        out.push(r?.into_iter().map(Cell::from).collect());
    }
    let last = out.rows.last().map(|r| r[1].clone());
    out.set("model", format!("{model:?}").to_lowercase());
    out.message = format!(
        "{samples} samples on k in [{k_min}, {k_max}], gamma_backward({k_max}) = {}",
        match last {
            Some(Cell::Num(x)) => format!("{x:.6}"),
            _ => "-".into(),
        }
    );
    Ok(out)
}

pub fn parse_envelope(s: &str) -> Result<Envelope, CliError> {
    let bad = || CliError::Usage(format!("--envelope expects const:<value> or gauss:<amplitude>:<width>, got {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    let nums: Vec<f64> = parts[1..].iter().map(|x| x.parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    match (parts[0], nums.as_slice()) {
        ("const", [v]) => Ok(Envelope::constant(*v)),
        ("gauss", [a, w]) if *w > 0.0 => Ok(Envelope::gaussian(*a, *w)),
        _ => Err(bad()),
    }
}

fn parse_eta(s: &str) -> Result<[f64; 2], CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--eta expects a,b, got {s:?}")))?;
    match v.as_slice() {
        [a, b] => Ok([*a, *b]),
        [a] => Ok([*a, 0.0]),
        _ => Err(CliError::Usage(format!("--eta expects a,b, got {s:?}"))),
    }
}

/// Axis root of `pair` with the largest trace.
fn auto_xi(p: &PlasmaParams, pair: PairLabel) -> Result<f64, CliError> {
    let roots = find_axis_resonances(p, pair, default_xi_window(p, pair), ROOT_TOL)?;
    roots
        .iter()
        .map(|r| (r.zeta.xi, resonance_trace(p, pair, &r.zeta).re))
        .fold(None, |best: Option<(f64, f64)>, c| match best {
            Some(b) if b.1 >= c.1 => Some(b),
            _ => Some(c),
        })
        .map(|b| b.0)
        .ok_or_else(|| CliError::Regime(format!("pair {pair} has no axis resonance at k = {}", p.k())))
}

fn flow(c: &Common, a: &FlowArgs) -> Result<Artifact, CliError> {
    let p = params(c)?;
    if !(p.epsilon() > 0.0) {
        return Err(CliError::Usage("flow needs --epsilon > 0".into()));
    }
    let opts = CouplingOptions { envelope: parse_envelope(&a.envelope)?, cutoff: None };
    let fixed_xi = if a.xi == "auto" {
        None
    } else {
        Some(a.xi.parse::<f64>().map_err(|_| CliError::Usage(format!("--xi expects auto or a number, got {}", a.xi)))?)
    };
    let eta = a.eta.as_deref().map(parse_eta).transpose()?;
    let (spec, label) = match (a.pair, a.triplet) {
        (Some(pair), _) => {
            let xi = match fixed_xi {
                Some(x) => x,
                None => auto_xi(&p, pair)?,
            };
            let z = Frequency::new(xi, eta.unwrap_or([0.0, 0.0]));
            (BlockSpec::pair(&p, pair, &z, &opts)?, format!("{}{}", pair.j(), pair.jp()))
        }
        (None, Some(t)) => {
            let (which, default_eta) = match t {
                TripletArg::T234 => {
                    let r2 = p.k().powi(2) / p.theta_e().powi(2) - p.k().powi(2);
                    (Triplet::T234, [r2.max(0.0).sqrt(), 0.0])
                }
                TripletArg::T135 => (Triplet::T135, [0.0, 0.0]),
            };
            let z = Frequency::new(fixed_xi.unwrap_or(0.0), eta.unwrap_or(default_eta));
            let name = if which == Triplet::T234 { "234" } else { "135" };
            (BlockSpec::triplet(&p, which, &z, &opts)?, name.to_string())
        }
        (None, None) => return Err(CliError::Usage("flow needs --pair or --triplet".into())),
    };
    let se = p.epsilon().sqrt();
    let probe = FlowGrid { dim_y: a.dim_y, length: a.grid_l, n_points: a.grid_n, dt: 1.0, epsilon: p.epsilon() };
    let dt = a.dt.unwrap_or_else(|| (0.05 * se).min(0.9 * probe.cfl_limit(spec.max_speed())));
    let grid = FlowGrid::new(a.dim_y, a.grid_l, a.grid_n, dt, p.epsilon())?;
    let t_final = a.t_final.unwrap_or(60.0 * se);
    let traj = run_flow(&spec, &grid, t_final, &Datum::Identity)?;
    let window = (a.fit_start.unwrap_or(t_final / 3.0), a.fit_end.unwrap_or(t_final));
    let fit = estimate_growth(&traj, window)?;
    let predicted = spec.predicted_rate();
    let mut out = Artifact::new(&["t", "sup_norm", "l2_norm"]);
    for (i, &t) in traj.times.iter().enumerate() {
        out.push(vec![t.into(), traj.sup_norm[i].into(), traj.l2_norm[i].into()]);
    }
    out.summary_only = true;
    out.set("block", label);
    out.set_num("xi", spec.frozen.xi);
    out.set_num("eta_1", spec.frozen.eta[0]);
    out.set_num("eta_2", spec.frozen.eta[1]);
    out.set_num("epsilon", p.epsilon());
    out.set_num("dt", dt);
    out.set_num("t_final", t_final);
    out.set_num("fit_start", window.0);
    out.set_num("fit_end", window.1);
    out.set_num("fitted_rate", fit.rate);
    out.set_num("predicted_rate", predicted);
    out.set_num("r_squared", fit.r_squared);
    out.set("reliable", fit.reliable);
    out.set_num("sup_growth", traj.sup_norm.last().copied().unwrap_or(f64::NAN) / traj.sup_norm[0]);
    out.message = format!("fitted rate {:.6} vs predicted {:.6} (R^2 {:.4})", fit.rate, predicted, fit.r_squared);
    Ok(out)
}

fn zakharov(c: &Common, a: &ZakharovArgs) -> Result<Artifact, CliError> {
    let p = params(c)?;
    let (amp, width) = match parse_envelope(&a.envelope)? {
        Envelope::Gaussian { amplitude, width, .. } => (amplitude.re, width),
        Envelope::Constant { .. } => {
            return Err(CliError::Usage("zakharov needs a localised envelope gauss:<amplitude>:<width>".into()))
        }
    };
    let grid = ZakharovGrid::new(a.dim_y, a.grid_n, a.grid_l)?;
    let state = init_from_wkb(gaussian_envelope(amp, width), &p, &grid)?;
    let solver = if a.free { ZakharovSolver::uncoupled(&grid) } else { ZakharovSolver::new(&grid) };
    let rep = run_and_report(&state, &solver, a.t_final, a.dt)?;
    let table = rep.final_state.to_table();
    let mut out = Artifact::new(&table.header.iter().map(String::as_str).collect::<Vec<_>>());
    for (i, pt) in rep.final_state.grid.points().iter().enumerate() {
        let s = &rep.final_state;
        out.push(
            [pt[0], pt[1], pt[2], s.e[i].re, s.e[i].im, s.n[i], s.n_t[i]].into_iter().map(Cell::from).collect(),
        );
    }
    out.summary_only = true;
    out.set_num("t_final", rep.t_final);
    out.set("steps", rep.steps);
    out.set_num("mass_drift", rep.mass_drift);
    out.set_num("amplitude_max", rep.amplitude_max);
    out.set_num("im_residual", rep.im_residual);
    out.message = format!("T = {}, mass drift {:.3e}, max amplitude {:.6}", rep.t_final, rep.mass_drift, rep.amplitude_max);
    Ok(out)
}

fn report(c: &Common, a: &ReportArgs) -> Result<Artifact, CliError> {
    let p = params(c)?;
    let g = growth_rates(&p, a.amplitude)?;
    let entries = classify_raman(&p)?;
    let mut out = Artifact::new(&["pair", "xi", "trace", "rate", "class"]);
    for e in &entries {
        let rate = if e.trace.is_nan() { f64::NAN } else { a.amplitude * rate_from_trace(e.trace.into()) };
        out.push(vec![pair_cell(e.pair), e.xi.into(), e.trace.into(), rate.into(), e.class.to_string().into()]);
    }
    out.set_num("gamma", g.gamma);
    out.set("argmax_pair", format!("{}{}", g.argmax_pair.j(), g.argmax_pair.jp()));
    out.set_num("argmax_xi", g.argmax_xi);
    out.set_num("k_c", k_c(p.theta_e()));
    out.message = format!("{} resonances, gamma = {:.6} at pair {}", entries.len(), g.gamma, g.argmax_pair);
    Ok(out)
}

fn figure(c: &Common, a: &FigureArgs) -> Result<Artifact, CliError> {
    let th = c.theta_e;
    let k = c.k;
    let w = (1.0 + k * k).sqrt();
    match a.id {
        FigureId::TraceVsK => return trace_scan(c, a.k_min, a.k_max, a.samples, a.model),
        FigureId::RateVsK => return rate_scan(c, a.k_min, a.k_max, a.samples, 1.0, a.model),
        _ => {}
    }
    check_samples(a.samples)?;
    if !(th > 0.0) {
        return Err(CliError::Usage(format!("--theta-e must be positive, got {th}")));
    }
    let lam = |j: u8, x: f64| branch(j, th, x, 0.0);
    // a_j(xi) = lambda_j(xi + k) - omega, b_j(xi) = lambda_j(xi); a (j, j') resonance is a_j = b_j'
    let (header, cols, xs): (&[&str], Box<dyn Fn(f64) -> Vec<f64>>, Vec<f64>) = match a.id {
        FigureId::Variety => (
            &["xi", "lambda_1", "lambda_2", "lambda_3", "lambda_4", "lambda_5"],
            Box::new(move |x| (1..=5).map(|j| lam(j, x)).collect()),
            linspace(-5.0, 5.0, a.samples),
        ),
        FigureId::StableResonances => (
            &["xi", "a1", "a3", "a4", "b2", "b3", "b5"],
            Box::new(move |x| {
                vec![lam(1, x + k) - w, lam(3, x + k) - w, lam(4, x + k) - w, lam(2, x), lam(3, x), lam(5, x)]
            }),
            linspace(-k.abs() - 3.0 * w, k.abs() + 3.0 * w, a.samples),
        ),
        FigureId::UnstableResonances => (
            &["xi", "a1", "a2", "b4", "b5"],
            Box::new(move |x| vec![lam(1, x + k) - w, lam(2, x + k) - w, lam(4, x), lam(5, x)]),
            linspace(-k.abs() - 3.0 * w, k.abs() + 3.0 * w, a.samples),
        ),
        FigureId::TraceVsK | FigureId::RateVsK => unreachable!(),
    };
    let mut out = Artifact::new(header);
    for &x in &xs {
        let mut row = vec![Cell::Num(x)];
        row.extend(cols(x).into_iter().map(Cell::Num));
        out.push(row);
    }
    out.message = format!("{} rows for figure {:?}", xs.len(), a.id);
    Ok(out)
}
