use emraman::fourier::nodes;
use emraman::resonance::{space_time_resonances, PairLabel};
use emraman::symflow::*;
use emraman::{Frequency, PlasmaParams, C64};

fn params() -> PlasmaParams {
    PlasmaParams::new(1e-4, 0.1, 0.0, 3.0).unwrap()
}

fn root(pair: PairLabel, pick_min: bool) -> f64 {
    let r = space_time_resonances(&params(), pair).unwrap();
    let xs = r.iter().map(|r| r.zeta.xi);
    if pick_min {
        xs.fold(f64::INFINITY, f64::min)
    } else {
        xs.fold(f64::NEG_INFINITY, f64::max)
    }
}

#[test]
fn one_four_growth_matches_trace() {
    let p = params();
    let xi = root(PairLabel::of(1, 4), true);
    let spec = BlockSpec::pair(&p, PairLabel::of(1, 4), &Frequency::axis(xi), &CouplingOptions::default()).unwrap();
    let se = 1e-2;
    let grid = FlowGrid::new(1, 40.0, 256, 0.05 * se, 1e-4).unwrap();
    let traj = run_flow(&spec, &grid, 60.0 * se, &Datum::Identity).unwrap();
    let fit = estimate_growth(&traj, (20.0 * se, 60.0 * se)).unwrap();
    let predicted = (spec.couplings[0].coefficient * spec.couplings[1].coefficient).sqrt().re;
    assert!((fit.rate / predicted - 1.0).abs() < 0.02, "{} vs {}", fit.rate, predicted);
    assert!(fit.reliable);
    // pointwise against the 2x2 closed form
    let m = resonant_ode_oracle(spec.couplings[0].coefficient, spec.couplings[1].coefficient, 1e-4, 5.0 * se);
    let solver_t = traj.times.iter().position(|&t| (t - 5.0 * se).abs() < 1e-12).unwrap();
    let sup = traj.sup_norm[solver_t];
    let want = m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    assert!((sup / want - 1.0).abs() < 1e-6, "{sup} {want}");
}

#[test]
fn one_two_is_bounded() {
    let p = params();
    let xi = root(PairLabel::of(1, 2), false);
    let spec = BlockSpec::pair(&p, PairLabel::of(1, 2), &Frequency::axis(xi), &CouplingOptions::default()).unwrap();
    let se = 1e-2;
    let grid = FlowGrid::new(1, 40.0, 256, 0.05 * se, 1e-4).unwrap();
    let traj = run_flow(&spec, &grid, 10.0 * se, &Datum::Identity).unwrap();
    let s0 = traj.sup_norm[0];
    let l0 = traj.l2_norm[0];
    assert!(traj.sup_norm.iter().all(|&s| s <= 1.05 * s0));
    assert!(traj.l2_norm.iter().all(|&l| l <= l0 * (1.0 + 1e-6)));
}

#[test]
fn zero_coupling_matches_far_field() {
    let spec = BlockSpec::uncoupled(vec![1, 4], vec![0.7, -1.3], vec![[0.4, 0.0], [-0.25, 0.0]]);
    let eps = 1e-4;
    let grid = FlowGrid::new(1, 40.0, 256, 1e-5, eps).unwrap();
    let y = nodes(256, 40.0);
    let datum: Vec<Vec<C64>> = [1.0, -2.0]
        .iter()
        .map(|&c0| y.iter().map(|&v| C64::new((-(v - c0) * (v - c0)).exp(), 0.0)).collect())
        .collect();
    // both shifts are whole numbers of cells at the final time
    let t = 0.3125;
    let traj = run_flow(&spec, &grid, t, &Datum::Fields(datum.clone())).unwrap();
    let zero = vec![vec![C64::new(0.0, 0.0); 256]; 2];
    let oracle = far_field_oracle(&spec, &grid, t, &datum, &zero).unwrap();
    let last = traj.snapshots.last().unwrap();
    let err = oracle.concat().iter().zip(&last.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    assert!(err < 1e-8, "{err}");
    // pure transport: |S^j(t, y)| = |d_j(y - v_j t)|
    let v = 0.4 / 1e-2;
    for (i, &yy) in y.iter().enumerate() {
        let want = (-(emraman::fourier::wrap(yy - v * t, 40.0) - 1.0).powi(2)).exp();
        assert!((last.data[i].norm() - want).abs() < 1e-8);
    }
    assert!(traj.l2_norm.iter().all(|s| (s - traj.l2_norm[0]).abs() < 1e-8));
    let (first, last) = (&traj.component_sup[0], traj.component_sup.last().unwrap());
    assert!(first.iter().zip(last).all(|(a, b)| (a - b).abs() < 1e-8));
}

#[test]
fn source_only_far_field() {
    let spec = BlockSpec::uncoupled(vec![1, 3], vec![0.5, 0.0], vec![[0.0, 0.0], [0.0, 0.0]]);
    let eps = 1e-3;
    let grid = FlowGrid::new(1, 10.0, 16, 1e-3, eps).unwrap();
    let zero = vec![vec![C64::new(0.0, 0.0); 16]; 2];
    let src = vec![vec![C64::new(2.0, 0.0); 16]; 2];
    for t in [1e-4, 1e-2, 0.5] {
        let out = far_field_oracle(&spec, &grid, t, &zero, &src).unwrap();
        assert!(out[0][3].norm() <= 2.0 * (t.min(2.0 * eps / 0.5)) + 1e-12);
        assert!((out[1][5] - C64::new(2.0 * t, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn growth_fit_on_analytic_trajectories() {
    let eps = 1e-4;
    let g0 = 0.8;
    let grid = FlowGrid::new(1, 1.0, 4, 1e-3, eps).unwrap();
    let mk = |bp: f64, bm: f64| {
        let times: Vec<f64> = (0..=200).map(|i| i as f64 * 5e-3).collect();
        let sup = times
            .iter()
            .map(|&t| {
                let m = resonant_ode_oracle(C64::new(bp, 0.0), C64::new(bm, 0.0), eps, t);
                m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
            })
            .collect::<Vec<_>>();
        FlowTrajectory {
            labels: vec![1, 4],
            epsilon: eps,
            n_columns: 2,
            grid,
            times,
            component_sup: vec![vec![]; sup.len()],
            l2_norm: sup.clone(),
            sup_norm: sup,
            snapshots: vec![],
            fit: None,
        }
    };
    let up = mk(g0, g0);
    let fit = estimate_growth(&up, (0.5, 1.0)).unwrap();
    assert!((fit.rate / g0 - 1.0).abs() < 0.01, "{fit:?}");
    let rot = mk(g0, -g0);
    let fit = estimate_growth(&rot, (0.0, 1.0)).unwrap();
    assert!(fit.rate.abs() <= 0.01 * g0);
    assert!(estimate_growth(&rot, (0.0, 0.01)).is_err());
}

#[test]
fn wider_envelopes_grow_faster() {
    let p = params();
    let xi = root(PairLabel::of(1, 4), true);
    let se = 1e-2;
    let grid = FlowGrid::new(1, 80.0, 256, 0.05 * se, 1e-4).unwrap();
    let mut prev = 0.0;
    for w in [0.5, 2.0, 4.0] {
        let opts = CouplingOptions { envelope: Envelope::gaussian(1.0, w), cutoff: None };
        let spec = BlockSpec::pair(&p, PairLabel::of(1, 4), &Frequency::axis(xi), &opts).unwrap();
        let traj = run_flow(&spec, &grid, 40.0 * se, &Datum::Identity).unwrap();
        let rate = estimate_growth(&traj, (20.0 * se, 40.0 * se)).unwrap().rate;
        assert!(rate >= prev - 1e-9, "w = {w}: {rate} < {prev}");
        prev = rate;
    }
}

#[test]
fn cfl_and_support_errors() {
    let spec = BlockSpec::uncoupled(vec![1], vec![0.0], vec![[1.0, 0.0]]);
    let grid = FlowGrid::new(1, 10.0, 64, 1.0, 1e-4).unwrap();
    assert!(matches!(run_flow(&spec, &grid, 1.0, &Datum::Identity), Err(SymflowError::Cfl { .. })));
    let p = params();
    let opts = CouplingOptions { envelope: Envelope::gaussian(1.0, 5.0), cutoff: None };
    let spec = BlockSpec::pair(&p, PairLabel::of(1, 4), &Frequency::axis(-4.79), &opts).unwrap();
    let grid = FlowGrid::new(1, 40.0, 64, 1e-4, 1e-4).unwrap();
    assert!(matches!(run_flow(&spec, &grid, 1e-3, &Datum::Identity), Err(SymflowError::Support { .. })));
    assert!(FlowGrid::new(1, 10.0, 100, 1e-3, 1e-4).is_err());
}
