use std::process::{Command, Output};

fn emraman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emraman")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let o = emraman(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(s: &str) -> Self {
        let mut lines = s.lines().filter(|l| !l.starts_with('#'));
        let header = lines.next().unwrap().split(',').map(String::from).collect();
        let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
        Csv { header, rows }
    }

    fn col(&self, name: &str) -> Vec<f64> {
        let i = self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i].parse().unwrap()).collect()
    }
}

#[test]
fn rate_scan_unit_theta() {
    let out = stdout(&["rate-scan", "--k-min", "1.8", "--k-max", "3", "--theta-e", "1", "--samples", "50"]);
    let csv = Csv::parse(&out);
    assert_eq!(csv.header, ["k", "gamma_backward", "gamma_forward"]);
    assert_eq!(csv.rows.len(), 50);
    let k = csv.col("k");
    let b = csv.col("gamma_backward");
    assert!((k[49] - 3.0).abs() < 1e-12);
    assert!((b[49] - 1.6720).abs() < 1e-4, "{}", b[49]);
}

#[test]
fn resonances_small_theta() {
    let csv = Csv::parse(&stdout(&["resonances", "--k", "3", "--theta-e", "0.01", "--pair", "1,4"]));
    let xi = csv.col("xi");
    assert_eq!(xi.len(), 2);
    assert!((xi[0] + 4.9171).abs() < 5e-3 && (xi[1] + 1.0829).abs() < 5e-3, "{xi:?}");
    assert!(csv.col("phase_residual").iter().all(|r| *r < 1e-10));
}

#[test]
fn flow_fit_matches_prediction() {
    let out = stdout(&["flow", "--pair", "1,4", "--xi", "auto", "--epsilon", "1e-4", "--envelope", "const:1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let fit = v["fitted_rate"].as_f64().unwrap();
    let pred = v["predicted_rate"].as_f64().unwrap();
    assert!((fit / pred - 1.0).abs() < 0.02, "{fit} {pred}");
}

#[test]
fn exit_codes() {
    let below = emraman(&["rate-scan", "--k-min", "1.0", "--k-max", "3", "--theta-e", "1"]);
    assert_eq!(below.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&below.stderr).contains("threshold"));
    assert_eq!(emraman(&["report", "--k", "1"]).status.code(), Some(1));
    assert_eq!(emraman(&["rate-scan", "--nope"]).status.code(), Some(2));
    assert_eq!(emraman(&["figure", "fig-42"]).status.code(), Some(2));
    assert_eq!(emraman(&["report", "--theta-e", "1.5"]).status.code(), Some(2));
    assert_eq!(emraman(&["flow", "--pair", "1,4", "--envelope", "box:2"]).status.code(), Some(2));
    assert_eq!(emraman(&["flow", "--pair", "1,4", "--eta", "1,0", "--dt", "1"]).status.code(), Some(2));
}

#[test]
fn csv_is_deterministic_and_commented() {
    let dir = std::env::temp_dir().join(format!("emraman-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // the output path is part of the echoed config, so both runs use the same one
    let run = |name: &str| {
        let path = dir.join(name);
        let p = path.to_str().unwrap();
        assert!(emraman(&["report", "--k", "4", "--output", p]).status.success());
        std::fs::read(&path).unwrap()
    };
    let a = run("out.csv");
    let b = run("out.csv");
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# emraman "));
    assert!(lines.next().unwrap().starts_with("# config {"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn json_rows_are_flat() {
    let out = stdout(&["spacetime", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        let o = r.as_object().unwrap();
        assert!(o.values().all(|x| !x.is_object() && !x.is_array()));
        assert!(o.contains_key("pair") && o.contains_key("trace"));
    }
}

#[test]
fn figure_variety() {
    let th = 0.05f64.sqrt().to_string();
    let csv = Csv::parse(&stdout(&["figure", "variety", "--theta-e", &th]));
    let xi = csv.col("xi");
    assert_eq!((xi[0], *xi.last().unwrap()), (-5.0, 5.0));
    assert!((csv.col("lambda_2").last().unwrap() - 1.5).abs() < 1e-10);
    assert_eq!(csv.header.len(), 6);
}

#[test]
fn figure_trace_signs() {
    let csv = Csv::parse(&stdout(&["figure", "trace-vs-k", "--theta-e", "1", "--k-max", "20"]));
    for c in ["tr14_minus", "tr14_plus"] {
        assert!(csv.col(c).iter().all(|&t| t > 0.0));
    }
    for c in ["tr12_plus", "tr12_minus"] {
        assert!(csv.col(c).iter().all(|&t| t < 0.0));
    }
}

#[test]
fn figure_rates_ordered() {
    for th in ["1", "0.1"] {
        let csv = Csv::parse(&stdout(&["figure", "rate-vs-k", "--theta-e", th, "--samples", "60"]));
        let b = csv.col("gamma_backward");
        let f = csv.col("gamma_forward");
        assert!(b.iter().zip(&f).all(|(b, f)| b >= f));
    }
}

#[test]
fn resonance_figures_cross_at_roots() {
    // a1 - b4 changes sign at each (1,4) root
    let csv = Csv::parse(&stdout(&["figure", "unstable-resonances", "--theta-e", "0.01", "--samples", "2001"]));
    let d: Vec<f64> = csv.col("a1").iter().zip(csv.col("b4")).map(|(a, b)| a - b).collect();
    let crossings = d.windows(2).filter(|w| (w[0] < 0.0) != (w[1] < 0.0)).count();
    assert_eq!(crossings, 2);
}

#[test]
fn seeded_spectral_check() {
    let a = stdout(&["dispersion", "--random", "50", "--seed", "11"]);
    let b = stdout(&["dispersion", "--random", "50", "--seed", "11"]);
    assert_eq!(a, b);
    let csv = Csv::parse(&a);
    assert!(csv.col("residual").iter().all(|r| *r < 1e-10));
    let c = stdout(&["dispersion", "--random", "50", "--seed", "12"]);
    assert_ne!(a, c);
}

#[test]
fn zakharov_summary() {
    let out = stdout(&["zakharov", "--grid-n", "64", "--t-final", "0.1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["mass_drift"].as_f64().unwrap() < 1e-8);
    assert!((v["amplitude_max"].as_f64().unwrap() - 0.1).abs() < 1e-12);
}
