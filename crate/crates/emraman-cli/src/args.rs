use clap::{Args, Parser, Subcommand, ValueEnum};
use emraman::resonance::PairLabel;
use serde::Serialize;
use std::path::PathBuf;

/// Euler-Maxwell Raman instability toolkit: spectra, resonances, interaction
/// coefficients, symbolic flows and Zakharov envelopes.
#[derive(Debug, Parser, Serialize)]
#[command(name = "emraman", version)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Common {
    /// WKB wavenumber.
    #[arg(long, global = true, default_value_t = 3.0, allow_negative_numbers = true)]
    pub k: f64,
    /// Electron thermal ratio.
    #[arg(long, global = true, default_value_t = 0.1)]
    pub theta_e: f64,
    /// Ion to electron sound speed ratio.
    #[arg(long, global = true, default_value_t = 0.0)]
    pub alpha_ie: f64,
    #[arg(long, global = true, default_value_t = 1e-4)]
    pub epsilon: f64,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Branches of the characteristic variety on a frequency grid.
    Dispersion(DispersionArgs),
    /// Axis resonances or resonance curves.
    Resonances(ResonanceArgs),
    /// Space-time resonances, thresholds and the separation report.
    Spacetime(SpacetimeArgs),
    /// Traces at the (1,4) and (1,2) resonances as functions of k.
    TraceScan(ScanArgs),
    /// Backward and forward Raman rates as functions of k.
    RateScan(ScanArgs),
    /// Symbolic-flow run with fitted and predicted growth rates.
    Flow(FlowArgs),
    /// Zakharov envelope run.
    Zakharov(ZakharovArgs),
    /// Classification of every space-time resonance.
    Report(ReportArgs),
    /// Data behind one of the standard plots.
    Figure(FigureArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct DispersionArgs {
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub xi_min: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub xi_max: f64,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    /// Transverse modulus |eta|.
    #[arg(long, default_value_t = 0.0)]
    pub r: f64,
    /// Use the eps > 0 eigenvalues (acoustic branch non-zero).
    #[arg(long)]
    pub with_epsilon: bool,
    /// Instead of a grid, check the decomposition at this many seeded random frequencies.
    #[arg(long)]
    pub random: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct ResonanceArgs {
    /// Pair `j,j'`; all ten pairs when omitted.
    #[arg(long)]
    pub pair: Option<PairLabel>,
    /// Emit the resonance curve in the (xi, |eta|) half-plane.
    #[arg(long)]
    pub curve: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub xi_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xi_max: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 400)]
    pub grid_n: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct SpacetimeArgs {
    #[arg(long)]
    pub pair: Option<PairLabel>,
    /// Emit the separation report instead of the resonance list.
    #[arg(long)]
    pub separation: bool,
    #[arg(long, default_value_t = 1e-3)]
    pub delta_res: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Leading-order formulas when theta_e >= 1, matrix traces otherwise.
    Auto,
    Leading,
    Exact,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 1.8)]
    pub k_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub k_max: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
    #[arg(long, value_enum, default_value_t = Model::Auto)]
    pub model: Model,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum TripletArg {
    #[value(name = "234")]
    T234,
    #[value(name = "135")]
    T135,
}

#[derive(Debug, Args, Serialize)]
pub struct FlowArgs {
    #[arg(long, conflicts_with = "triplet", required_unless_present = "triplet")]
    pub pair: Option<PairLabel>,
    #[arg(long, value_enum)]
    pub triplet: Option<TripletArg>,
    /// `auto` or a value.
    #[arg(long, default_value = "auto", allow_negative_numbers = true)]
    pub xi: String,
    /// Transverse frequency `a,b`; defaults to the automatic choice.
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<String>,
    /// `const:<value>` or `gauss:<amplitude>:<width>`.
    #[arg(long, default_value = "const:1")]
    pub envelope: String,
    #[arg(long, default_value_t = 1)]
    pub dim_y: usize,
    #[arg(long, default_value_t = 256)]
    pub grid_n: usize,
    #[arg(long, default_value_t = 40.0)]
    pub grid_l: f64,
    /// Defaults to `min(0.05 sqrt(eps), 0.9 * transport limit)`.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Defaults to `60 sqrt(eps)`.
    #[arg(long)]
    pub t_final: Option<f64>,
    /// Fit window start; defaults to a third of the final time.
    #[arg(long)]
    pub fit_start: Option<f64>,
    #[arg(long)]
    pub fit_end: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct ZakharovArgs {
    #[arg(long, default_value_t = 1)]
    pub dim_y: usize,
    #[arg(long, default_value_t = 128)]
    pub grid_n: usize,
    #[arg(long, default_value_t = 40.0)]
    pub grid_l: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_final: f64,
    /// `gauss:<amplitude>:<width>`.
    #[arg(long, default_value = "gauss:0.1:3")]
    pub envelope: String,
    /// Switch the coupling off.
    #[arg(long)]
    pub free: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FigureId {
    Variety,
    StableResonances,
    UnstableResonances,
    TraceVsK,
    RateVsK,
}

#[derive(Debug, Args, Serialize)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub id: FigureId,
    #[arg(long, default_value_t = 401)]
    pub samples: usize,
    #[arg(long, default_value_t = 1.8)]
    pub k_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub k_max: f64,
    #[arg(long, value_enum, default_value_t = Model::Auto)]
    pub model: Model,
}
