mod args;
mod commands;
mod output;

use args::Cli;
use clap::Parser;
use std::io::Write;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag values; exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Parameters outside the regime where the computation makes sense; exit code 1.
    #[error("{0}")]
    Regime(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Regime(_) | CliError::Io { .. } => 1,
        }
    }
}

impl From<emraman::ParamError> for CliError {
    fn from(e: emraman::ParamError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<emraman::resonance::ResonanceError> for CliError {
    fn from(e: emraman::resonance::ResonanceError) -> Self {
        use emraman::resonance::ResonanceError as E;
        match e {
            E::Regime { .. } => CliError::Regime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<emraman::interaction::InteractionError> for CliError {
    fn from(e: emraman::interaction::InteractionError) -> Self {
        use emraman::interaction::InteractionError as E;
        match e {
            E::Resonance(r) => r.into(),
            E::Amplitude(_) => CliError::Usage(e.to_string()),
            _ => CliError::Regime(e.to_string()),
        }
    }
}

impl From<emraman::spectral::SpectralError> for CliError {
    fn from(e: emraman::spectral::SpectralError) -> Self {
        CliError::Regime(e.to_string())
    }
}

impl From<emraman::symflow::SymflowError> for CliError {
    fn from(e: emraman::symflow::SymflowError) -> Self {
        use emraman::symflow::SymflowError as E;
        match e {
            E::Resonance(r) => r.into(),
            E::NonPositiveNorm(_) => CliError::Regime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<emraman::zakharov::ZakharovError> for CliError {
    fn from(e: emraman::zakharov::ZakharovError) -> Self {
        use emraman::zakharov::ZakharovError as E;
        match e {
            E::MassDrift { .. } | E::BlowUp { .. } => CliError::Regime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let config = serde_json::to_value(cli).expect("config is plain data");
    eprintln!("config {config}");
    let art = commands::run(cli)?;
    let text = art.render(cli.common.format, &config);
    match &cli.common.output {
        Some(path) => std::fs::write(path, &text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source })?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    return Err(CliError::Io { path: "stdout".into(), source: e })
                }
                _ => {}
            }
        }
    }
    Ok(art.message)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(msg) => {
            eprintln!("{msg}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
