//! JSON experiment configs: schema, parsing, validation.
//!
//! A config names a seed, exactly one experiment, and an output sink.
//! Unknown fields are rejected so typos fail loudly instead of silently
//! running a default. Parsing and validation are separate failures: a
//! `Parse` error means the document is not a schema instance, a
//! `Validation` error names the module invariant the values violate.

use serde::Deserialize;
use thiserror::Error;

use crate::kinematics::{Regime, RoundTripScenario};
use crate::optics::{ChshSettings, PairSource, PolarizationAngle};
use crate::protocol::{GhzSource, InfluenceModel, ProtocolConfig};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("validation error: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub experiment: Experiment,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Experiment {
    RoundTrip(RoundTripParams),
    KinematicsScan(KinematicsScanParams),
    Malus(MalusParams),
    Chsh(ChshParams),
    GhzSignaling(GhzParams),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeParam {
    Sr,
    Preferred,
    /// Convenience: run both regimes and emit two reports.
    Both,
}

impl RegimeParam {
    pub fn regimes(self) -> Vec<Regime> {
        match self {
            RegimeParam::Sr => vec![Regime::SpecialRelativity],
            RegimeParam::Preferred => vec![Regime::PreferredFrame],
            RegimeParam::Both => vec![Regime::SpecialRelativity, Regime::PreferredFrame],
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundTripParams {
    pub x1: f64,
    pub v: f64,
    pub ubar: f64,
    pub regime: RegimeParam,
}

fn default_x1() -> f64 {
    1.0
}

fn default_scan_regime() -> RegimeParam {
    RegimeParam::Sr
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KinematicsScanParams {
    pub ubar: f64,
    pub v_from: f64,
    pub v_to: f64,
    pub v_step: f64,
    #[serde(default = "default_x1")]
    pub x1: f64,
    #[serde(default = "default_scan_regime")]
    pub regime: RegimeParam,
}

/// Photon-pair source selector shared by the optics experiments.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceParam {
    Entangled,
    Mixture { axis: f64 },
}

impl SourceParam {
    pub fn to_source(self) -> PairSource {
        match self {
            SourceParam::Entangled => PairSource::Entangled,
            SourceParam::Mixture { axis } => PairSource::Mixture {
                axis: PolarizationAngle::new(axis),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MalusParams {
    pub source: SourceParam,
    /// Polarizer I angle, radians.
    pub alpha: f64,
    /// Polarizer II angle, radians.
    pub beta: f64,
    pub trials: u64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChshParams {
    pub source: SourceParam,
    /// (a, a′, b, b′) in radians; omit for the standard maximizing set.
    pub settings: Option<[f64; 4]>,
    pub trials: u64,
}

impl ChshParams {
    pub fn chsh_settings(&self) -> ChshSettings {
        match self.settings {
            Some(angles) => ChshSettings::from_radians(angles),
            None => ChshSettings::optimal(),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelParam {
    FiniteSpeedVCausal,
    AgreementVariant,
    LocalOnly,
}

impl ModelParam {
    pub fn to_model(self) -> InfluenceModel {
        match self {
            ModelParam::FiniteSpeedVCausal => InfluenceModel::FiniteSpeedVCausal,
            ModelParam::AgreementVariant => InfluenceModel::AgreementVariant,
            ModelParam::LocalOnly => InfluenceModel::LocalOnly,
        }
    }
}

/// Alice's per-block decisions: a named pattern or an explicit list.
#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", untagged)]
pub enum DecisionsParam {
    Pattern(DecisionPattern),
    Explicit(Vec<bool>),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionPattern {
    Alternating,
    Random,
    AllOn,
    AllOff,
}

fn default_threshold() -> f64 {
    crate::protocol::DEFAULT_THRESHOLD
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GhzParams {
    pub l: f64,
    pub t_a: f64,
    pub t_l: f64,
    pub ubar: f64,
    pub p: f64,
    pub model: ModelParam,
    pub trials_per_block: u64,
    pub blocks: u64,
    pub decisions: DecisionsParam,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default)]
    pub format: OutputFormat,
    /// Output file; standard output when absent.
    #[serde(default)]
    pub path: Option<String>,
}

/// Parse a JSON document into a validated config.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let config: ExperimentConfig = serde_json::from_str(text)?;
    validate(&config)?;
    Ok(config)
}

fn invariant(msg: impl std::fmt::Display) -> ConfigError {
    ConfigError::Validation(msg.to_string())
}

/// Check every module-level invariant before any execution.
pub fn validate(config: &ExperimentConfig) -> Result<(), ConfigError> {
    match &config.experiment {
        Experiment::RoundTrip(p) => {
            for regime in p.regime.regimes() {
                RoundTripScenario::new(p.x1, p.v, p.ubar, regime).map_err(invariant)?;
            }
        }
        Experiment::KinematicsScan(p) => {
            if !(p.v_step > 0.0 && p.v_step.is_finite()) {
                return Err(invariant("scan step must be > 0"));
            }
            if !(0.0 < p.v_from && p.v_from <= p.v_to && p.v_to < 1.0) {
                return Err(invariant(format!(
                    "scan range must satisfy 0 < v_from <= v_to < 1, got [{}, {}]",
                    p.v_from, p.v_to
                )));
            }
            if matches!(p.regime, RegimeParam::Both) {
                return Err(invariant("scan runs a single regime; use sr or preferred"));
            }
            RoundTripScenario::new(p.x1, p.v_from, p.ubar, Regime::SpecialRelativity)
                .map_err(invariant)?;
        }
        Experiment::Malus(p) => {
            if p.trials == 0 {
                return Err(invariant("malus trials must be >= 1"));
            }
        }
        Experiment::Chsh(p) => {
            if p.trials < 1000 {
                return Err(invariant(format!(
                    "chsh requires trials >= 1000, got {}",
                    p.trials
                )));
            }
        }
        Experiment::GhzSignaling(p) => {
            ProtocolConfig::new(p.l, p.t_a, p.t_l, p.ubar, p.trials_per_block)
                .map_err(invariant)?;
            GhzSource::new(p.p).map_err(invariant)?;
            if p.blocks == 0 {
                return Err(invariant("blocks must be >= 1"));
            }
            if !(p.threshold > 0.5 && p.threshold <= 1.0) {
                return Err(invariant(format!(
                    "inference threshold must lie in (0.5, 1], got {}",
                    p.threshold
                )));
            }
            if let DecisionsParam::Explicit(decisions) = &p.decisions {
                if decisions.len() as u64 != p.blocks {
                    return Err(invariant(format!(
                        "decisions length {} must equal blocks {}",
                        decisions.len(),
                        p.blocks
                    )));
                }
            }
            if matches!(p.model, ModelParam::LocalOnly) && p.p > 0.0 {
                return Err(invariant(
                    "local_only model requires a pure mixture (p = 0)",
                ));
            }
        }
    }
    Ok(())
}
