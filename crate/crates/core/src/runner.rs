//! Experiment dispatch and result emission.
//!
//! Results are assembled fully in memory and then written in one pass, so a
//! given config always produces byte-identical output. CSV gets a header row;
//! JSON is a single pretty-printed document. Floats rely on the shortest
//! round-trip formatting of `f64`, which preserves all 17 significant digits.

use std::io::Write;

use rand::Rng;
use serde::Serialize;

use crate::config::{
    ConfigError, DecisionPattern, DecisionsParam, Experiment, ExperimentConfig, OutputFormat,
    RegimeParam,
};
use crate::kinematics::{
    run_round_trip, KinematicsError, ParadoxReport, Regime, RoundTripScenario,
};
use crate::optics::{chsh_statistic, malus_probability, sample_pair, ChshEstimate, Outcome,
    OpticsError, PolarizationAngle};
use crate::protocol::{
    signaling_experiment, GhzSource, ProtocolConfig, ProtocolError, SignalingResult,
};
use crate::stream::derive_substream;

/// Substream index reserved for generating a random decision sequence.
const DECISIONS_STREAM_INDEX: u64 = u64::MAX;

#[derive(Debug, thiserror::Error)]
pub enum RunnerError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunnerError {
    /// CLI exit code for this error: 2 parse, 3 validation, 4 domain, 5 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunnerError::Config(ConfigError::Parse(_)) => 2,
            RunnerError::Config(ConfigError::Validation(_)) => 3,
            RunnerError::Domain(_) => 4,
            RunnerError::Io(_) => 5,
        }
    }
}

impl From<KinematicsError> for RunnerError {
    fn from(e: KinematicsError) -> Self {
        RunnerError::Domain(e.to_string())
    }
}

impl From<OpticsError> for RunnerError {
    fn from(e: OpticsError) -> Self {
        RunnerError::Domain(e.to_string())
    }
}

impl From<ProtocolError> for RunnerError {
    fn from(e: ProtocolError) -> Self {
        RunnerError::Domain(e.to_string())
    }
}

fn regime_label(regime: Regime) -> &'static str {
    match regime {
        Regime::SpecialRelativity => "sr",
        Regime::PreferredFrame => "preferred",
    }
}

#[derive(Debug, Serialize)]
struct RoundTripResult {
    regime: &'static str,
    x1: f64,
    v: f64,
    ubar: f64,
    #[serde(flatten)]
    report: ParadoxReport,
}

#[derive(Debug, Serialize)]
struct ScanRow {
    v: f64,
    t1_prime: f64,
    delta_t_prime: f64,
    total: f64,
    paradox: bool,
}

#[derive(Debug, Serialize)]
struct MalusResult {
    alpha: f64,
    beta: f64,
    trials: u64,
    nu1_transmitted: u64,
    /// ν2 transmission frequency conditioned on ν1 transmitted.
    conditioned_nu2_transmission: f64,
    /// Malus-law prediction cos²(α − β) for the conditioned frequency.
    expected_conditioned: f64,
    /// Unconditioned ν2 transmission frequency (should stay at 1/2).
    marginal_nu2_transmission: f64,
}

/// Run the configured experiment and return the emitted bytes.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<u8>, RunnerError> {
    crate::config::validate(config)?;
    let format = config.output.format;
    match &config.experiment {
        Experiment::RoundTrip(p) => {
            let mut results = Vec::new();
            for regime in p.regime.regimes() {
                let scenario = RoundTripScenario::new(p.x1, p.v, p.ubar, regime)?;
                results.push(RoundTripResult {
                    regime: regime_label(regime),
                    x1: p.x1,
                    v: p.v,
                    ubar: p.ubar,
                    report: run_round_trip(&scenario)?,
                });
            }
            match format {
                OutputFormat::Json if results.len() == 1 => to_json(&results[0]),
                OutputFormat::Json => to_json(&results),
                OutputFormat::Csv => {
                    let mut out = Vec::new();
                    writeln!(
                        out,
                        "regime,x1,v,ubar,t1,t1_prime,x1_prime,return_speed,delta_t_prime,total,paradox"
                    )?;
                    for r in &results {
                        writeln!(
                            out,
                            "{},{},{},{},{},{},{},{},{},{},{}",
                            r.regime,
                            r.x1,
                            r.v,
                            r.ubar,
                            r.report.t1,
                            r.report.t1_prime,
                            r.report.x1_prime,
                            r.report.return_speed,
                            r.report.delta_t_prime,
                            r.report.total,
                            r.report.paradox
                        )?;
                    }
                    Ok(out)
                }
            }
        }
        Experiment::KinematicsScan(p) => {
            let regime = match p.regime {
                RegimeParam::Sr => Regime::SpecialRelativity,
                RegimeParam::Preferred => Regime::PreferredFrame,
                RegimeParam::Both => unreachable!("rejected by validate"),
            };
            let mut rows = Vec::new();
            let mut i = 0u64;
            loop {
                let v = p.v_from + i as f64 * p.v_step;
                if v > p.v_to + p.v_step * 1e-9 || v >= 1.0 {
                    break;
                }
                let scenario = RoundTripScenario::new(p.x1, v, p.ubar, regime)?;
                // skip the composition pole v*ubar = 1 in preferred scans
                match run_round_trip(&scenario) {
                    Ok(report) => rows.push(ScanRow {
                        v,
                        t1_prime: report.t1_prime,
                        delta_t_prime: report.delta_t_prime,
                        total: report.total,
                        paradox: report.paradox,
                    }),
                    Err(KinematicsError::CompositionSingularity { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
                i += 1;
            }
            match format {
                OutputFormat::Json => to_json(&rows),
                OutputFormat::Csv => {
                    let mut out = Vec::new();
                    writeln!(out, "v,t1_prime,delta_t_prime,total,paradox")?;
                    for r in &rows {
                        writeln!(
                            out,
                            "{},{},{},{},{}",
                            r.v, r.t1_prime, r.delta_t_prime, r.total, r.paradox
                        )?;
                    }
                    Ok(out)
                }
            }
        }
        Experiment::Malus(p) => {
            let source = p.source.to_source();
            let alpha = PolarizationAngle::new(p.alpha);
            let beta = PolarizationAngle::new(p.beta);
            let mut rng = derive_substream(config.seed, 0);
            let mut nu1_transmitted = 0u64;
            let mut both_transmitted = 0u64;
            let mut nu2_transmitted = 0u64;
            for _ in 0..p.trials {
                let (d1, d2) = sample_pair(&source, alpha, beta, &mut rng);
                if d1.outcome == Outcome::Transmitted {
                    nu1_transmitted += 1;
                    if d2.outcome == Outcome::Transmitted {
                        both_transmitted += 1;
                    }
                }
                if d2.outcome == Outcome::Transmitted {
                    nu2_transmitted += 1;
                }
            }
            let conditioned = if nu1_transmitted > 0 {
                both_transmitted as f64 / nu1_transmitted as f64
            } else {
                f64::NAN
            };
            let result = MalusResult {
                alpha: alpha.radians(),
                beta: beta.radians(),
                trials: p.trials,
                nu1_transmitted,
                conditioned_nu2_transmission: conditioned,
                expected_conditioned: malus_probability(alpha, beta),
                marginal_nu2_transmission: nu2_transmitted as f64 / p.trials as f64,
            };
            match format {
                OutputFormat::Json => to_json(&result),
                OutputFormat::Csv => {
                    let mut out = Vec::new();
                    writeln!(
                        out,
                        "alpha,beta,trials,nu1_transmitted,conditioned_nu2_transmission,expected_conditioned,marginal_nu2_transmission"
                    )?;
                    writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        result.alpha,
                        result.beta,
                        result.trials,
                        result.nu1_transmitted,
                        result.conditioned_nu2_transmission,
                        result.expected_conditioned,
                        result.marginal_nu2_transmission
                    )?;
                    Ok(out)
                }
            }
        }
        Experiment::Chsh(p) => {
            let mut rng = derive_substream(config.seed, 0);
            let estimate: ChshEstimate =
                chsh_statistic(&p.chsh_settings(), &p.source.to_source(), p.trials, &mut rng)?;
            match format {
                OutputFormat::Json => to_json(&estimate),
                OutputFormat::Csv => {
                    let mut out = Vec::new();
                    writeln!(out, "alpha,beta,e_value,pair_trials,s,std_err")?;
                    for c in &estimate.correlators {
                        writeln!(
                            out,
                            "{},{},{},{},{},{}",
                            c.alpha.radians(),
                            c.beta.radians(),
                            c.value,
                            c.trials,
                            estimate.s,
                            estimate.std_err
                        )?;
                    }
                    Ok(out)
                }
            }
        }
        Experiment::GhzSignaling(p) => {
            let protocol = ProtocolConfig::new(p.l, p.t_a, p.t_l, p.ubar, p.trials_per_block)?;
            let source = GhzSource::new(p.p)?;
            let decisions = resolve_decisions(&p.decisions, p.blocks, config.seed);
            // one substream per block so blocks could run concurrently
            // without changing the output
            let mut blocks = Vec::with_capacity(decisions.len());
            let mut correct = 0u64;
            let mut error_bound = 0.0;
            for (index, &decision) in decisions.iter().enumerate() {
                let mut rng = derive_substream(config.seed, index as u64);
                let result: SignalingResult = signaling_experiment(
                    &protocol,
                    &source,
                    p.model.to_model(),
                    &[decision],
                    p.threshold,
                    &mut rng,
                )?;
                let row = result.blocks[0];
                if row.correct {
                    correct += 1;
                }
                error_bound = result.error_bound;
                blocks.push(row);
            }
            let result = SignalingResult {
                accuracy: correct as f64 / blocks.len().max(1) as f64,
                error_bound,
                reachable: crate::protocol::reachable(&protocol),
                blocks,
            };
            match format {
                OutputFormat::Json => to_json(&result),
                OutputFormat::Csv => {
                    let mut out = Vec::new();
                    writeln!(
                        out,
                        "block,decision,agreements,trials,agreement_rate,inferred,correct"
                    )?;
                    for (i, b) in result.blocks.iter().enumerate() {
                        writeln!(
                            out,
                            "{},{},{},{},{},{},{}",
                            i, b.decision, b.agreements, b.trials, b.agreement_rate, b.inferred,
                            b.correct
                        )?;
                    }
                    Ok(out)
                }
            }
        }
    }
}

fn resolve_decisions(param: &DecisionsParam, blocks: u64, seed: u64) -> Vec<bool> {
    match param {
        DecisionsParam::Explicit(d) => d.clone(),
        DecisionsParam::Pattern(pattern) => match pattern {
            DecisionPattern::Alternating => (0..blocks).map(|i| i % 2 == 0).collect(),
            DecisionPattern::AllOn => vec![true; blocks as usize],
            DecisionPattern::AllOff => vec![false; blocks as usize],
            DecisionPattern::Random => {
                let mut rng = derive_substream(seed, DECISIONS_STREAM_INDEX);
                (0..blocks).map(|_| rng.gen_bool(0.5)).collect()
            }
        },
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>, RunnerError> {
    let mut out = serde_json::to_vec_pretty(value)
        .map_err(|e| RunnerError::Domain(format!("serialization failed: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

/// Run an experiment and write its results to the configured sink.
pub fn execute(config: &ExperimentConfig) -> Result<(), RunnerError> {
    let bytes = run_experiment(config)?;
    match &config.output.path {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}
