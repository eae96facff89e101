//! Three-party signaling protocol over a GHZ-type photon source.
//!
//! Alice sits a distance `l` from Bob and Charlie, who share one lab and
//! measure simultaneously at `t_L` in the privileged frame. Alice may measure
//! at the earlier instant `t_A`. Under a finite-speed causal influence of
//! speed ū, her measurement reaches Bob and Charlie in time exactly when
//! ū > l/(t_L − t_A) > 1: fast enough to arrive, with the events still
//! space-like so nothing subluminal could have carried the news.
//!
//! When Alice measures and the influence arrives, Bob and Charlie always
//! agree; when she does not (or it cannot arrive), each gets an independent
//! fair outcome and they agree half the time. Comparing agreement rates over
//! blocks of trials therefore reads out Alice's decision — superluminal
//! signaling. The agreement variant breaks this readout: Bob's and Charlie's
//! devices finish an internal exchange before concluding, so they always
//! agree whether or not Alice measured.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ProtocolError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("model/source conflict: LocalOnly requires a pure mixture (p = 0), got p = {p}")]
    ModelSourceConflict { p: f64 },
}

/// Geometry and timing of the protocol, plus the per-block trial count.
#[derive(Debug, Clone, Copy)]
pub struct ProtocolConfig {
    pub l: f64,
    pub t_a: f64,
    pub t_l: f64,
    pub ubar: f64,
    pub trials: u64,
}

impl ProtocolConfig {
    pub fn new(l: f64, t_a: f64, t_l: f64, ubar: f64, trials: u64) -> Result<Self, ProtocolError> {
        if !(l.is_finite() && l > 0.0) {
            return Err(ProtocolError::Domain(format!("distance l must be > 0, got {l}")));
        }
        if !(t_a.is_finite() && t_l.is_finite() && t_l > t_a) {
            return Err(ProtocolError::Domain(format!(
                "measurement instants must satisfy t_L > t_A, got t_A = {t_a}, t_L = {t_l}"
            )));
        }
        if !(ubar.is_finite() && ubar > 1.0) {
            return Err(ProtocolError::Domain(format!(
                "influence speed must satisfy ubar > 1, got {ubar}"
            )));
        }
        if trials == 0 {
            return Err(ProtocolError::Domain("trials must be >= 1".into()));
        }
        Ok(ProtocolConfig { l, t_a, t_l, ubar, trials })
    }
}

/// Source emitting the three-photon state: a fraction `p` in the entangled
/// GHZ state, the rest split evenly between the product states HHH and VVV.
#[derive(Debug, Clone, Copy)]
pub struct GhzSource {
    pub p: f64,
}

impl GhzSource {
    pub fn new(p: f64) -> Result<Self, ProtocolError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(ProtocolError::Domain(format!(
                "GHZ fraction p must lie in [0, 1], got {p}"
            )));
        }
        Ok(GhzSource { p })
    }
}

/// Which causal mechanism connects the distant measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InfluenceModel {
    /// Influences propagate at exactly ū from the measuring site in the
    /// privileged frame.
    FiniteSpeedVCausal,
    /// Bob's and Charlie's devices complete an internal exchange before
    /// concluding; they agree even without Alice's influence.
    AgreementVariant,
    /// Outcomes come solely from the source's hidden product state.
    LocalOnly,
}

/// H/V polarization outcome at a fixed-basis polarizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Polarization {
    H,
    V,
}

fn fair_draw<R: Rng + ?Sized>(rng: &mut R) -> Polarization {
    if rng.gen::<f64>() < 0.5 {
        Polarization::H
    } else {
        Polarization::V
    }
}

/// Outcomes of one trial: Alice's (if she measured), Bob's, Charlie's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub alice: Option<Polarization>,
    pub bob: Polarization,
    pub charlie: Polarization,
}

impl TrialRecord {
    pub fn bc_agree(&self) -> bool {
        self.bob == self.charlie
    }
}

/// Aggregate agreement statistics over one block of trials.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BlockStats {
    pub trials: u64,
    pub agreements: u64,
    pub agreement_rate: f64,
}

/// The reachability condition ū > l/(t_L − t_A) > 1: Alice's influence can
/// arrive before Bob and Charlie measure, while the A and B/C measurement
/// events stay space-like separated.
pub fn reachable(config: &ProtocolConfig) -> bool {
    let required = config.l / (config.t_l - config.t_a);
    config.ubar > required && required > 1.0
}

/// Run one trial under the given source, model, and Alice's decision.
pub fn run_trial<R: Rng + ?Sized>(
    config: &ProtocolConfig,
    source: &GhzSource,
    model: InfluenceModel,
    alice_measures: bool,
    rng: &mut R,
) -> Result<TrialRecord, ProtocolError> {
    if model == InfluenceModel::LocalOnly && source.p > 0.0 {
        return Err(ProtocolError::ModelSourceConflict { p: source.p });
    }

    // Source draw: entangled with probability p, otherwise a hidden product
    // state shared by all three photons.
    let entangled = source.p > 0.0 && rng.gen::<f64>() < source.p;
    if !entangled {
        let lambda = fair_draw(rng);
        return Ok(TrialRecord {
            alice: alice_measures.then_some(lambda),
            bob: lambda,
            charlie: lambda,
        });
    }

    let influence_arrives = alice_measures && reachable(config);
    let record = match model {
        InfluenceModel::FiniteSpeedVCausal => {
            if influence_arrives {
                let a = fair_draw(rng);
                TrialRecord { alice: Some(a), bob: a, charlie: a }
            } else {
                // No influence in time: B and C cannot communicate and each
                // collapses independently.
                TrialRecord {
                    alice: alice_measures.then(|| fair_draw(rng)),
                    bob: fair_draw(rng),
                    charlie: fair_draw(rng),
                }
            }
        }
        InfluenceModel::AgreementVariant => {
            if influence_arrives {
                // B and C's internal exchange settles on Alice's value.
                let a = fair_draw(rng);
                TrialRecord { alice: Some(a), bob: a, charlie: a }
            } else {
                let alice = alice_measures.then(|| fair_draw(rng));
                let shared = fair_draw(rng);
                TrialRecord { alice, bob: shared, charlie: shared }
            }
        }
        InfluenceModel::LocalOnly => unreachable!("p > 0 rejected above, p = 0 handled by the source draw"),
    };
    Ok(record)
}

/// Aggregate `config.trials` independent trials with a fixed Alice decision.
pub fn run_block<R: Rng + ?Sized>(
    config: &ProtocolConfig,
    source: &GhzSource,
    model: InfluenceModel,
    alice_decision: bool,
    rng: &mut R,
) -> Result<BlockStats, ProtocolError> {
    let mut agreements = 0u64;
    for _ in 0..config.trials {
        if run_trial(config, source, model, alice_decision, rng)?.bc_agree() {
            agreements += 1;
        }
    }
    Ok(BlockStats {
        trials: config.trials,
        agreements,
        agreement_rate: agreements as f64 / config.trials as f64,
    })
}

/// Decision read out from one block, with the one-sided Hoeffding bound
/// exp(−2n(τ − ½)²) on misclassifying a no-measurement block.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Inference {
    pub inferred: bool,
    pub error_bound: f64,
}

/// Infer Alice's decision from a block: agreement rate at or above the
/// threshold reads as "she measured".
pub fn infer_decision(stats: &BlockStats, threshold: f64) -> Result<Inference, ProtocolError> {
    if !(threshold > 0.5 && threshold <= 1.0) {
        return Err(ProtocolError::Domain(format!(
            "inference threshold must lie in (0.5, 1], got {threshold}"
        )));
    }
    let margin = threshold - 0.5;
    Ok(Inference {
        inferred: stats.agreement_rate >= threshold,
        error_bound: (-2.0 * stats.trials as f64 * margin * margin).exp(),
    })
}

pub const DEFAULT_THRESHOLD: f64 = 0.75;

/// One row of the signaling experiment table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BlockRow {
    pub decision: bool,
    pub agreements: u64,
    pub trials: u64,
    pub agreement_rate: f64,
    pub inferred: bool,
    pub correct: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignalingResult {
    pub blocks: Vec<BlockRow>,
    pub accuracy: f64,
    pub error_bound: f64,
    pub reachable: bool,
}

/// The full many-Alices protocol: one block per decision, each read out with
/// `infer_decision`, scored against the true decisions.
pub fn signaling_experiment<R: Rng + ?Sized>(
    config: &ProtocolConfig,
    source: &GhzSource,
    model: InfluenceModel,
    decisions: &[bool],
    threshold: f64,
    rng: &mut R,
) -> Result<SignalingResult, ProtocolError> {
    let mut blocks = Vec::with_capacity(decisions.len());
    let mut correct_count = 0u64;
    let mut error_bound = 0.0;
    for &decision in decisions {
        let stats = run_block(config, source, model, decision, rng)?;
        let inference = infer_decision(&stats, threshold)?;
        let correct = inference.inferred == decision;
        if correct {
            correct_count += 1;
        }
        error_bound = inference.error_bound;
        blocks.push(BlockRow {
            decision,
            agreements: stats.agreements,
            trials: stats.trials,
            agreement_rate: stats.agreement_rate,
            inferred: inference.inferred,
            correct,
        });
    }
    Ok(SignalingResult {
        accuracy: correct_count as f64 / decisions.len().max(1) as f64,
        error_bound,
        reachable: reachable(config),
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn reachable_config(trials: u64) -> ProtocolConfig {
        // l/dt = 2.5, ubar = 3: reachable
        ProtocolConfig::new(1.0, 0.0, 0.4, 3.0, trials).unwrap()
    }

    #[test]
    fn reachability_examples() {
        assert!(reachable(&reachable_config(1)));
        // influence too slow
        let slow = ProtocolConfig::new(1.0, 0.0, 0.4, 2.0, 1).unwrap();
        assert!(!reachable(&slow));
        // events not space-like
        let timelike = ProtocolConfig::new(1.0, 0.0, 1.5, 3.0, 1).unwrap();
        assert!(!reachable(&timelike));
    }

    #[test]
    fn config_validation() {
        assert!(ProtocolConfig::new(0.0, 0.0, 1.0, 3.0, 1).is_err());
        assert!(ProtocolConfig::new(1.0, 1.0, 1.0, 3.0, 1).is_err());
        assert!(ProtocolConfig::new(1.0, 0.0, 1.0, 1.0, 1).is_err());
        assert!(ProtocolConfig::new(1.0, 0.0, 1.0, 3.0, 0).is_err());
        assert!(GhzSource::new(1.1).is_err());
        assert!(GhzSource::new(-0.1).is_err());
    }

    #[test]
    fn local_only_rejects_entangled_fraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cfg = reachable_config(1);
        let err = run_trial(
            &cfg,
            &GhzSource::new(0.5).unwrap(),
            InfluenceModel::LocalOnly,
            false,
            &mut rng,
        )
        .unwrap_err();
        assert_eq!(err, ProtocolError::ModelSourceConflict { p: 0.5 });
    }

    #[test]
    fn vcausal_reachable_alice_forces_perfect_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let cfg = reachable_config(100_000);
        let src = GhzSource::new(1.0).unwrap();
        let stats =
            run_block(&cfg, &src, InfluenceModel::FiniteSpeedVCausal, true, &mut rng).unwrap();
        assert_eq!(stats.agreements, stats.trials);
        assert_eq!(stats.agreement_rate, 1.0);
    }

    #[test]
    fn vcausal_no_alice_agreement_is_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let cfg = reachable_config(100_000);
        let src = GhzSource::new(1.0).unwrap();
        let stats =
            run_block(&cfg, &src, InfluenceModel::FiniteSpeedVCausal, false, &mut rng).unwrap();
        assert!((stats.agreement_rate - 0.5).abs() < 0.006, "{}", stats.agreement_rate);
    }

    #[test]
    fn pure_mixture_always_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = reachable_config(10_000);
        let src = GhzSource::new(0.0).unwrap();
        for decision in [true, false] {
            let stats =
                run_block(&cfg, &src, InfluenceModel::LocalOnly, decision, &mut rng).unwrap();
            assert_eq!(stats.agreement_rate, 1.0);
        }
    }

    #[test]
    fn unreachable_geometry_hides_alice() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let cfg = ProtocolConfig::new(1.0, 0.0, 0.4, 2.0, 100_000).unwrap();
        let src = GhzSource::new(1.0).unwrap();
        let stats =
            run_block(&cfg, &src, InfluenceModel::FiniteSpeedVCausal, true, &mut rng).unwrap();
        assert!((stats.agreement_rate - 0.5).abs() < 0.01, "{}", stats.agreement_rate);
    }

    #[test]
    fn agreement_variant_always_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let cfg = reachable_config(1000);
        let src = GhzSource::new(1.0).unwrap();
        for decision in [true, false] {
            let stats =
                run_block(&cfg, &src, InfluenceModel::AgreementVariant, decision, &mut rng)
                    .unwrap();
            assert_eq!(stats.agreements, 1000);
        }
    }

    #[test]
    fn inference_rules() {
        let stats = BlockStats { trials: 1000, agreements: 1000, agreement_rate: 1.0 };
        let inf = infer_decision(&stats, 0.75).unwrap();
        assert!(inf.inferred);
        assert!((inf.error_bound - (-125.0f64).exp()).abs() < 1e-60);

        let stats = BlockStats { trials: 1000, agreements: 503, agreement_rate: 0.503 };
        assert!(!infer_decision(&stats, 0.75).unwrap().inferred);

        // boundary inclusive
        let stats = BlockStats { trials: 1000, agreements: 750, agreement_rate: 0.75 };
        assert!(infer_decision(&stats, 0.75).unwrap().inferred);

        assert!(infer_decision(&stats, 0.5).is_err());
        assert!(infer_decision(&stats, 1.01).is_err());
    }

    #[test]
    fn signaling_experiment_reads_out_decisions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = reachable_config(1000);
        let src = GhzSource::new(1.0).unwrap();
        let decisions: Vec<bool> = (0..20).map(|i| i % 2 == 0).collect();
        let result = signaling_experiment(
            &cfg,
            &src,
            InfluenceModel::FiniteSpeedVCausal,
            &decisions,
            DEFAULT_THRESHOLD,
            &mut rng,
        )
        .unwrap();
        assert_eq!(result.accuracy, 1.0);
        assert!(result.reachable);
    }

    #[test]
    fn agreement_variant_defeats_readout() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = reachable_config(1000);
        let src = GhzSource::new(1.0).unwrap();
        let decisions: Vec<bool> = (0..20).map(|i| i % 2 == 0).collect();
        let result = signaling_experiment(
            &cfg,
            &src,
            InfluenceModel::AgreementVariant,
            &decisions,
            DEFAULT_THRESHOLD,
            &mut rng,
        )
        .unwrap();
        // every block reads "measured"; alternating decisions give 50%
        assert!(result.blocks.iter().all(|b| b.inferred));
        assert_eq!(result.accuracy, 0.5);
    }

    #[test]
    fn determinism_same_seed_same_output() {
        let cfg = reachable_config(500);
        let src = GhzSource::new(0.6).unwrap();
        let decisions = [true, false, true];
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            signaling_experiment(
                &cfg,
                &src,
                InfluenceModel::FiniteSpeedVCausal,
                &decisions,
                DEFAULT_THRESHOLD,
                &mut rng,
            )
            .unwrap()
        };
        let (a, b) = (run(1234), run(1234));
        assert_eq!(
            a.blocks.iter().map(|r| r.agreements).collect::<Vec<_>>(),
            b.blocks.iter().map(|r| r.agreements).collect::<Vec<_>>()
        );
        assert_eq!(a.accuracy, b.accuracy);
    }
}
