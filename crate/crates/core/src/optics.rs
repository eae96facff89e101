//! Monte Carlo engine for the two-photon polarization experiment.
//!
//! A source emits photon pairs toward two two-channel polarizers. The first
//! photon (ν1) is always detected first; its detection collapses the pair,
//! forcing the partner into a definite polarization. The second polarizer
//! then sees plain Malus-law transmission. Two source kinds are modeled:
//! the rotationally symmetric entangled state, and a classical mixture that
//! emits both photons along a fixed axis (or its orthogonal) with equal
//! probability. The CHSH statistic separates the two: the entangled state
//! reaches 2√2, any mixture stays at or below 2.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OpticsError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// A polarization direction, canonicalized into [0, π).
///
/// θ and θ + π are the same polarization; a direction, not a vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PolarizationAngle(f64);

impl PolarizationAngle {
    pub fn new(theta: f64) -> Self {
        let mut t = theta.rem_euclid(PI);
        // rem_euclid can return PI when theta is a tiny negative number
        if t >= PI {
            t = 0.0;
        }
        PolarizationAngle(t)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The orthogonal polarization, canonicalized.
    pub fn orthogonal(self) -> Self {
        PolarizationAngle::new(self.0 + FRAC_PI_2)
    }
}

/// Which channel of a two-channel polarizer the photon exits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Transmitted,
    Reflected,
}

/// Photon pair source: the entangled state, or a classical mixture emitting
/// both photons along `axis` or both along `axis + π/2` with probability 1/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairSource {
    Entangled,
    Mixture { axis: PolarizationAngle },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Photon {
    Nu1,
    Nu2,
}

/// One detection at one polarizer. ν1 always carries `order_index` 0: the
/// apparatus guarantees it is detected first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectionRecord {
    pub photon: Photon,
    pub analyzer: PolarizationAngle,
    pub outcome: Outcome,
    pub order_index: u8,
}

/// Malus' law: transmission probability cos²(partner − β).
pub fn malus_probability(partner: PolarizationAngle, beta: PolarizationAngle) -> f64 {
    let c = (partner.radians() - beta.radians()).cos();
    c * c
}

/// Detect ν1 at analyzer angle `alpha` and report the polarization state the
/// partner photon is left in.
///
/// Entangled: the outcome is a fair coin (rotational symmetry) and the
/// partner is forced to `alpha` on transmission, `alpha + π/2` on reflection.
/// Mixture: a hidden pair polarization λ ∈ {axis, axis + π/2} is drawn first;
/// ν1 transmits with probability cos²(λ − α) and the partner keeps λ —
/// the mixture never re-orients it.
pub fn collapse_first<R: Rng + ?Sized>(
    source: &PairSource,
    alpha: PolarizationAngle,
    rng: &mut R,
) -> (Outcome, PolarizationAngle) {
    match source {
        PairSource::Entangled => {
            if rng.gen::<f64>() < 0.5 {
                (Outcome::Transmitted, alpha)
            } else {
                (Outcome::Reflected, alpha.orthogonal())
            }
        }
        PairSource::Mixture { axis } => {
            let lambda = if rng.gen::<f64>() < 0.5 {
                *axis
            } else {
                axis.orthogonal()
            };
            let outcome = if rng.gen::<f64>() < malus_probability(lambda, alpha) {
                Outcome::Transmitted
            } else {
                Outcome::Reflected
            };
            (outcome, lambda)
        }
    }
}

/// Sample one full pair: collapse at polarizer I, then Malus transmission of
/// the partner at polarizer II.
pub fn sample_pair<R: Rng + ?Sized>(
    source: &PairSource,
    alpha: PolarizationAngle,
    beta: PolarizationAngle,
    rng: &mut R,
) -> (DetectionRecord, DetectionRecord) {
    let (outcome1, partner) = collapse_first(source, alpha, rng);
    let outcome2 = if rng.gen::<f64>() < malus_probability(partner, beta) {
        Outcome::Transmitted
    } else {
        Outcome::Reflected
    };
    (
        DetectionRecord {
            photon: Photon::Nu1,
            analyzer: alpha,
            outcome: outcome1,
            order_index: 0,
        },
        DetectionRecord {
            photon: Photon::Nu2,
            analyzer: beta,
            outcome: outcome2,
            order_index: 1,
        },
    )
}

fn single_transmission(lambda: PolarizationAngle, analyzer: PolarizationAngle, o: Outcome) -> f64 {
    let p = malus_probability(lambda, analyzer);
    match o {
        Outcome::Transmitted => p,
        Outcome::Reflected => 1.0 - p,
    }
}

/// Closed-form joint outcome probability; the analytic oracle for the
/// sampling path above.
pub fn joint_probability(
    alpha: PolarizationAngle,
    beta: PolarizationAngle,
    outcomes: (Outcome, Outcome),
    source: &PairSource,
) -> f64 {
    match source {
        PairSource::Entangled => {
            let d = alpha.radians() - beta.radians();
            let (c2, s2) = (d.cos() * d.cos(), d.sin() * d.sin());
            if outcomes.0 == outcomes.1 {
                0.5 * c2
            } else {
                0.5 * s2
            }
        }
        PairSource::Mixture { axis } => {
            let branches = [*axis, axis.orthogonal()];
            branches
                .iter()
                .map(|lambda| {
                    single_transmission(*lambda, alpha, outcomes.0)
                        * single_transmission(*lambda, beta, outcomes.1)
                })
                .sum::<f64>()
                / 2.0
        }
    }
}

/// The four analyzer settings of a CHSH run: (a, a′) for polarizer I,
/// (b, b′) for polarizer II.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSettings {
    pub a: PolarizationAngle,
    pub a_prime: PolarizationAngle,
    pub b: PolarizationAngle,
    pub b_prime: PolarizationAngle,
}

impl ChshSettings {
    /// The standard maximizing set (0°, 45°, 22.5°, 67.5°).
    pub fn optimal() -> Self {
        ChshSettings {
            a: PolarizationAngle::new(0.0),
            a_prime: PolarizationAngle::new(PI / 4.0),
            b: PolarizationAngle::new(PI / 8.0),
            b_prime: PolarizationAngle::new(3.0 * PI / 8.0),
        }
    }

    pub fn from_radians(angles: [f64; 4]) -> Self {
        ChshSettings {
            a: PolarizationAngle::new(angles[0]),
            a_prime: PolarizationAngle::new(angles[1]),
            b: PolarizationAngle::new(angles[2]),
            b_prime: PolarizationAngle::new(angles[3]),
        }
    }
}

/// One estimated correlator E(α, β) = P(same) − P(different).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CorrelatorEstimate {
    pub alpha: PolarizationAngle,
    pub beta: PolarizationAngle,
    pub value: f64,
    pub trials: u64,
}

/// Monte Carlo CHSH estimate with its standard error.
#[derive(Debug, Clone, Serialize)]
pub struct ChshEstimate {
    pub s: f64,
    pub std_err: f64,
    pub correlators: Vec<CorrelatorEstimate>,
}

/// Estimate S = |E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′)| by sampling.
///
/// `trials` is split evenly across the four setting pairs. The standard
/// error uses the normal approximation Var(Ê) = (1 − Ê²)/n per correlator,
/// which is why small trial counts are rejected.
pub fn chsh_statistic<R: Rng + ?Sized>(
    settings: &ChshSettings,
    source: &PairSource,
    trials: u64,
    rng: &mut R,
) -> Result<ChshEstimate, OpticsError> {
    if trials < 1000 {
        return Err(OpticsError::Domain(format!(
            "chsh requires trials >= 1000, got {trials}"
        )));
    }
    let per_pair = trials / 4;
    let pairs = [
        (settings.a, settings.b),
        (settings.a, settings.b_prime),
        (settings.a_prime, settings.b),
        (settings.a_prime, settings.b_prime),
    ];

    let mut correlators = Vec::with_capacity(4);
    let mut variance = 0.0;
    for (alpha, beta) in pairs {
        let mut same = 0u64;
        for _ in 0..per_pair {
            let (d1, d2) = sample_pair(source, alpha, beta, rng);
            if d1.outcome == d2.outcome {
                same += 1;
            }
        }
        let e = 2.0 * (same as f64) / (per_pair as f64) - 1.0;
        variance += (1.0 - e * e) / per_pair as f64;
        correlators.push(CorrelatorEstimate {
            alpha,
            beta,
            value: e,
            trials: per_pair,
        });
    }

    let s = (correlators[0].value - correlators[1].value
        + correlators[2].value
        + correlators[3].value)
        .abs();
    Ok(ChshEstimate {
        s,
        std_err: variance.sqrt(),
        correlators,
    })
}
