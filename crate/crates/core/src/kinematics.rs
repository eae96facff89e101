//! 1+1 dimensional special-relativistic kinematics in natural units (c = 1).
//!
//! Covers Lorentz boosts between a privileged frame S and a moving frame S′,
//! relativistic velocity composition, and the superluminal round-trip signal
//! construction that decides whether a causal paradox (a return signal
//! arriving before the original emission) is possible. Two regimes are
//! supported: plain special relativity, where the return signal travels at
//! −ū in the moving frame, and a preferred-frame model, where the signal
//! speed ū is constant in S and the return leg must be composed into S′.
//!
//! All operations are pure; every speed is a dimensionless multiple of c.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for the velocity-composition pole check.
pub const COMPOSITION_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum KinematicsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("frame mismatch: expected event in {expected:?}, got {found:?}")]
    FrameMismatch { expected: Frame, found: Frame },
    #[error("velocity composition singular: |1 - v*u| < 1e-12 (v = {v}, u = {u})")]
    CompositionSingularity { v: f64, u: f64 },
}

/// Frame tag for events: the privileged frame S or the moving frame S′.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Frame {
    S,
    SPrime,
}

/// A subluminal boost parameter, |β| < 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct FrameVelocity(f64);

impl FrameVelocity {
    pub fn new(beta: f64) -> Result<Self, KinematicsError> {
        if !beta.is_finite() || beta.abs() >= 1.0 {
            return Err(KinematicsError::Domain(format!(
                "frame speed must satisfy |v| < 1, got {beta}"
            )));
        }
        Ok(FrameVelocity(beta))
    }

    pub fn beta(self) -> f64 {
        self.0
    }
}

/// A strictly superluminal signal speed, β > 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SignalSpeed(f64);

impl SignalSpeed {
    pub fn new(beta: f64) -> Result<Self, KinematicsError> {
        if !beta.is_finite() || beta <= 1.0 {
            return Err(KinematicsError::Domain(format!(
                "signal speed must satisfy ubar > 1, got {beta}"
            )));
        }
        Ok(SignalSpeed(beta))
    }

    pub fn beta(self) -> f64 {
        self.0
    }
}

/// A spacetime point (x, t) tagged with the frame its coordinates refer to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Event {
    pub x: f64,
    pub t: f64,
    pub frame: Frame,
}

impl Event {
    pub fn new(x: f64, t: f64, frame: Frame) -> Result<Self, KinematicsError> {
        if !x.is_finite() || !t.is_finite() {
            return Err(KinematicsError::Domain(format!(
                "event coordinates must be finite, got (x = {x}, t = {t})"
            )));
        }
        Ok(Event { x, t, frame })
    }
}

/// Lorentz factor γ = 1/√(1 − v²).
pub fn gamma(v: FrameVelocity) -> f64 {
    1.0 / (1.0 - v.beta() * v.beta()).sqrt()
}

/// Boost an event from S to S′: x′ = γ(x − vt), t′ = γ(t − vx).
pub fn boost_to_prime(e: Event, v: FrameVelocity) -> Result<Event, KinematicsError> {
    if e.frame != Frame::S {
        return Err(KinematicsError::FrameMismatch {
            expected: Frame::S,
            found: e.frame,
        });
    }
    let g = gamma(v);
    Ok(Event {
        x: g * (e.x - v.beta() * e.t),
        t: g * (e.t - v.beta() * e.x),
        frame: Frame::SPrime,
    })
}

/// Boost an event from S′ back to S: x = γ(x′ + vt′), t = γ(t′ + vx′).
pub fn boost_from_prime(e: Event, v: FrameVelocity) -> Result<Event, KinematicsError> {
    if e.frame != Frame::SPrime {
        return Err(KinematicsError::FrameMismatch {
            expected: Frame::SPrime,
            found: e.frame,
        });
    }
    let g = gamma(v);
    Ok(Event {
        x: g * (e.x + v.beta() * e.t),
        t: g * (e.t + v.beta() * e.x),
        frame: Frame::S,
    })
}

/// Velocity composition into S′: u′ = (u − v)/(1 − vu).
///
/// The pole at vu = 1 is an explicit error; near it the transformed speed
/// diverges and a silent infinity would corrupt downstream scans.
pub fn compose_velocity_to_prime(u: f64, v: FrameVelocity) -> Result<f64, KinematicsError> {
    let denom = 1.0 - v.beta() * u;
    if denom.abs() < COMPOSITION_EPS {
        return Err(KinematicsError::CompositionSingularity { v: v.beta(), u });
    }
    Ok((u - v.beta()) / denom)
}

/// Velocity composition back into S: u = (u′ + v)/(1 + vu′).
pub fn compose_velocity_from_prime(u_prime: f64, v: FrameVelocity) -> Result<f64, KinematicsError> {
    let denom = 1.0 + v.beta() * u_prime;
    if denom.abs() < COMPOSITION_EPS {
        return Err(KinematicsError::CompositionSingularity {
            v: v.beta(),
            u: u_prime,
        });
    }
    Ok((u_prime + v.beta()) / denom)
}

/// Arrival time t1 = x1/ū of a superluminal signal emitted from the origin of S.
pub fn signal_arrival_time(x1: f64, ubar: SignalSpeed) -> Result<f64, KinematicsError> {
    if !x1.is_finite() || x1 <= 0.0 {
        return Err(KinematicsError::Domain(format!(
            "target position must satisfy x1 > 0, got {x1}"
        )));
    }
    Ok(x1 / ubar.beta())
}

/// How the return leg of the round trip behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// No privileged frame: the return signal travels at −ū in S′.
    SpecialRelativity,
    /// The signal speed ū is constant in the privileged frame S; the return
    /// speed seen in S′ follows from velocity composition.
    PreferredFrame,
}

/// Inputs to the superluminal round-trip construction.
#[derive(Debug, Clone, Copy)]
pub struct RoundTripScenario {
    pub x1: f64,
    pub v: FrameVelocity,
    pub ubar: SignalSpeed,
    pub regime: Regime,
}

impl RoundTripScenario {
    pub fn new(
        x1: f64,
        v: f64,
        ubar: f64,
        regime: Regime,
    ) -> Result<Self, KinematicsError> {
        if !x1.is_finite() || x1 <= 0.0 {
            return Err(KinematicsError::Domain(format!(
                "target position must satisfy x1 > 0, got {x1}"
            )));
        }
        let v = FrameVelocity::new(v)?;
        if v.beta() <= 0.0 {
            return Err(KinematicsError::Domain(format!(
                "frame speed must satisfy 0 < v < 1, got {}",
                v.beta()
            )));
        }
        Ok(RoundTripScenario {
            x1,
            v,
            ubar: SignalSpeed::new(ubar)?,
            regime,
        })
    }
}

/// Full derivation trace of one round trip.
///
/// `paradox` is true exactly when `total < 0` (strict): the return signal
/// reaches the S′ origin before the outgoing signal was sent. An exactly
/// critical round trip (`total == 0`) is not a paradox; callers can apply
/// their own margin to the raw `total`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParadoxReport {
    pub t1: f64,
    pub t1_prime: f64,
    pub x1_prime: f64,
    pub return_speed: f64,
    pub delta_t_prime: f64,
    pub total: f64,
    pub paradox: bool,
}

/// Run the round-trip construction: outgoing signal at ū in S, return signal
/// from the comoving point x1′, paradox iff the total S′ elapsed time is
/// negative.
pub fn run_round_trip(s: &RoundTripScenario) -> Result<ParadoxReport, KinematicsError> {
    let g = gamma(s.v);
    let v = s.v.beta();
    let u = s.ubar.beta();

    let t1 = signal_arrival_time(s.x1, s.ubar)?;
    let t1_prime = g * (1.0 - v * u) * s.x1 / u;
    let x1_prime = g * (1.0 - v / u) * s.x1;

    let (return_speed, delta_t_prime) = match s.regime {
        Regime::SpecialRelativity => (-u, x1_prime / u),
        Regime::PreferredFrame => {
            // Return signal travels at -ubar in S; its S' speed follows
            // from composition.
            let u_prime = compose_velocity_to_prime(-u, s.v)?;
            (u_prime, x1_prime / -u_prime)
        }
    };

    let total = t1_prime + delta_t_prime;
    Ok(ParadoxReport {
        t1,
        t1_prime,
        x1_prime,
        return_speed,
        delta_t_prime,
        total,
        paradox: total < 0.0,
    })
}

/// Frame speed above which the special-relativity round trip turns paradoxical:
/// v_min = 2ū/(1 + ū²). Always strictly below 1.
pub fn paradox_threshold(ubar: SignalSpeed) -> f64 {
    let u = ubar.beta();
    2.0 * u / (1.0 + u * u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fv(beta: f64) -> FrameVelocity {
        FrameVelocity::new(beta).unwrap()
    }

    fn ss(beta: f64) -> SignalSpeed {
        SignalSpeed::new(beta).unwrap()
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(fv(0.0)), 1.0);
        assert_abs_diff_eq!(gamma(fv(0.6)), 1.25, epsilon = 1e-15);
        assert_abs_diff_eq!(gamma(fv(0.8)), 1.0 / 0.6, epsilon = 1e-15);
    }

    #[test]
    fn velocity_constructors_reject_out_of_range() {
        assert!(FrameVelocity::new(1.0).is_err());
        assert!(FrameVelocity::new(-1.5).is_err());
        assert!(FrameVelocity::new(f64::NAN).is_err());
        assert!(SignalSpeed::new(1.0).is_err());
        assert!(SignalSpeed::new(0.5).is_err());
    }

    #[test]
    fn boost_examples() {
        let e = Event::new(1.0, 0.5, Frame::S).unwrap();
        let id = boost_to_prime(e, fv(0.0)).unwrap();
        assert_eq!((id.x, id.t, id.frame), (1.0, 0.5, Frame::SPrime));

        // gamma = 5/3 at v = 0.8
        let b = boost_to_prime(e, fv(0.8)).unwrap();
        assert_abs_diff_eq!(b.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.t, -0.5, epsilon = 1e-12);

        let back = boost_from_prime(b, fv(0.8)).unwrap();
        assert_abs_diff_eq!(back.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(back.t, 0.5, epsilon = 1e-12);
        assert_eq!(back.frame, Frame::S);

        let origin = Event::new(0.0, 0.0, Frame::S).unwrap();
        let o = boost_to_prime(origin, fv(0.9)).unwrap();
        assert_eq!((o.x, o.t), (0.0, 0.0));
    }

    #[test]
    fn boost_rejects_wrong_frame() {
        let e = Event::new(1.0, 0.5, Frame::SPrime).unwrap();
        assert!(matches!(
            boost_to_prime(e, fv(0.5)),
            Err(KinematicsError::FrameMismatch { .. })
        ));
        let e = Event::new(1.0, 0.5, Frame::S).unwrap();
        assert!(boost_from_prime(e, fv(0.5)).is_err());
    }

    #[test]
    fn velocity_composition_examples() {
        // light speed is invariant
        assert_abs_diff_eq!(
            compose_velocity_to_prime(1.0, fv(0.9)).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        // v*ubar > 1 reverses the signal in S'
        assert_abs_diff_eq!(
            compose_velocity_to_prime(2.0, fv(0.9)).unwrap(),
            -1.375,
            epsilon = 1e-12
        );
        // comoving object is at rest in S'
        assert_abs_diff_eq!(
            compose_velocity_to_prime(0.5, fv(0.5)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // inverses
        assert_abs_diff_eq!(
            compose_velocity_from_prime(-1.375, fv(0.9)).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            compose_velocity_from_prime(0.0, fv(0.7)).unwrap(),
            0.7,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            compose_velocity_from_prime(-1.0, fv(0.5)).unwrap(),
            -1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn composition_pole_is_an_error() {
        // v*u = 1 exactly
        assert!(matches!(
            compose_velocity_to_prime(2.0, fv(0.5)),
            Err(KinematicsError::CompositionSingularity { .. })
        ));
        assert!(matches!(
            compose_velocity_from_prime(-2.0, fv(0.5)),
            Err(KinematicsError::CompositionSingularity { .. })
        ));
    }

    #[test]
    fn arrival_time_examples() {
        assert_eq!(signal_arrival_time(1.0, ss(2.0)).unwrap(), 0.5);
        assert_eq!(signal_arrival_time(2.0, ss(4.0)).unwrap(), 0.5);
        assert!(signal_arrival_time(1.0, ss(1e12)).unwrap() < 1e-11);
        assert!(signal_arrival_time(-1.0, ss(2.0)).is_err());
        assert!(signal_arrival_time(0.0, ss(2.0)).is_err());
    }

    #[test]
    fn round_trip_sr_paradox_case() {
        let s = RoundTripScenario::new(1.0, 0.9, 2.0, Regime::SpecialRelativity).unwrap();
        let r = run_round_trip(&s).unwrap();
        assert_abs_diff_eq!(r.t1, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.t1_prime, -0.9176629354822472, epsilon = 1e-12);
        assert_abs_diff_eq!(r.x1_prime, 1.26178653628809, epsilon = 1e-12);
        assert_eq!(r.return_speed, -2.0);
        assert_abs_diff_eq!(r.delta_t_prime, 0.630893268144045, epsilon = 1e-12);
        assert_abs_diff_eq!(r.total, -0.2867696673382022, epsilon = 1e-12);
        assert!(r.paradox);
    }

    #[test]
    fn round_trip_preferred_frame_case() {
        let s = RoundTripScenario::new(1.0, 0.9, 2.0, Regime::PreferredFrame).unwrap();
        let r = run_round_trip(&s).unwrap();
        assert_abs_diff_eq!(r.return_speed, -1.0357142857142858, epsilon = 1e-12);
        assert_abs_diff_eq!(r.delta_t_prime, 1.2182766557264315, epsilon = 1e-12);
        assert_abs_diff_eq!(r.total, 0.3006137202441843, epsilon = 1e-12);
        assert!(!r.paradox);
    }

    #[test]
    fn round_trip_slow_frame_no_paradox() {
        let s = RoundTripScenario::new(1.0, 1e-9, 2.0, Regime::SpecialRelativity).unwrap();
        let r = run_round_trip(&s).unwrap();
        // v -> 0: the return trip just doubles the one-way time
        assert_abs_diff_eq!(r.total, 1.0, epsilon = 1e-8);
        assert!(!r.paradox);
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(paradox_threshold(ss(2.0)), 0.8);
        assert_eq!(paradox_threshold(ss(3.0)), 0.6);
        // approaches c from below as the signal approaches light speed;
        // below ~1e-8 the ratio rounds to 1.0 in f64
        assert!(paradox_threshold(ss(1.0 + 1e-6)) > 1.0 - 1e-5);
        assert!(paradox_threshold(ss(1.0 + 1e-6)) < 1.0);
    }

    #[test]
    fn sign_structure_vu_above_one() {
        // v*ubar > 1 implies t1' < 0
        for &(v, u) in &[(0.6, 2.0), (0.9, 1.2), (0.51, 2.0), (0.11, 10.0)] {
            if v * u > 1.0 {
                let s = RoundTripScenario::new(1.0, v, u, Regime::SpecialRelativity).unwrap();
                assert!(run_round_trip(&s).unwrap().t1_prime < 0.0);
            }
        }
    }

    #[test]
    fn scenario_rejects_bad_inputs() {
        assert!(RoundTripScenario::new(0.0, 0.5, 2.0, Regime::SpecialRelativity).is_err());
        assert!(RoundTripScenario::new(1.0, 0.0, 2.0, Regime::SpecialRelativity).is_err());
        assert!(RoundTripScenario::new(1.0, 1.0, 2.0, Regime::SpecialRelativity).is_err());
        assert!(RoundTripScenario::new(1.0, 0.5, 1.0, Regime::SpecialRelativity).is_err());
    }
}
