//! Simulation toolkit for entangled-photon correlations and finite-speed
//! superluminal signaling models.
//!
//! Three engines, one CLI:
//!
//! * [`kinematics`] — Lorentz boosts, velocity composition, and the
//!   superluminal round-trip construction that decides when a causal paradox
//!   is possible, in both the special-relativistic and preferred-frame
//!   regimes.
//! * [`optics`] — Monte Carlo sampling of the two-photon experiment:
//!   sequential collapse, Malus-law transmission, and the CHSH statistic
//!   separating the entangled state from classical mixtures.
//! * [`protocol`] — the three-party GHZ protocol in which block-level
//!   agreement statistics read out a distant measurement decision under a
//!   finite-speed causal influence, plus the agreement variant that defeats
//!   the readout.
//!
//! [`config`] and [`runner`] provide the JSON-config front end; [`stream`]
//! fixes the deterministic substream derivation that makes every run
//! reproducible.

pub mod config;
pub mod kinematics;
pub mod optics;
pub mod protocol;
pub mod runner;
pub mod stream;
