//! Two-player quantum prisoner's dilemma.
//!
//! This crate implements the Eisert protocol for 2x2 prisoner's-dilemma
//! games — an entangling operator acts before and its inverse after the
//! players' local unitary strategy choices — and builds on it:
//!
//! - [`protocol`]: strategy unitaries, the entangler, final states,
//!   outcome probabilities and expected payoffs;
//! - [`equilibria`]: best-response search over the strategy manifold,
//!   Nash/dominance certification, and the entanglement barriers at
//!   which the defect-defect equilibrium dissolves and the
//!   quantum-quantum equilibrium appears;
//! - [`indicators`]: the cooperation gap N(gamma), its integral
//!   `n_value`, the threshold `gamma_star`, and the classical
//!   repeated-game bounds `delta_lower` / `delta_star`, each with an
//!   independent numerical cross-check route;
//! - [`dataset`] / [`ranking`]: nine bundled experimental games and the
//!   four-level scheme predicting their cooperation ranking;
//! - [`report`] / [`series`]: regression table, reference check, and
//!   figure data (parameter sweeps, cooperation-vs-indicator scatter).
//!
//! # Example
//!
//! ```
//! use quantum_dilemma::{
//!     game_payoff, Entanglement, PayoffMatrix, StrategyParams,
//! };
//!
//! let game = PayoffMatrix::new(70.0, 100.0, 90.0, 80.0)?;
//!
//! // classically, mutual defection pays the punishment d
//! let classical = game_payoff(
//!     &game,
//!     StrategyParams::DEFECT,
//!     StrategyParams::DEFECT,
//!     Entanglement::ZERO,
//! );
//! assert!((classical.payoff_a - 80.0).abs() < 1e-10);
//!
//! // at full entanglement the quantum pair recovers the reward c
//! let entangled = game_payoff(
//!     &game,
//!     StrategyParams::QUANTUM,
//!     StrategyParams::QUANTUM,
//!     Entanglement::MAX,
//! );
//! assert!((entangled.payoff_a - 90.0).abs() < 1e-10);
//! # Ok::<(), quantum_dilemma::Error>(())
//! ```
//!
//! The runnable examples under `examples/` walk through each capability;
//! `cargo run --example results_table` reproduces the full bundled-data
//! indicator table.

pub mod dataset;
pub mod equilibria;
mod error;
pub mod indicators;
pub mod linalg;
pub mod payoff;
pub mod protocol;
pub mod quadrature;
pub mod ranking;
pub mod report;
pub mod roots;
pub mod series;

pub use error::{Error, Result};
pub use indicators::{indicator_set, IndicatorSet};
pub use payoff::{PayoffMatrix, PayoffPair};
pub use protocol::{
    entangler, expected_payoffs, final_state, game_payoff, outcome_distribution, strategy_matrix,
    Entanglement, OutcomeDistribution, QuantumState, StrategyParams,
};
