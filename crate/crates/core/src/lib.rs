//! Executable IND and CSS security experiments for toy public-key
//! encryption schemes.
//!
//! A trial is a pure function of a game description, the hidden bit and
//! an explicit coin tape, so every advantage can be estimated by Monte
//! Carlo or computed exactly by enumerating all tapes. On top of that the
//! crate provides the two adversary constructions relating CSS and IND
//! security, a corpus of deliberately flawed schemes and matching
//! adversaries, and a report-producing harness.
//!
//! Coin tapes are derived from 64-bit seeds with the SplitMix64 finalizer
//! (see [`coins`]); trial `i` of arm `b` uses
//! `mix(master_seed) ^ (2i + b)`.

pub mod bits;
pub mod coins;
pub mod corpus;
pub mod games;
pub mod harness;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod stats;

pub use bits::{BitString, Ciphertext, Message, Value};
pub use coins::{CoinTape, Coins};
pub use games::{
    exact_advantage, run_css_split_trial, run_css_trial, run_ind_trial, run_trial, Experiment,
    GameError, GameSpec, Rational, TrialRecord,
};
pub use model::{AttackModel, ChallengeBit, SecurityParameter};
pub use reductions::{css_from_ind, ind_from_css, TieBreakMode};
pub use stats::{estimate_advantage, required_trials, AdvantageEstimate};
