use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ChallengeBit, MessageSpace, PartialInfoClaim, PublicKey, SecurityParameter, StateInfo};
use crate::bits::{Ciphertext, Message};
use crate::coins::Coins;
use crate::oracle::DecryptOracle;

/// An adversary produced output that violates its contract.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct AdversaryError(pub String);

impl AdversaryError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

pub type AdversaryResult<T> = Result<T, AdversaryError>;

/// Declared coin budget per adversary phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PhaseCoins {
    pub phase1: u32,
    pub phase2: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndChoice {
    pub x0: Message,
    pub x1: Message,
    pub state: StateInfo,
}

/// Everything the second IND phase sees: `(x0, x1, s, y)`.
#[derive(Debug, Clone, Copy)]
pub struct IndChallenge<'a> {
    pub x0: &'a Message,
    pub x1: &'a Message,
    pub state: &'a StateInfo,
    pub ciphertext: &'a Ciphertext,
}

/// `A = (A1, A2)` against indistinguishability.
pub trait IndAdversary: Send + Sync {
    fn id(&self) -> String;

    fn coin_budget(&self, k: SecurityParameter) -> PhaseCoins;

    fn choose(
        &self,
        k: SecurityParameter,
        pk: &PublicKey,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<IndChoice>;

    fn guess(
        &self,
        challenge: IndChallenge<'_>,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<ChallengeBit>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceChoice {
    pub space: MessageSpace,
    pub state: StateInfo,
}

/// `B = (B1, B2)` against comparison-based semantic security.
pub trait CssAdversary: Send + Sync {
    fn id(&self) -> String;

    fn coin_budget(&self, k: SecurityParameter) -> PhaseCoins;

    /// Coins reserved for each uniform draw from the emitted space; the
    /// space may hold at most `2^space_bits` messages.
    fn space_bits(&self, k: SecurityParameter) -> u32;

    /// Whether `claim` may be called without a ciphertext (the split
    /// experiment's `b = 0` branch).
    fn supports_blind_claim(&self) -> bool {
        false
    }

    fn choose_space(
        &self,
        k: SecurityParameter,
        pk: &PublicKey,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<SpaceChoice>;

    fn claim(
        &self,
        space: &MessageSpace,
        state: &StateInfo,
        ciphertext: Option<&Ciphertext>,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<PartialInfoClaim>;
}

/// The `Sample` baseline of the CSS experiment.
pub trait SampleAlgorithm: Send + Sync {
    fn id(&self) -> String;

    /// Coins consumed when the adversary reserved `space_bits` per draw.
    fn coin_budget(&self, space_bits: u32) -> u32;

    fn sample(&self, space: &MessageSpace, state: &StateInfo, coins: &mut Coins<'_>) -> Message;
}
