//! Domain types shared by every experiment: keys, decryption results,
//! attack models, message spaces, partial-information functions, and the
//! behavioral contracts for schemes, adversaries and samplers.

mod adversary;
mod partial_info;
mod scheme;
mod space;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use adversary::{
    AdversaryError, AdversaryResult, CssAdversary, IndAdversary, IndChallenge, IndChoice,
    PhaseCoins, SampleAlgorithm, SpaceChoice,
};
pub use partial_info::{
    check_verifier_contract, verify_partial_info, PartialInfoClaim, PartialInfoFunction,
    TwoPointFunction, VerifierViolation,
};
pub use scheme::{scheme_correctness_check, CorrectnessReport, CorrectnessWitness, Scheme};
pub use space::{uniform_sample, MessageSpace};

use crate::bits::{BitString, Message};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("security parameter must be at least 1")]
    ZeroSecurityParameter,
    #[error("message space is empty")]
    EmptySpace,
    #[error("message space mixes lengths {0} and {1}")]
    UnequalLengths(usize, usize),
    #[error("message space lists {0} more than once")]
    DuplicateElement(Message),
    #[error("message outside function domain")]
    OutsideDomain,
    #[error("two-point function needs distinct messages")]
    IdenticalPoints,
    #[error("state information is {len} bytes, cap is {cap}")]
    StateTooLarge { len: usize, cap: usize },
    #[error("scheme coin budget {needed} exceeds the {available}-bit tape")]
    CoinBudgetExceeded { needed: u32, available: u32 },
}

/// The security parameter `k ≥ 1`. Corpus schemes use it as the message
/// bit-length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct SecurityParameter(u32);

impl SecurityParameter {
    pub fn new(k: u32) -> Result<Self, ModelError> {
        if k == 0 {
            return Err(ModelError::ZeroSecurityParameter);
        }
        Ok(Self(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Message length in bits.
    pub fn bits(self) -> usize {
        self.0 as usize
    }

    /// The k-bit message whose integer reading is `value`.
    pub fn message(self, value: u64) -> Message {
        Message::new(BitString::from_uint(value, self.bits())).expect("k >= 1")
    }
}

impl TryFrom<u32> for SecurityParameter {
    type Error = ModelError;

    fn try_from(k: u32) -> Result<Self, Self::Error> {
        Self::new(k)
    }
}

impl From<SecurityParameter> for u32 {
    fn from(k: SecurityParameter) -> u32 {
        k.0
    }
}

impl fmt::Display for SecurityParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PublicKey(pub Vec<u8>);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SecretKey(pub Vec<u8>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub pk: PublicKey,
    pub sk: SecretKey,
}

/// Output of decryption: a message, or ⊥ when no legal decryption exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecryptResult {
    Message(Message),
    Bottom,
}

impl DecryptResult {
    pub fn message(&self) -> Option<&Message> {
        match self {
            DecryptResult::Message(m) => Some(m),
            DecryptResult::Bottom => None,
        }
    }
}

/// Opaque state handed from an adversary's first phase to its second.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct StateInfo(pub Vec<u8>);

impl StateInfo {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn check_cap(&self, cap: usize) -> Result<(), ModelError> {
        if self.0.len() > cap {
            return Err(ModelError::StateTooLarge { len: self.0.len(), cap });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackModel {
    Cpa,
    Cca1,
    Cca2,
}

impl AttackModel {
    pub const ALL: [AttackModel; 3] = [AttackModel::Cpa, AttackModel::Cca1, AttackModel::Cca2];
}

impl fmt::Display for AttackModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackModel::Cpa => "cpa",
            AttackModel::Cca1 => "cca1",
            AttackModel::Cca2 => "cca2",
        })
    }
}

impl FromStr for AttackModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cpa" => Ok(AttackModel::Cpa),
            "cca1" => Ok(AttackModel::Cca1),
            "cca2" => Ok(AttackModel::Cca2),
            other => Err(format!("unknown attack model {other:?}")),
        }
    }
}

/// The hidden bit `b` of an experiment, or an adversary's guess `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum ChallengeBit {
    Zero,
    One,
}

impl ChallengeBit {
    pub const BOTH: [ChallengeBit; 2] = [ChallengeBit::One, ChallengeBit::Zero];

    pub fn is_one(self) -> bool {
        self == ChallengeBit::One
    }
}

impl From<bool> for ChallengeBit {
    fn from(b: bool) -> Self {
        if b {
            ChallengeBit::One
        } else {
            ChallengeBit::Zero
        }
    }
}

impl From<ChallengeBit> for bool {
    fn from(b: ChallengeBit) -> bool {
        b.is_one()
    }
}

impl From<ChallengeBit> for u8 {
    fn from(b: ChallengeBit) -> u8 {
        b.is_one() as u8
    }
}

impl TryFrom<u8> for ChallengeBit {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(ChallengeBit::Zero),
            1 => Ok(ChallengeBit::One),
            other => Err(format!("challenge bit must be 0 or 1, got {other}")),
        }
    }
}

impl fmt::Display for ChallengeBit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(*self))
    }
}

/// Resource caps applied by the experiment runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Decryption queries per phase.
    pub query_cap: usize,
    /// Bytes of phase-1 state.
    pub state_cap: usize,
    /// Bits in a claimed partial-information value.
    pub value_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { query_cap: 1 << 16, state_cap: 1 << 16, value_cap: 256 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn security_parameter_rejects_zero() {
        assert_eq!(SecurityParameter::new(0), Err(ModelError::ZeroSecurityParameter));
        assert!(serde_json::from_str::<SecurityParameter>("0").is_err());
        assert_eq!(SecurityParameter::new(4).unwrap().message(3).to_string(), "0011");
    }

    #[test]
    fn attack_model_text_forms() {
        for atk in AttackModel::ALL {
            assert_eq!(atk.to_string().parse::<AttackModel>().unwrap(), atk);
        }
        assert_eq!(serde_json::to_string(&AttackModel::Cca2).unwrap(), "\"cca2\"");
    }

    #[test]
    fn state_cap_enforced() {
        let s = StateInfo(vec![0; 10]);
        assert!(s.check_cap(10).is_ok());
        assert_eq!(s.check_cap(9), Err(ModelError::StateTooLarge { len: 10, cap: 9 }));
    }
}
