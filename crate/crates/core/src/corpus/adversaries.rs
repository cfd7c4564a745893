//! Corpus adversaries. Each one targets a specific flaw but runs, and
//! degrades gracefully, against every scheme.

use crate::bits::{BitString, Ciphertext, Message, Value};
use crate::coins::Coins;
use crate::model::{
    AdversaryResult, ChallengeBit, CssAdversary, IndAdversary, IndChallenge, IndChoice,
    MessageSpace, PartialInfoClaim, PartialInfoFunction, PhaseCoins, PublicKey,
    SecurityParameter, SpaceChoice, StateInfo,
};
use crate::oracle::DecryptOracle;

fn zeros_and_ones(k: SecurityParameter) -> (Message, Message) {
    let len = k.bits();
    (
        Message::new(BitString::zeros(len)).expect("k >= 1"),
        Message::new(BitString::ones(len)).expect("k >= 1"),
    )
}

/// `1` for `x1`, `0` for `x0`, a coin otherwise.
fn identify(x: &Message, c: &IndChallenge<'_>, coins: &mut Coins<'_>) -> ChallengeBit {
    if x == c.x1 {
        ChallengeBit::One
    } else if x == c.x0 {
        ChallengeBit::Zero
    } else {
        coins.flip().into()
    }
}

/// Picks `0^k, 1^k` and outputs 1 iff the challenge equals `x1` bit for
/// bit. Breaks any scheme that leaves plaintexts unchanged.
#[derive(Debug, Clone, Copy, Default)]
pub struct ReplayDistinguisher;

impl IndAdversary for ReplayDistinguisher {
    fn id(&self) -> String {
        "replay".into()
    }

    fn coin_budget(&self, _k: SecurityParameter) -> PhaseCoins {
        PhaseCoins { phase1: 0, phase2: 0 }
    }

    fn choose(
        &self,
        k: SecurityParameter,
        _pk: &PublicKey,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<IndChoice> {
        let (x0, x1) = zeros_and_ones(k);
        Ok(IndChoice { x0, x1, state: StateInfo::empty() })
    }

    fn guess(
        &self,
        c: IndChallenge<'_>,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<ChallengeBit> {
        Ok((c.ciphertext.bits() == c.x1.bits()).into())
    }
}

/// Ignores everything and outputs a fair coin.
#[derive(Debug, Clone, Copy, Default)]
pub struct CoinflipAdversary;

impl IndAdversary for CoinflipAdversary {
    fn id(&self) -> String {
        "coinflip".into()
    }

    fn coin_budget(&self, _k: SecurityParameter) -> PhaseCoins {
        PhaseCoins { phase1: 0, phase2: 1 }
    }

    fn choose(
        &self,
        k: SecurityParameter,
        _pk: &PublicKey,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<IndChoice> {
        let (x0, x1) = zeros_and_ones(k);
        Ok(IndChoice { x0, x1, state: StateInfo::empty() })
    }

    fn guess(
        &self,
        _c: IndChallenge<'_>,
        _oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<ChallengeBit> {
        Ok(coins.flip().into())
    }
}

/// Flips the last bit of the challenge, asks for its decryption in
/// phase 2, and flips the answer back. Needs a malleable scheme and a
/// phase-2 oracle; on a refusal or ⊥ it guesses.
#[derive(Debug, Clone, Copy, Default)]
pub struct BitflipCca2Adversary;

impl IndAdversary for BitflipCca2Adversary {
    fn id(&self) -> String {
        "bitflip".into()
    }

    fn coin_budget(&self, _k: SecurityParameter) -> PhaseCoins {
        PhaseCoins { phase1: 0, phase2: 1 }
    }

    fn choose(
        &self,
        k: SecurityParameter,
        _pk: &PublicKey,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<IndChoice> {
        let (x0, x1) = zeros_and_ones(k);
        Ok(IndChoice { x0, x1, state: StateInfo::empty() })
    }

    fn guess(
        &self,
        c: IndChallenge<'_>,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<ChallengeBit> {
        let y = c.ciphertext.bits();
        if y.is_empty() {
            return Ok(coins.flip().into());
        }
        let mauled = Ciphertext::new(y.flipped(y.len() - 1));
        let answer = oracle.query(&mauled).ok().and_then(|r| r.message().cloned());
        match answer {
            Some(m) if m.len() == c.x0.len() => {
                let x = Message::new(m.bits().flipped(m.len() - 1)).expect("non-empty");
                Ok(identify(&x, &c, coins))
            }
            _ => Ok(coins.flip().into()),
        }
    }
}

const NONCES: [bool; 2] = [false, true];

/// Asks for the decryptions of `r ‖ 0^k` for both one-bit nonces in
/// phase 1, which recovers a two-entry pad table, then strips the pad off
/// the challenge. Without answers it guesses.
#[derive(Debug, Clone, Copy, Default)]
pub struct Cca1TableAdversary;

impl Cca1TableAdversary {
    fn encode(pads: &[Option<u64>; 2]) -> StateInfo {
        let mut bytes = Vec::with_capacity(18);
        for pad in pads {
            bytes.push(pad.is_some() as u8);
            bytes.extend_from_slice(&pad.unwrap_or(0).to_le_bytes());
        }
        StateInfo(bytes)
    }

    fn decode(state: &StateInfo) -> [Option<u64>; 2] {
        let mut pads = [None, None];
        for (i, chunk) in state.0.chunks(9).take(2).enumerate() {
            if chunk.len() == 9 && chunk[0] == 1 {
                let mut buf = [0u8; 8];
                buf.copy_from_slice(&chunk[1..]);
                pads[i] = Some(u64::from_le_bytes(buf));
            }
        }
        pads
    }
}

impl IndAdversary for Cca1TableAdversary {
    fn id(&self) -> String {
        "cca1_table".into()
    }

    fn coin_budget(&self, _k: SecurityParameter) -> PhaseCoins {
        PhaseCoins { phase1: 0, phase2: 1 }
    }

    fn choose(
        &self,
        k: SecurityParameter,
        _pk: &PublicKey,
        oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<IndChoice> {
        let mut pads = [None, None];
        for (slot, r) in pads.iter_mut().zip(NONCES) {
            let probe = Ciphertext::new(BitString::new(vec![r]).concat(&BitString::zeros(k.bits())));
            if let Ok(answer) = oracle.query(&probe) {
                *slot = answer
                    .message()
                    .filter(|m| m.len() == k.bits())
                    .and_then(|m| m.bits().to_uint().ok());
            }
        }
        let (x0, x1) = zeros_and_ones(k);
        Ok(IndChoice { x0, x1, state: Self::encode(&pads) })
    }

    fn guess(
        &self,
        c: IndChallenge<'_>,
        _oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<ChallengeBit> {
        let len = c.x0.len();
        let y = c.ciphertext.bits();
        let pads = Self::decode(c.state);
        if y.len() != len + 1 || len > 64 {
            return Ok(coins.flip().into());
        }
        match pads[y.bit(0) as usize] {
            Some(pad) => {
                let body = y.slice(1, len + 1).to_uint().expect("len <= 64");
                let x = Message::from_uint(body ^ pad, len).expect("len >= 1");
                Ok(identify(&x, &c, coins))
            }
            None => Ok(coins.flip().into()),
        }
    }
}

/// CSS adversary: `M = {0,1}^k`, claims `v` = last ciphertext bit for
/// `f` = least significant bit.
#[derive(Debug, Clone, Copy, Default)]
pub struct LsbExtractor;

impl CssAdversary for LsbExtractor {
    fn id(&self) -> String {
        "lsb_extractor".into()
    }

    fn coin_budget(&self, _k: SecurityParameter) -> PhaseCoins {
        PhaseCoins::default()
    }

    fn space_bits(&self, k: SecurityParameter) -> u32 {
        k.get()
    }

    fn choose_space(
        &self,
        k: SecurityParameter,
        _pk: &PublicKey,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<SpaceChoice> {
        let space = MessageSpace::full(k.bits()).map_err(|e| crate::model::AdversaryError::new(e.to_string()))?;
        Ok(SpaceChoice { space, state: StateInfo::empty() })
    }

    fn claim(
        &self,
        space: &MessageSpace,
        _state: &StateInfo,
        ciphertext: Option<&Ciphertext>,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<PartialInfoClaim> {
        let y = ciphertext.ok_or_else(|| crate::model::AdversaryError::new("lsb_extractor needs the ciphertext"))?;
        Ok(PartialInfoClaim {
            value: Value::bit(y.bits().last().unwrap_or(false)),
            function: PartialInfoFunction::LeastSignificantBit { len: space.message_len() },
        })
    }
}

/// CSS adversary: `M = {0,1}^k`, always claims `v = 0` for `f ≡ 0`.
/// Never looks at the ciphertext.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConstantCssAdversary;

impl CssAdversary for ConstantCssAdversary {
    fn id(&self) -> String {
        "constant".into()
    }

    fn coin_budget(&self, _k: SecurityParameter) -> PhaseCoins {
        PhaseCoins::default()
    }

    fn space_bits(&self, k: SecurityParameter) -> u32 {
        k.get()
    }

    fn supports_blind_claim(&self) -> bool {
        true
    }

    fn choose_space(
        &self,
        k: SecurityParameter,
        _pk: &PublicKey,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<SpaceChoice> {
        let space = MessageSpace::full(k.bits()).map_err(|e| crate::model::AdversaryError::new(e.to_string()))?;
        Ok(SpaceChoice { space, state: StateInfo::empty() })
    }

    fn claim(
        &self,
        space: &MessageSpace,
        _state: &StateInfo,
        _ciphertext: Option<&Ciphertext>,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<PartialInfoClaim> {
        Ok(PartialInfoClaim {
            value: Value::bit(false),
            function: PartialInfoFunction::Constant {
                len: space.message_len(),
                value: Value::bit(false),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pad_state_round_trips() {
        for pads in [[None, None], [Some(3), None], [Some(0), Some(255)]] {
            assert_eq!(Cca1TableAdversary::decode(&Cca1TableAdversary::encode(&pads)), pads);
        }
        assert_eq!(Cca1TableAdversary::decode(&StateInfo::empty()), [None, None]);
    }
}
