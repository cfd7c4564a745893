//! Plugging in a scheme and an adversary of your own: a one-time pad whose
//! key is published and reused, checked for correctness, then attacked by
//! the corpus adversaries and by one that re-encrypts under `pk`.

use std::sync::Arc;

use gamelab::coins::Coins;
use gamelab::corpus;
use gamelab::games::{exact_advantage, GameSpec};
use gamelab::model::{
    scheme_correctness_check, AdversaryResult, AttackModel, ChallengeBit, DecryptResult,
    IndAdversary, IndChallenge, IndChoice, KeyPair, PhaseCoins, PublicKey, Scheme, SecretKey,
    SecurityParameter, StateInfo,
};
use gamelab::oracle::DecryptOracle;
use gamelab::{BitString, Ciphertext, CoinTape, Message};

struct ReusedPad {
    k: SecurityParameter,
}

impl Scheme for ReusedPad {
    fn id(&self) -> &str {
        "reused_pad"
    }

    fn security_parameter(&self) -> SecurityParameter {
        self.k
    }

    fn ciphertext_len(&self) -> usize {
        self.k.bits()
    }

    fn keygen_coins(&self) -> u32 {
        self.k.get()
    }

    fn encrypt_coins(&self) -> u32 {
        0
    }

    fn keygen(&self, coins: &mut Coins<'_>) -> KeyPair {
        let pad = coins.take(self.k.get()).to_le_bytes().to_vec();
        KeyPair { pk: PublicKey(pad.clone()), sk: SecretKey(pad) }
    }

    fn encrypt(&self, pk: &PublicKey, x: &Message, _coins: &mut Coins<'_>) -> Ciphertext {
        let pad = u64::from_le_bytes(pk.0[..8].try_into().unwrap());
        Ciphertext::new(BitString::from_uint(x.bits().to_uint().unwrap() ^ pad, self.k.bits()))
    }

    fn decrypt(&self, sk: &SecretKey, y: &Ciphertext) -> DecryptResult {
        if y.len() != self.k.bits() {
            return DecryptResult::Bottom;
        }
        let pad = u64::from_le_bytes(sk.0[..8].try_into().unwrap());
        DecryptResult::Message(Message::from_uint(y.bits().to_uint().unwrap() ^ pad, self.k.bits()).unwrap())
    }
}

/// Deterministic encryption lets anyone holding `pk` test a guess.
struct Reencrypt {
    scheme: Arc<dyn Scheme>,
}

impl IndAdversary for Reencrypt {
    fn id(&self) -> String {
        "reencrypt".into()
    }

    fn coin_budget(&self, _k: SecurityParameter) -> PhaseCoins {
        PhaseCoins { phase1: 0, phase2: 0 }
    }

    fn choose(
        &self,
        k: SecurityParameter,
        pk: &PublicKey,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<IndChoice> {
        Ok(IndChoice { x0: k.message(0), x1: k.message(1), state: StateInfo(pk.0.clone()) })
    }

    fn guess(
        &self,
        c: IndChallenge<'_>,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<ChallengeBit> {
        let y0 = self.scheme.encrypt(&PublicKey(c.state.0.clone()), c.x0, &mut CoinTape::from_index(0, 0).reader());
        Ok(ChallengeBit::from(&y0 != c.ciphertext))
    }
}

fn main() {
    let k = SecurityParameter::new(4).unwrap();
    let scheme: Arc<dyn Scheme> = Arc::new(ReusedPad { k });
    let report = scheme_correctness_check(scheme.as_ref(), 16).unwrap();
    println!("correctness: {} pairs, {} failures", report.pairs_tested, report.failures.len());
    let mut adversaries: Vec<Arc<dyn IndAdversary>> =
        corpus::ind_adversary_ids().map(|id| corpus::build_ind_adversary(id).unwrap()).collect();
    adversaries.push(Arc::new(Reencrypt { scheme: scheme.clone() }));
    for a in adversaries {
        for atk in AttackModel::ALL {
            let spec = GameSpec::ind(scheme.clone(), a.clone(), atk);
            println!("{}: {}", spec.describe(), exact_advantage(&spec).unwrap().advantage());
        }
    }
}
