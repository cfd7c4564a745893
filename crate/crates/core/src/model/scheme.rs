use serde::Serialize;

use super::{DecryptResult, KeyPair, ModelError, PublicKey, SecretKey, SecurityParameter};
use crate::bits::{BitString, Ciphertext, Message};
use crate::coins::{CoinTape, Coins};

/// A public-key encryption scheme `(K, E, D)` instantiated at a fixed
/// security parameter.
///
/// Implementations must be pure functions of their inputs and coins;
/// `decrypt` takes no coins at all.
pub trait Scheme: Send + Sync {
    fn id(&self) -> &str;

    fn security_parameter(&self) -> SecurityParameter;

    /// Plaintext length in bits.
    fn message_len(&self) -> usize {
        self.security_parameter().bits()
    }

    /// Length of honestly generated ciphertexts.
    fn ciphertext_len(&self) -> usize;

    fn keygen_coins(&self) -> u32;

    fn encrypt_coins(&self) -> u32;

    fn keygen(&self, coins: &mut Coins<'_>) -> KeyPair;

    fn encrypt(&self, pk: &PublicKey, x: &Message, coins: &mut Coins<'_>) -> Ciphertext;

    fn decrypt(&self, sk: &SecretKey, y: &Ciphertext) -> DecryptResult;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrectnessWitness {
    pub message: Message,
    pub keygen_coins: u64,
    pub encrypt_coins: u64,
    pub ciphertext: Ciphertext,
    pub decrypted: DecryptResult,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrectnessReport {
    pub pairs_tested: u64,
    pub failures: Vec<CorrectnessWitness>,
}

impl CorrectnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exhaustive `D(sk, E(pk, x; r)) = x` check over every message of the
/// scheme's length, every key-generation coin value and every encryption
/// coin value.
pub fn scheme_correctness_check(
    scheme: &dyn Scheme,
    coin_tape_bits: u32,
) -> Result<CorrectnessReport, ModelError> {
    let kg = scheme.keygen_coins();
    let enc = scheme.encrypt_coins();
    if kg + enc > coin_tape_bits || kg + enc > 32 {
        return Err(ModelError::CoinBudgetExceeded { needed: kg + enc, available: coin_tape_bits });
    }
    let messages: Vec<Message> = BitString::all_of_len(scheme.message_len())
        .map(|b| Message::new(b).expect("message_len >= 1"))
        .collect();
    let mut report = CorrectnessReport { pairs_tested: 0, failures: Vec::new() };
    for key_coins in 0..1u64 << kg {
        let key_tape = CoinTape::from_index(key_coins, kg as usize);
        let keys = scheme.keygen(&mut key_tape.reader());
        for enc_coins in 0..1u64 << enc {
            let enc_tape = CoinTape::from_index(enc_coins, enc as usize);
            for x in &messages {
                let y = scheme.encrypt(&keys.pk, x, &mut enc_tape.reader());
                let decrypted = scheme.decrypt(&keys.sk, &y);
                report.pairs_tested += 1;
                if decrypted.message() != Some(x) {
                    report.failures.push(CorrectnessWitness {
                        message: x.clone(),
                        keygen_coins: key_coins,
                        encrypt_coins: enc_coins,
                        ciphertext: y,
                        decrypted,
                    });
                }
            }
        }
    }
    Ok(report)
}
