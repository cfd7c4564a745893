//! Small schemes with deliberate, well-understood flaws.
//!
//! None of these is secure in any real sense. The keyed ones carry their
//! key material in `pk` (encryption needs it); corpus adversaries treat
//! `pk` as opaque, and every documented advantage is stated for the corpus
//! adversaries only.

use crate::bits::{BitString, Ciphertext, Message};
use crate::coins::Coins;
use crate::model::{DecryptResult, KeyPair, PublicKey, Scheme, SecretKey, SecurityParameter};

/// Fixed public permutation of `{0,1}^len`: `z ↦ 5z + 3 mod 2^len`.
fn permute(z: u64, len: usize) -> u64 {
    (z.wrapping_mul(5).wrapping_add(3)) & mask(len)
}

fn unpermute(z: u64, len: usize) -> u64 {
    // 5 * 0xcccc_cccc_cccc_cccd ≡ 1 (mod 2^64)
    (z.wrapping_sub(3).wrapping_mul(0xcccc_cccc_cccc_cccd)) & mask(len)
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn key_pair(key: u64) -> KeyPair {
    let bytes = key.to_le_bytes().to_vec();
    KeyPair { pk: PublicKey(bytes.clone()), sk: SecretKey(bytes) }
}

fn read_key(bytes: &[u8]) -> u64 {
    let mut buf = [0u8; 8];
    let n = bytes.len().min(8);
    buf[..n].copy_from_slice(&bytes[..n]);
    u64::from_le_bytes(buf)
}

fn uint(bits: &BitString) -> u64 {
    bits.to_uint().expect("corpus strings fit in 64 bits")
}

fn decrypted(value: u64, len: usize) -> DecryptResult {
    match Message::from_uint(value, len) {
        Ok(m) => DecryptResult::Message(m),
        Err(_) => DecryptResult::Bottom,
    }
}

/// `E(x) = x`, `D(y) = y`.
#[derive(Debug, Clone)]
pub struct IdentityScheme {
    k: SecurityParameter,
}

impl IdentityScheme {
    pub fn new(k: SecurityParameter) -> Self {
        Self { k }
    }
}

impl Scheme for IdentityScheme {
    fn id(&self) -> &str {
        "identity"
    }

    fn security_parameter(&self) -> SecurityParameter {
        self.k
    }

    fn ciphertext_len(&self) -> usize {
        self.k.bits()
    }

    fn keygen_coins(&self) -> u32 {
        0
    }

    fn encrypt_coins(&self) -> u32 {
        0
    }

    fn keygen(&self, _coins: &mut Coins<'_>) -> KeyPair {
        KeyPair { pk: PublicKey::default(), sk: SecretKey::default() }
    }

    fn encrypt(&self, _pk: &PublicKey, x: &Message, _coins: &mut Coins<'_>) -> Ciphertext {
        Ciphertext::new(x.bits().clone())
    }

    fn decrypt(&self, _sk: &SecretKey, y: &Ciphertext) -> DecryptResult {
        match Message::new(y.bits().clone()) {
            Ok(m) => DecryptResult::Message(m),
            Err(_) => DecryptResult::Bottom,
        }
    }
}

/// The table `T(z) = P(z ⊕ key)` written twice; anything that is not an
/// image of the doubled table decrypts to ⊥.
fn table_encrypt(z: u64, key: u64, len: usize) -> BitString {
    let t = BitString::from_uint(permute(z ^ key, len), len);
    t.concat(&t)
}

fn table_decrypt(y: &BitString, key: u64, len: usize) -> Option<u64> {
    if y.len() != 2 * len {
        return None;
    }
    let (left, right) = (y.slice(0, len), y.slice(len, 2 * len));
    if left != right {
        return None;
    }
    Some(unpermute(uint(&left), len) ^ key)
}

/// Deterministic encryption through a secret injection
/// `x ↦ T(x) ‖ T(x)` with `T(x) = P(x ⊕ key)`. For each fixed plaintext the
/// ciphertext is uniform over the key, and every non-image decrypts to ⊥.
#[derive(Debug, Clone)]
pub struct IdealTableScheme {
    k: SecurityParameter,
}

impl IdealTableScheme {
    pub fn new(k: SecurityParameter) -> Self {
        Self { k }
    }
}

impl Scheme for IdealTableScheme {
    fn id(&self) -> &str {
        "ideal_table"
    }

    fn security_parameter(&self) -> SecurityParameter {
        self.k
    }

    fn ciphertext_len(&self) -> usize {
        2 * self.k.bits()
    }

    fn keygen_coins(&self) -> u32 {
        self.k.get()
    }

    fn encrypt_coins(&self) -> u32 {
        0
    }

    fn keygen(&self, coins: &mut Coins<'_>) -> KeyPair {
        key_pair(coins.take(self.k.get()))
    }

    fn encrypt(&self, pk: &PublicKey, x: &Message, _coins: &mut Coins<'_>) -> Ciphertext {
        Ciphertext::new(table_encrypt(uint(x.bits()), read_key(&pk.0), self.k.bits()))
    }

    fn decrypt(&self, sk: &SecretKey, y: &Ciphertext) -> DecryptResult {
        match table_decrypt(y.bits(), read_key(&sk.0), self.k.bits()) {
            Some(x) => decrypted(x, self.k.bits()),
            None => DecryptResult::Bottom,
        }
    }
}

/// Ideal-table encryption of the high `k − 1` bits followed by the
/// plaintext's least significant bit in the clear.
#[derive(Debug, Clone)]
pub struct LeakyLsbScheme {
    k: SecurityParameter,
}

impl LeakyLsbScheme {
    pub fn new(k: SecurityParameter) -> Self {
        assert!(k.get() >= 2, "leaky_lsb needs k >= 2");
        Self { k }
    }

    fn high_len(&self) -> usize {
        self.k.bits() - 1
    }
}

impl Scheme for LeakyLsbScheme {
    fn id(&self) -> &str {
        "leaky_lsb"
    }

    fn security_parameter(&self) -> SecurityParameter {
        self.k
    }

    fn ciphertext_len(&self) -> usize {
        2 * self.high_len() + 1
    }

    fn keygen_coins(&self) -> u32 {
        self.high_len() as u32
    }

    fn encrypt_coins(&self) -> u32 {
        0
    }

    fn keygen(&self, coins: &mut Coins<'_>) -> KeyPair {
        key_pair(coins.take(self.high_len() as u32))
    }

    fn encrypt(&self, pk: &PublicKey, x: &Message, _coins: &mut Coins<'_>) -> Ciphertext {
        let len = self.high_len();
        let high = uint(&x.bits().slice(0, len));
        let body = table_encrypt(high, read_key(&pk.0), len);
        Ciphertext::new(body.concat(&BitString::new(vec![x.lsb()])))
    }

    fn decrypt(&self, sk: &SecretKey, y: &Ciphertext) -> DecryptResult {
        let len = self.high_len();
        if y.len() != self.ciphertext_len() {
            return DecryptResult::Bottom;
        }
        let bits = y.bits();
        match table_decrypt(&bits.slice(0, 2 * len), read_key(&sk.0), len) {
            Some(high) => decrypted((high << 1) | bits.bit(2 * len) as u64, self.k.bits()),
            None => DecryptResult::Bottom,
        }
    }
}

/// `y = r ‖ (x ⊕ pad(r))` with a fresh `k`-bit nonce `r` and the keyed pad
/// `pad(r) = P(r ⊕ key)`. Flipping a body bit flips the same plaintext bit.
#[derive(Debug, Clone)]
pub struct XorMalleableScheme {
    k: SecurityParameter,
}

impl XorMalleableScheme {
    pub fn new(k: SecurityParameter) -> Self {
        Self { k }
    }
}

impl Scheme for XorMalleableScheme {
    fn id(&self) -> &str {
        "xor_malleable"
    }

    fn security_parameter(&self) -> SecurityParameter {
        self.k
    }

    fn ciphertext_len(&self) -> usize {
        2 * self.k.bits()
    }

    fn keygen_coins(&self) -> u32 {
        self.k.get()
    }

    fn encrypt_coins(&self) -> u32 {
        self.k.get()
    }

    fn keygen(&self, coins: &mut Coins<'_>) -> KeyPair {
        key_pair(coins.take(self.k.get()))
    }

    fn encrypt(&self, pk: &PublicKey, x: &Message, coins: &mut Coins<'_>) -> Ciphertext {
        let len = self.k.bits();
        let r = coins.take(self.k.get());
        let pad = permute(r ^ read_key(&pk.0), len);
        let body = BitString::from_uint(uint(x.bits()) ^ pad, len);
        Ciphertext::new(BitString::from_uint(r, len).concat(&body))
    }

    fn decrypt(&self, sk: &SecretKey, y: &Ciphertext) -> DecryptResult {
        let len = self.k.bits();
        if y.len() != 2 * len {
            return DecryptResult::Bottom;
        }
        let r = uint(&y.bits().slice(0, len));
        let body = uint(&y.bits().slice(len, 2 * len));
        decrypted(body ^ permute(r ^ read_key(&sk.0), len), len)
    }
}

/// A two-entry pad table: `y = r ‖ (x ⊕ pad[r])` with a one-bit nonce `r`
/// and `pad[r] = P(key ⊕ r)`. Decrypting `r ‖ 0^k` returns `pad[r]`, so two
/// phase-1 queries recover the whole table.
#[derive(Debug, Clone)]
pub struct Cca1KeyLeakScheme {
    k: SecurityParameter,
}

impl Cca1KeyLeakScheme {
    pub fn new(k: SecurityParameter) -> Self {
        Self { k }
    }

    fn pad(&self, key: u64, r: u64) -> u64 {
        permute(key ^ r, self.k.bits())
    }
}

impl Scheme for Cca1KeyLeakScheme {
    fn id(&self) -> &str {
        "cca1_key_leak"
    }

    fn security_parameter(&self) -> SecurityParameter {
        self.k
    }

    fn ciphertext_len(&self) -> usize {
        self.k.bits() + 1
    }

    fn keygen_coins(&self) -> u32 {
        self.k.get()
    }

    fn encrypt_coins(&self) -> u32 {
        1
    }

    fn keygen(&self, coins: &mut Coins<'_>) -> KeyPair {
        key_pair(coins.take(self.k.get()))
    }

    fn encrypt(&self, pk: &PublicKey, x: &Message, coins: &mut Coins<'_>) -> Ciphertext {
        let r = coins.flip() as u64;
        let body = uint(x.bits()) ^ self.pad(read_key(&pk.0), r);
        Ciphertext::new(BitString::new(vec![r == 1]).concat(&BitString::from_uint(body, self.k.bits())))
    }

    fn decrypt(&self, sk: &SecretKey, y: &Ciphertext) -> DecryptResult {
        let len = self.k.bits();
        if y.len() != len + 1 {
            return DecryptResult::Bottom;
        }
        let r = y.bits().bit(0) as u64;
        let body = uint(&y.bits().slice(1, len + 1));
        decrypted(body ^ self.pad(read_key(&sk.0), r), len)
    }
}
