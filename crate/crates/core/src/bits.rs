//! Finite bit strings and the message/ciphertext/value newtypes built on them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BitsError {
    #[error("invalid bit character {0:?} (expected '0' or '1')")]
    InvalidChar(char),
    #[error("messages must be non-empty")]
    EmptyMessage,
    #[error("bit length {0} does not fit in a u64")]
    TooLong(usize),
}

/// An ordered, finite sequence of bits. Index 0 is the leftmost (most
/// significant) bit when the string is read as an unsigned integer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn ones(len: usize) -> Self {
        Self(vec![true; len])
    }

    /// The `len` low bits of `value`, most significant first.
    pub fn from_uint(value: u64, len: usize) -> Self {
        Self(
            (0..len)
                .map(|i| {
                    let shift = len - 1 - i;
                    shift < 64 && (value >> shift) & 1 == 1
                })
                .collect(),
        )
    }

    pub fn to_uint(&self) -> Result<u64, BitsError> {
        if self.0.len() > 64 {
            return Err(BitsError::TooLong(self.0.len()));
        }
        Ok(self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    /// Every bit string of exactly `len` bits, in increasing integer order.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = BitString> {
        assert!(len < 32, "refusing to enumerate 2^{len} strings");
        (0..1u64 << len).map(move |v| BitString::from_uint(v, len))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn last(&self) -> Option<bool> {
        self.0.last().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn flipped(&self, i: usize) -> Self {
        let mut bits = self.0.clone();
        bits[i] = !bits[i];
        Self(bits)
    }

    pub fn concat(&self, other: &BitString) -> Self {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Self(bits)
    }

    pub fn slice(&self, start: usize, end: usize) -> Self {
        Self(self.0[start..end].to_vec())
    }

    /// Packs the bits into bytes, most significant bit first, zero padded.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.0
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))
            })
            .collect()
    }

    pub fn from_bytes(bytes: &[u8], len: usize) -> Self {
        Self(
            (0..len)
                .map(|i| bytes.get(i / 8).is_some_and(|byte| (byte >> (7 - i % 8)) & 1 == 1))
                .collect(),
        )
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString(\"{self}\")")
    }
}

impl FromStr for BitString {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(BitsError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Self)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A plaintext. Always at least one bit long.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Message(BitString);

impl Message {
    pub fn new(bits: BitString) -> Result<Self, BitsError> {
        if bits.is_empty() {
            return Err(BitsError::EmptyMessage);
        }
        Ok(Self(bits))
    }

    pub fn from_uint(value: u64, len: usize) -> Result<Self, BitsError> {
        Self::new(BitString::from_uint(value, len))
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn lsb(&self) -> bool {
        self.0.last().unwrap_or(false)
    }
}

impl<'de> Deserialize<'de> for Message {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let bits = BitString::deserialize(deserializer)?;
        Message::new(bits).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Message {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Message(\"{}\")", self.0)
    }
}

impl FromStr for Message {
    type Err = BitsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Message::new(s.parse()?)
    }
}

/// A ciphertext; any finite bit string, including the empty one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Ciphertext(BitString);

impl Ciphertext {
    pub fn new(bits: BitString) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<BitString> for Ciphertext {
    fn from(bits: BitString) -> Self {
        Self(bits)
    }
}

impl fmt::Display for Ciphertext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Ciphertext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ciphertext(\"{}\")", self.0)
    }
}

/// The codomain element of a partial-information function. Compared by
/// equality only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Value(BitString);

impl Value {
    pub fn new(bits: BitString) -> Self {
        Self(bits)
    }

    /// The single-bit value `0` or `1`.
    pub fn bit(b: bool) -> Self {
        Self(BitString::new(vec![b]))
    }

    pub fn bits(&self) -> &BitString {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Value(\"{}\")", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn uint_encoding_is_msb_first() {
        let b = BitString::from_uint(0b1011, 4);
        assert_eq!(b.to_string(), "1011");
        assert_eq!(b.to_uint().unwrap(), 11);
        assert_eq!(BitString::from_uint(1, 3).to_string(), "001");
    }

    #[test]
    fn empty_message_rejected() {
        assert_eq!(Message::new(BitString::zeros(0)), Err(BitsError::EmptyMessage));
        assert!("".parse::<Message>().is_err());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!("01x".parse::<BitString>(), Err(BitsError::InvalidChar('x')));
    }

    #[test]
    fn message_serializes_as_bit_string() {
        let m: Message = "0110".parse().unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "\"0110\"");
        assert!(serde_json::from_str::<Message>("\"\"").is_err());
    }

    proptest! {
        #[test]
        fn text_and_bytes_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..80)) {
            let b = BitString::new(bits);
            prop_assert_eq!(b.to_string().parse::<BitString>().unwrap(), b.clone());
            prop_assert_eq!(BitString::from_bytes(&b.to_bytes(), b.len()), b);
        }
    }
}
