use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::bits::{BitString, Message};
use crate::coins::{CoinTape, Coins};

/// A finite, ordered set of equal-length messages.
///
/// Uniform draws consume a fixed number of coins `r` and return
/// `elements[r mod |M|]`; the draw is exactly uniform whenever `|M|` is a
/// power of two no larger than `2^bits`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MessageSpace {
    elements: Vec<Message>,
}

impl MessageSpace {
    pub fn new(elements: Vec<Message>) -> Result<Self, ModelError> {
        let first = elements.first().ok_or(ModelError::EmptySpace)?;
        let len = first.len();
        if let Some(odd) = elements.iter().find(|m| m.len() != len) {
            return Err(ModelError::UnequalLengths(len, odd.len()));
        }
        let mut seen = std::collections::HashSet::with_capacity(elements.len());
        for m in &elements {
            if !seen.insert(m) {
                return Err(ModelError::DuplicateElement(m.clone()));
            }
        }
        Ok(Self { elements })
    }

    /// `{0,1}^len` in increasing order.
    pub fn full(len: usize) -> Result<Self, ModelError> {
        if len == 0 {
            return Err(ModelError::EmptySpace);
        }
        Ok(Self {
            elements: BitString::all_of_len(len)
                .map(|b| Message::new(b).expect("len >= 1"))
                .collect(),
        })
    }

    pub fn elements(&self) -> &[Message] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn message_len(&self) -> usize {
        self.elements[0].len()
    }

    pub fn contains(&self, m: &Message) -> bool {
        self.elements.contains(m)
    }

    /// Coins needed for a uniform draw: `log2 |M|` for power-of-two sizes,
    /// otherwise 16 extra bits to push the modulo bias below 2^-16.
    pub fn draw_bits(&self) -> u32 {
        let n = self.elements.len() as u64;
        let bits = 64 - (n - 1).leading_zeros();
        if n.is_power_of_two() {
            bits
        } else {
            bits + 16
        }
    }

    pub fn pick(&self, r: u64) -> &Message {
        &self.elements[(r % self.elements.len() as u64) as usize]
    }

    /// Draws with every remaining coin of `coins` (at most 64).
    pub fn draw(&self, coins: &mut Coins<'_>) -> Message {
        let n = coins.remaining().min(64) as u32;
        self.pick(coins.take(n)).clone()
    }
}

impl<'de> Deserialize<'de> for MessageSpace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            elements: Vec<Message>,
        }
        let raw = Raw::deserialize(deserializer)?;
        MessageSpace::new(raw.elements).map_err(serde::de::Error::custom)
    }
}

/// The default `Sample`: a uniform draw from `space` driven by `seed`.
pub fn uniform_sample(space: &MessageSpace, seed: u64) -> Message {
    let tape = CoinTape::from_seed(seed, space.draw_bits() as usize);
    space.draw(&mut tape.reader())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn msg(s: &str) -> Message {
        s.parse().unwrap()
    }

    #[test]
    fn singleton_always_returns_its_element() {
        let space = MessageSpace::new(vec![msg("101")]).unwrap();
        assert_eq!(space.draw_bits(), 0);
        for seed in 0..50 {
            assert_eq!(uniform_sample(&space, seed), msg("101"));
        }
    }

    #[test]
    fn mixed_lengths_rejected_at_construction() {
        assert_eq!(
            MessageSpace::new(vec![msg("00"), msg("010")]),
            Err(ModelError::UnequalLengths(2, 3))
        );
        assert_eq!(MessageSpace::new(vec![]), Err(ModelError::EmptySpace));
        assert!(matches!(
            MessageSpace::new(vec![msg("01"), msg("01")]),
            Err(ModelError::DuplicateElement(_))
        ));
    }

    #[test]
    fn deserialization_enforces_invariants() {
        assert!(serde_json::from_str::<MessageSpace>(r#"{"elements":["0","11"]}"#).is_err());
        let ok: MessageSpace = serde_json::from_str(r#"{"elements":["00","11"]}"#).unwrap();
        assert_eq!(ok.len(), 2);
    }

    #[test]
    fn four_element_space_frequencies() {
        let space = MessageSpace::full(2).unwrap();
        let mut counts = [0usize; 4];
        for seed in 0..10_000u64 {
            let m = uniform_sample(&space, seed);
            counts[m.bits().to_uint().unwrap() as usize] += 1;
        }
        for c in counts {
            let f = c as f64 / 10_000.0;
            assert!((f - 0.25).abs() <= 0.02, "frequency {f}");
        }
    }

    #[test]
    fn non_power_of_two_draw_budget() {
        let space = MessageSpace::new(vec![msg("00"), msg("01"), msg("10")]).unwrap();
        assert_eq!(space.draw_bits(), 18);
        let full = MessageSpace::full(4).unwrap();
        assert_eq!(full.draw_bits(), 4);
        // exhaustive: every 4-bit coin value maps to a distinct element
        let picks: std::collections::HashSet<_> = (0..16).map(|r| full.pick(r).clone()).collect();
        assert_eq!(picks.len(), 16);
    }
}
