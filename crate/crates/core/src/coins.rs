//! Explicit coin tapes.
//!
//! Every probabilistic algorithm in the crate reads its randomness from a
//! [`Coins`] segment of a [`CoinTape`]. A tape is either expanded from a
//! 64-bit seed (Monte Carlo) or is the binary expansion of an enumeration
//! index (exact mode), so the same trial code serves both.
//!
//! # Seed derivation
//!
//! The derivation is pinned so that reports are reproducible across builds:
//!
//! * `mix(z)` is the SplitMix64 finalizer:
//!   `z ^= z >> 30; z *= 0xbf58476d1ce4e5b9; z ^= z >> 27; z *= 0x94d049bb133111eb; z ^= z >> 31`
//!   (wrapping arithmetic).
//! * Tape word `j` for trial seed `s` is `mix(s + (j + 1) * 0x9e3779b97f4a7c15)`.
//!   Tape bit `i` is bit `i % 64` (least significant first) of word `i / 64`.
//! * Trial `i` of arm `b` under master seed `m` uses trial seed
//!   `mix(m) ^ (2 * i + b)`, so the two arms never share a trial seed.

use std::cell::Cell;

pub const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Trial seed for trial `index` of arm `b` under `master`.
pub fn trial_seed(master: u64, b: bool, index: u64) -> u64 {
    mix(master) ^ ((index << 1) | b as u64)
}

/// A finite tape of coin flips plus an overdraw flag.
#[derive(Debug, Clone)]
pub struct CoinTape {
    words: Vec<u64>,
    len: usize,
    overdrawn: Cell<bool>,
}

impl CoinTape {
    pub fn from_seed(seed: u64, len: usize) -> Self {
        let words = (0..len.div_ceil(64))
            .map(|j| mix(seed.wrapping_add((j as u64 + 1).wrapping_mul(GOLDEN_GAMMA))))
            .collect();
        Self { words, len, overdrawn: Cell::new(false) }
    }

    /// The tape whose bit `i` is bit `i` of `index`.
    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(len <= 64, "enumeration tapes are at most 64 bits");
        let masked = if len == 64 { index } else { index & ((1u64 << len) - 1) };
        Self { words: vec![masked], len, overdrawn: Cell::new(false) }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        i < self.len && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn reader(&self) -> Coins<'_> {
        Coins { tape: self, pos: 0, end: self.len }
    }

    /// Returns whether any reader overdrew since the last call, and clears the flag.
    pub fn take_overdraw(&self) -> bool {
        self.overdrawn.replace(false)
    }
}

/// A cursor over a contiguous segment of a [`CoinTape`].
///
/// Reading past the end of the segment yields zero bits and marks the tape
/// as overdrawn; the game runner turns that into a budget error.
#[derive(Debug)]
pub struct Coins<'a> {
    tape: &'a CoinTape,
    pos: usize,
    end: usize,
}

impl<'a> Coins<'a> {
    pub fn flip(&mut self) -> bool {
        if self.pos >= self.end {
            self.tape.overdrawn.set(true);
            return false;
        }
        let b = self.tape.bit(self.pos);
        self.pos += 1;
        b
    }

    /// Reads `n ≤ 64` coins; the first coin read is the least significant bit.
    pub fn take(&mut self, n: u32) -> u64 {
        assert!(n <= 64);
        (0..n).fold(0u64, |acc, i| acc | ((self.flip() as u64) << i))
    }

    /// Splits off the next `n` coins as an independent segment.
    pub fn segment(&mut self, n: u32) -> Coins<'a> {
        let start = self.pos.min(self.end);
        let stop = start + n as usize;
        if stop > self.end {
            self.tape.overdrawn.set(true);
        }
        let end = stop.min(self.end);
        self.pos = stop;
        Coins { tape: self.tape, pos: start, end }
    }

    pub fn remaining(&self) -> usize {
        self.end.saturating_sub(self.pos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitmix_reference_values() {
        // First outputs of SplitMix64 seeded with 0.
        let tape = CoinTape::from_seed(0, 128);
        assert_eq!(tape.words[0], 0xe220_a839_7b1d_cdaf);
        assert_eq!(tape.words[1], 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn index_tape_reads_low_bits_first() {
        let tape = CoinTape::from_index(0b1101, 4);
        let mut c = tape.reader();
        assert_eq!(c.take(2), 0b01);
        assert_eq!(c.take(2), 0b11);
        assert!(!tape.take_overdraw());
    }

    #[test]
    fn segments_are_disjoint_and_overdraw_is_flagged() {
        let tape = CoinTape::from_index(0b1010_0110, 8);
        let mut all = tape.reader();
        let mut a = all.segment(4);
        let mut b = all.segment(4);
        assert_eq!(a.take(4), 0b0110);
        assert_eq!(b.take(4), 0b1010);
        assert!(!tape.take_overdraw());
        assert!(!a.flip());
        assert!(tape.take_overdraw());
        assert!(!tape.take_overdraw());
        let _ = all.segment(1);
        assert!(tape.take_overdraw());
    }

    #[test]
    fn arm_seeds_are_disjoint() {
        let m = 42;
        let s1: Vec<u64> = (0..1000).map(|i| trial_seed(m, true, i)).collect();
        let s0: Vec<u64> = (0..1000).map(|i| trial_seed(m, false, i)).collect();
        assert!(s1.iter().all(|s| !s0.contains(s)));
    }
}
