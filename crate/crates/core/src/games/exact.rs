//! Exact success probabilities by enumerating every coin tape.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{run_on_tape, Experiment, GameError, GameSpec};
use crate::coins::CoinTape;
use crate::model::ChallengeBit;

pub const MAX_ENUMERATION_BITS: u32 = 24;

/// An exact signed rational, serialized as `"numerator/denominator"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub Ratio<i64>);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Self(Ratio::new(numer, denom))
    }

    pub fn zero() -> Self {
        Self::new(0, 1)
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;

    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;

    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;

    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = s.split_once('/').ok_or_else(|| format!("expected n/d, got {s:?}"))?;
        let n: i64 = n.trim().parse().map_err(|e| format!("numerator: {e}"))?;
        let d: i64 = d.trim().parse().map_err(|e| format!("denominator: {e}"))?;
        if d == 0 {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(n, d))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `Pr[d = 1]` as a count of winning tapes out of all tapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactProbability {
    pub ones: u64,
    pub tapes: u64,
}

impl ExactProbability {
    pub fn value(&self) -> Rational {
        Rational::new(self.ones as i64, self.tapes as i64)
    }
}

/// Enumerates all `2^n` tapes of the spec's layout, `n ≤ total_coin_bits ≤ 24`.
pub fn exact_distribution(
    spec: &GameSpec,
    experiment: Experiment,
    b: ChallengeBit,
    total_coin_bits: u32,
) -> Result<ExactProbability, GameError> {
    let bits = spec.layout().total();
    let limit = total_coin_bits.min(MAX_ENUMERATION_BITS);
    if bits > limit {
        return Err(GameError::EnumerationInfeasible { required: bits, limit });
    }
    let tapes = 1u64 << bits;
    // Chunks by tape prefix so that the first error (in tape order) is the one reported.
    let chunk_bits = bits.min(10);
    let chunk_len = 1u64 << (bits - chunk_bits);
    let counts: Vec<Result<u64, GameError>> = (0..1u64 << chunk_bits)
        .into_par_iter()
        .map(|chunk| {
            let mut ones = 0;
            for index in chunk * chunk_len..(chunk + 1) * chunk_len {
                let tape = CoinTape::from_index(index, bits as usize);
                if run_on_tape(spec, experiment, b, &tape)?.d.is_one() {
                    ones += 1;
                }
            }
            Ok(ones)
        })
        .collect();
    let mut ones = 0;
    for c in counts {
        ones += c?;
    }
    Ok(ExactProbability { ones, tapes })
}

/// Exact `Pr[d = 1]` of the normative experiment (IND or unified CSS).
pub fn exact_trial_distribution(
    spec: &GameSpec,
    b: ChallengeBit,
    total_coin_bits: u32,
) -> Result<ExactProbability, GameError> {
    exact_distribution(spec, spec.experiment(), b, total_coin_bits)
}

/// Exact `Pr[d = 1]` of the separate CSS experiments.
pub fn exact_split_distribution(
    spec: &GameSpec,
    b: ChallengeBit,
    total_coin_bits: u32,
) -> Result<ExactProbability, GameError> {
    exact_distribution(spec, Experiment::CssSplit, b, total_coin_bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactAdvantage {
    pub coin_bits: u32,
    pub p1: ExactProbability,
    pub p0: ExactProbability,
}

impl ExactAdvantage {
    /// `Pr[d=1 | b=1] − Pr[d=1 | b=0]`, signed.
    pub fn advantage(&self) -> Rational {
        self.p1.value() - self.p0.value()
    }
}

/// Both arms of the normative experiment, enumerated exactly.
pub fn exact_advantage(spec: &GameSpec) -> Result<ExactAdvantage, GameError> {
    let bits = spec.layout().total();
    Ok(ExactAdvantage {
        coin_bits: bits,
        p1: exact_trial_distribution(spec, ChallengeBit::One, MAX_ENUMERATION_BITS)?,
        p0: exact_trial_distribution(spec, ChallengeBit::Zero, MAX_ENUMERATION_BITS)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_form() {
        assert_eq!(Rational::new(2, 2).to_string(), "1/1");
        assert_eq!(Rational::new(0, 5).to_string(), "0/1");
        assert_eq!(Rational::new(-3, 6).to_string(), "-1/2");
        assert_eq!("-1/2".parse::<Rational>().unwrap(), Rational::new(1, -2));
        assert!("1/0".parse::<Rational>().is_err());
        assert_eq!(serde_json::to_string(&Rational::new(1, 4)).unwrap(), "\"1/4\"");
    }
}
