//! Registry of the toy schemes, adversaries, samplers and
//! partial-information functions used by the tests, the examples and the
//! command line.

mod adversaries;
mod schemes;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub use adversaries::{
    BitflipCca2Adversary, Cca1TableAdversary, CoinflipAdversary, ConstantCssAdversary,
    LsbExtractor, ReplayDistinguisher,
};
pub use schemes::{
    Cca1KeyLeakScheme, IdealTableScheme, IdentityScheme, LeakyLsbScheme, XorMalleableScheme,
};

use crate::bits::{Message, Value};
use crate::coins::Coins;
use crate::games::{Experiment, Rational};
use crate::model::{
    AttackModel, CssAdversary, IndAdversary, MessageSpace, PartialInfoFunction,
    SampleAlgorithm, Scheme, SecurityParameter, StateInfo,
};

/// Corpus schemes are defined for `2 ≤ k ≤ 8` (message spaces of at most 2^8 elements).
pub const MIN_K: u32 = 2;
pub const MAX_K: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown {kind} id {id:?}")]
    UnknownId { kind: EntryKind, id: String },
    #[error("{id} is not defined for k = {k} (supported: {MIN_K}..={MAX_K})")]
    UnsupportedK { id: String, k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryKind {
    Scheme,
    IndAdversary,
    CssAdversary,
    Sampler,
    PartialInfo,
}

impl std::fmt::Display for EntryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EntryKind::Scheme => "scheme",
            EntryKind::IndAdversary => "IND adversary",
            EntryKind::CssAdversary => "CSS adversary",
            EntryKind::Sampler => "sampler",
            EntryKind::PartialInfo => "partial-information function",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub kind: EntryKind,
    pub description: &'static str,
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        id: "identity",
        aliases: &["identity_scheme"],
        kind: EntryKind::Scheme,
        description: "E(x) = x, D(y) = y",
    },
    CorpusEntry {
        id: "leaky_lsb",
        aliases: &["leaky_lsb_scheme"],
        kind: EntryKind::Scheme,
        description: "ideal-table encryption of the high bits, plaintext LSB in the clear",
    },
    CorpusEntry {
        id: "xor_malleable",
        aliases: &["xor_malleable_scheme"],
        kind: EntryKind::Scheme,
        description: "y = r || x xor pad(r), pad keyed; bit flips pass through",
    },
    CorpusEntry {
        id: "ideal_table",
        aliases: &["ideal_table_scheme"],
        kind: EntryKind::Scheme,
        description: "secret injection x -> T(x)||T(x); non-images decrypt to bottom",
    },
    CorpusEntry {
        id: "cca1_key_leak",
        aliases: &["cca1_key_leak_scheme"],
        kind: EntryKind::Scheme,
        description: "two-entry pad table readable through phase-1 decryptions",
    },
    CorpusEntry {
        id: "replay",
        aliases: &["replay_distinguisher"],
        kind: EntryKind::IndAdversary,
        description: "outputs 1 iff the challenge equals x1 verbatim",
    },
    CorpusEntry {
        id: "coinflip",
        aliases: &["coinflip_adversary"],
        kind: EntryKind::IndAdversary,
        description: "ignores its inputs and flips a fair coin",
    },
    CorpusEntry {
        id: "bitflip",
        aliases: &["bitflip_cca2_adversary"],
        kind: EntryKind::IndAdversary,
        description: "decrypts the challenge with its last bit flipped in phase 2",
    },
    CorpusEntry {
        id: "cca1_table",
        aliases: &["cca1_table_adversary"],
        kind: EntryKind::IndAdversary,
        description: "reads the pad table through phase-1 decryptions",
    },
    CorpusEntry {
        id: "lsb_extractor",
        aliases: &[],
        kind: EntryKind::CssAdversary,
        description: "M = {0,1}^k, v = last ciphertext bit, f = LSB",
    },
    CorpusEntry {
        id: "constant",
        aliases: &["constant_css_adversary"],
        kind: EntryKind::CssAdversary,
        description: "M = {0,1}^k, v = 0, f = 0; ignores the ciphertext",
    },
    CorpusEntry {
        id: "uniform",
        aliases: &["uniform_sampler"],
        kind: EntryKind::Sampler,
        description: "uniform draw from M",
    },
    CorpusEntry {
        id: "adversarial",
        aliases: &["adversarial_sampler"],
        kind: EntryKind::Sampler,
        description: "always the first element of M",
    },
    CorpusEntry {
        id: "lsb",
        aliases: &[],
        kind: EntryKind::PartialInfo,
        description: "least significant bit of a k-bit message",
    },
    CorpusEntry {
        id: "constant_zero",
        aliases: &[],
        kind: EntryKind::PartialInfo,
        description: "constant 0 on k-bit messages",
    },
    CorpusEntry {
        id: "two_point",
        aliases: &[],
        kind: EntryKind::PartialInfo,
        description: "f(x0) = 0, f(x1) = 1 on {x0, x1}",
    },
];

fn resolve(kind: EntryKind, id: &str) -> Result<&'static str, CorpusError> {
    ENTRIES
        .iter()
        .filter(|e| e.kind == kind)
        .find(|e| e.id == id || e.aliases.contains(&id))
        .map(|e| e.id)
        .ok_or_else(|| CorpusError::UnknownId { kind, id: id.to_string() })
}

pub fn scheme_ids() -> impl Iterator<Item = &'static str> {
    ids(EntryKind::Scheme)
}

pub fn ind_adversary_ids() -> impl Iterator<Item = &'static str> {
    ids(EntryKind::IndAdversary)
}

pub fn css_adversary_ids() -> impl Iterator<Item = &'static str> {
    ids(EntryKind::CssAdversary)
}

pub fn sampler_ids() -> impl Iterator<Item = &'static str> {
    ids(EntryKind::Sampler)
}

fn ids(kind: EntryKind) -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().filter(move |e| e.kind == kind).map(|e| e.id)
}

pub fn build_scheme(id: &str, k: SecurityParameter) -> Result<Arc<dyn Scheme>, CorpusError> {
    let id = resolve(EntryKind::Scheme, id)?;
    if !(MIN_K..=MAX_K).contains(&k.get()) {
        return Err(CorpusError::UnsupportedK { id: id.to_string(), k: k.get() });
    }
    Ok(match id {
        "identity" => Arc::new(IdentityScheme::new(k)),
        "leaky_lsb" => Arc::new(LeakyLsbScheme::new(k)),
        "xor_malleable" => Arc::new(XorMalleableScheme::new(k)),
        "ideal_table" => Arc::new(IdealTableScheme::new(k)),
        "cca1_key_leak" => Arc::new(Cca1KeyLeakScheme::new(k)),
        _ => unreachable!("registered scheme without a constructor"),
    })
}

#[derive(Clone)]
pub enum AnyAdversary {
    Ind(Arc<dyn IndAdversary>),
    Css(Arc<dyn CssAdversary>),
}

pub fn build_adversary(id: &str) -> Result<AnyAdversary, CorpusError> {
    if let Ok(a) = build_ind_adversary(id) {
        return Ok(AnyAdversary::Ind(a));
    }
    build_css_adversary(id)
        .map(AnyAdversary::Css)
        .map_err(|_| CorpusError::UnknownId { kind: EntryKind::IndAdversary, id: id.to_string() })
}

pub fn build_ind_adversary(id: &str) -> Result<Arc<dyn IndAdversary>, CorpusError> {
    Ok(match resolve(EntryKind::IndAdversary, id)? {
        "replay" => Arc::new(ReplayDistinguisher),
        "coinflip" => Arc::new(CoinflipAdversary),
        "bitflip" => Arc::new(BitflipCca2Adversary),
        "cca1_table" => Arc::new(Cca1TableAdversary),
        _ => unreachable!("registered adversary without a constructor"),
    })
}

pub fn build_css_adversary(id: &str) -> Result<Arc<dyn CssAdversary>, CorpusError> {
    Ok(match resolve(EntryKind::CssAdversary, id)? {
        "lsb_extractor" => Arc::new(LsbExtractor),
        "constant" => Arc::new(ConstantCssAdversary),
        _ => unreachable!("registered adversary without a constructor"),
    })
}

pub fn build_sampler(id: &str) -> Result<Arc<dyn SampleAlgorithm>, CorpusError> {
    Ok(match resolve(EntryKind::Sampler, id)? {
        "uniform" => Arc::new(UniformSampler),
        "adversarial" => Arc::new(AdversarialSampler),
        _ => unreachable!("registered sampler without a constructor"),
    })
}

/// The default `Sample`: a uniform draw using every reserved coin.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformSampler;

impl SampleAlgorithm for UniformSampler {
    fn id(&self) -> String {
        "uniform".into()
    }

    fn coin_budget(&self, space_bits: u32) -> u32 {
        space_bits
    }

    fn sample(&self, space: &MessageSpace, _state: &StateInfo, coins: &mut Coins<'_>) -> Message {
        space.draw(coins)
    }
}

/// Always returns the first element of `M`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AdversarialSampler;

impl SampleAlgorithm for AdversarialSampler {
    fn id(&self) -> String {
        "adversarial".into()
    }

    fn coin_budget(&self, _space_bits: u32) -> u32 {
        0
    }

    fn sample(&self, space: &MessageSpace, _state: &StateInfo, _coins: &mut Coins<'_>) -> Message {
        space.elements()[0].clone()
    }
}

/// Every registered partial-information function at message length `k`;
/// the two-point entry uses `0^k` and `1^k`.
pub fn partial_info_functions(k: SecurityParameter) -> Vec<PartialInfoFunction> {
    let len = k.bits();
    vec![
        PartialInfoFunction::LeastSignificantBit { len },
        PartialInfoFunction::Constant { len, value: Value::bit(false) },
        PartialInfoFunction::two_point(k.message(0), k.message((1u64 << len) - 1))
            .expect("k >= 1 gives distinct points"),
    ]
}

/// An advantage the corpus documents. Each one is regenerated by exact
/// enumeration in the test suite.
#[derive(Debug, Clone, Serialize)]
pub struct DocumentedAdvantage {
    pub game: Experiment,
    pub atk: AttackModel,
    pub scheme: &'static str,
    pub adversary: &'static str,
    pub sampler: Option<&'static str>,
    pub k: u32,
    pub advantage: Rational,
}

pub fn documented_advantages() -> Vec<DocumentedAdvantage> {
    use AttackModel::*;
    let ind = |atk, scheme, adversary, n: i64, d: i64| DocumentedAdvantage {
        game: Experiment::Ind,
        atk,
        scheme,
        adversary,
        sampler: None,
        k: 4,
        advantage: Rational::new(n, d),
    };
    let css = |atk, scheme, adversary, sampler, n: i64, d: i64| DocumentedAdvantage {
        game: Experiment::Css,
        atk,
        scheme,
        adversary,
        sampler: Some(sampler),
        k: 4,
        advantage: Rational::new(n, d),
    };
    let mut docs = vec![
        ind(Cpa, "identity", "replay", 1, 1),
        ind(Cca1, "identity", "replay", 1, 1),
        ind(Cca2, "identity", "replay", 1, 1),
        ind(Cpa, "xor_malleable", "bitflip", 0, 1),
        ind(Cca1, "xor_malleable", "bitflip", 0, 1),
        ind(Cca2, "xor_malleable", "bitflip", 1, 1),
        ind(Cpa, "cca1_key_leak", "cca1_table", 0, 1),
        ind(Cca1, "cca1_key_leak", "cca1_table", 1, 1),
        ind(Cca2, "cca1_key_leak", "cca1_table", 1, 1),
        css(Cpa, "leaky_lsb", "lsb_extractor", "uniform", 1, 2),
        css(Cca2, "leaky_lsb", "lsb_extractor", "uniform", 1, 2),
        css(Cpa, "leaky_lsb", "lsb_extractor", "adversarial", 1, 2),
    ];
    for atk in AttackModel::ALL {
        for scheme in scheme_ids() {
            docs.push(ind(atk, scheme, "coinflip", 0, 1));
            docs.push(css(atk, scheme, "constant", "uniform", 0, 1));
        }
        for adversary in ind_adversary_ids() {
            docs.push(ind(atk, "ideal_table", adversary, 0, 1));
        }
        for adversary in css_adversary_ids() {
            for sampler in sampler_ids() {
                docs.push(css(atk, "ideal_table", adversary, sampler, 0, 1));
            }
        }
    }
    docs
}
