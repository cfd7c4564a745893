//! Single-trial execution of the IND and CSS experiments.
//!
//! A trial is a pure function of `(spec, b, coin tape)`. The tape is cut
//! into disjoint segments in a fixed order: key generation, adversary
//! phase 1, the draw of `x1` from `M`, encryption, `Sample`, adversary
//! phase 2. IND trials leave the two draw segments empty.

mod exact;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use exact::{
    exact_advantage, exact_distribution, exact_split_distribution, exact_trial_distribution,
    ExactAdvantage, ExactProbability, Rational, MAX_ENUMERATION_BITS,
};

use crate::bits::{Ciphertext, Message};
use crate::coins::CoinTape;
use crate::model::{
    AttackModel, ChallengeBit, CssAdversary, IndAdversary, IndChallenge, Limits,
    SampleAlgorithm, Scheme, SecurityParameter,
};
use crate::oracle::{GatedOracle, OracleError, OracleTranscript};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid adversary output: {0}")]
    InvalidAdversaryOutput(String),
    #[error("invalid sampler output: {0}")]
    InvalidSamplerOutput(String),
    #[error("{experiment} experiment needs a {expected} adversary")]
    WrongAdversaryKind { experiment: Experiment, expected: &'static str },
    #[error("adversary cannot run its second phase without a ciphertext")]
    UnsupportedSplitExperiment,
    #[error("enumeration needs {required} coin bits, limit is {limit}")]
    EnumerationInfeasible { required: u32, limit: u32 },
    #[error("{component} read more coins than it declared")]
    CoinBudgetExceeded { component: &'static str },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Which experiment a trial ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Experiment {
    #[serde(rename = "IND")]
    Ind,
    /// The unified CSS experiment; `y` always encrypts `x1`.
    #[serde(rename = "CSS")]
    Css,
    /// The two separate CSS experiments; at `b = 0` phase 2 sees no ciphertext.
    #[serde(rename = "CSS_SPLIT")]
    CssSplit,
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::Ind => "IND",
            Experiment::Css => "CSS",
            Experiment::CssSplit => "CSS_SPLIT",
        })
    }
}

#[derive(Clone)]
pub enum Contestant {
    Ind(Arc<dyn IndAdversary>),
    Css { adversary: Arc<dyn CssAdversary>, sampler: Arc<dyn SampleAlgorithm> },
}

/// Everything that defines a game except the challenge bit and the coins.
#[derive(Clone)]
pub struct GameSpec {
    pub scheme: Arc<dyn Scheme>,
    pub contestant: Contestant,
    pub atk: AttackModel,
    pub limits: Limits,
}

impl fmt::Debug for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Coins per tape segment, in tape order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CoinLayout {
    pub keygen: u32,
    pub phase1: u32,
    pub draw: u32,
    pub encrypt: u32,
    pub sample: u32,
    pub phase2: u32,
}

impl CoinLayout {
    pub fn total(&self) -> u32 {
        self.keygen + self.phase1 + self.draw + self.encrypt + self.sample + self.phase2
    }
}

impl GameSpec {
    pub fn ind(scheme: Arc<dyn Scheme>, adversary: Arc<dyn IndAdversary>, atk: AttackModel) -> Self {
        Self { scheme, contestant: Contestant::Ind(adversary), atk, limits: Limits::default() }
    }

    pub fn css(
        scheme: Arc<dyn Scheme>,
        adversary: Arc<dyn CssAdversary>,
        sampler: Arc<dyn SampleAlgorithm>,
        atk: AttackModel,
    ) -> Self {
        Self {
            scheme,
            contestant: Contestant::Css { adversary, sampler },
            atk,
            limits: Limits::default(),
        }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn k(&self) -> SecurityParameter {
        self.scheme.security_parameter()
    }

    /// The experiment advantage estimates are computed on.
    pub fn experiment(&self) -> Experiment {
        match self.contestant {
            Contestant::Ind(_) => Experiment::Ind,
            Contestant::Css { .. } => Experiment::Css,
        }
    }

    pub fn layout(&self) -> CoinLayout {
        let k = self.k();
        let keygen = self.scheme.keygen_coins();
        let encrypt = self.scheme.encrypt_coins();
        match &self.contestant {
            Contestant::Ind(a) => {
                let c = a.coin_budget(k);
                CoinLayout { keygen, phase1: c.phase1, draw: 0, encrypt, sample: 0, phase2: c.phase2 }
            }
            Contestant::Css { adversary, sampler } => {
                let c = adversary.coin_budget(k);
                let draw = adversary.space_bits(k);
                CoinLayout {
                    keygen,
                    phase1: c.phase1,
                    draw,
                    encrypt,
                    sample: sampler.coin_budget(draw),
                    phase2: c.phase2,
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        match &self.contestant {
            Contestant::Ind(a) => {
                format!("IND-{} {} vs {} (k={})", self.atk, a.id(), self.scheme.id(), self.k())
            }
            Contestant::Css { adversary, sampler } => format!(
                "CSS-{} {} vs {} with {} (k={})",
                self.atk,
                adversary.id(),
                self.scheme.id(),
                sampler.id(),
                self.k()
            ),
        }
    }
}

/// One experiment execution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub game: Experiment,
    pub atk: AttackModel,
    pub b: ChallengeBit,
    pub seed: u64,
    pub d: ChallengeBit,
    /// IND: the adversary's pair. CSS: `x0` from `Sample`, `x1` drawn from `M`.
    pub x0: Message,
    pub x1: Message,
    pub transcript: OracleTranscript,
    /// Absent only for the split experiment at `b = 0`.
    pub challenge: Option<Ciphertext>,
}

/// Result of a trial before it is stamped with a seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialOutcome {
    pub d: ChallengeBit,
    pub x0: Message,
    pub x1: Message,
    pub transcript: OracleTranscript,
    pub challenge: Option<Ciphertext>,
}

fn check_coins(tape: &CoinTape, component: &'static str) -> Result<(), GameError> {
    if tape.take_overdraw() {
        return Err(GameError::CoinBudgetExceeded { component });
    }
    Ok(())
}

fn invalid(e: impl fmt::Display) -> GameError {
    GameError::InvalidAdversaryOutput(e.to_string())
}

/// Runs `experiment` on an explicit tape. The tape should be exactly
/// `spec.layout().total()` bits long.
pub fn run_on_tape(
    spec: &GameSpec,
    experiment: Experiment,
    b: ChallengeBit,
    tape: &CoinTape,
) -> Result<TrialOutcome, GameError> {
    match (&spec.contestant, experiment) {
        (Contestant::Ind(adv), Experiment::Ind) => execute_ind(spec, adv.as_ref(), b, tape),
        (Contestant::Css { adversary, sampler }, Experiment::Css | Experiment::CssSplit) => {
            execute_css(
                spec,
                adversary.as_ref(),
                sampler.as_ref(),
                b,
                tape,
                experiment == Experiment::CssSplit,
            )
        }
        (_, Experiment::Ind) => Err(GameError::WrongAdversaryKind { experiment, expected: "IND" }),
        (_, _) => Err(GameError::WrongAdversaryKind { experiment, expected: "CSS" }),
    }
}

fn execute_ind(
    spec: &GameSpec,
    adv: &dyn IndAdversary,
    b: ChallengeBit,
    tape: &CoinTape,
) -> Result<TrialOutcome, GameError> {
    let k = spec.k();
    let scheme = spec.scheme.as_ref();
    let layout = spec.layout();
    let mut all = tape.reader();
    let mut kg = all.segment(layout.keygen);
    let mut p1 = all.segment(layout.phase1);
    let _ = all.segment(layout.draw);
    let mut enc = all.segment(layout.encrypt);
    let _ = all.segment(layout.sample);
    let mut p2 = all.segment(layout.phase2);
    check_coins(tape, "tape layout")?;

    let keys = scheme.keygen(&mut kg);
    check_coins(tape, "key generation")?;
    let mut oracle = GatedOracle::new(scheme, &keys.sk, spec.atk, spec.limits.query_cap);

    let choice = adv.choose(k, &keys.pk, &mut oracle, &mut p1).map_err(invalid)?;
    check_coins(tape, "adversary phase 1")?;
    let len = scheme.message_len();
    if choice.x0.len() != choice.x1.len() {
        return Err(invalid(format!(
            "messages have unequal lengths {} and {}",
            choice.x0.len(),
            choice.x1.len()
        )));
    }
    if choice.x0.len() != len {
        return Err(invalid(format!("messages are {} bits, scheme expects {len}", choice.x0.len())));
    }
    choice.state.check_cap(spec.limits.state_cap).map_err(invalid)?;

    let xb = if b.is_one() { &choice.x1 } else { &choice.x0 };
    let y = scheme.encrypt(&keys.pk, xb, &mut enc);
    check_coins(tape, "encryption")?;

    oracle.advance_to_phase2(&y)?;
    let challenge = IndChallenge {
        x0: &choice.x0,
        x1: &choice.x1,
        state: &choice.state,
        ciphertext: &y,
    };
    let d = adv.guess(challenge, &mut oracle, &mut p2).map_err(invalid)?;
    check_coins(tape, "adversary phase 2")?;

    Ok(TrialOutcome {
        d,
        x0: choice.x0,
        x1: choice.x1,
        transcript: oracle.into_transcript(),
        challenge: Some(y),
    })
}

fn execute_css(
    spec: &GameSpec,
    adv: &dyn CssAdversary,
    sampler: &dyn SampleAlgorithm,
    b: ChallengeBit,
    tape: &CoinTape,
    split: bool,
) -> Result<TrialOutcome, GameError> {
    if split && !adv.supports_blind_claim() {
        return Err(GameError::UnsupportedSplitExperiment);
    }
    let k = spec.k();
    let scheme = spec.scheme.as_ref();
    let layout = spec.layout();
    let mut all = tape.reader();
    let mut kg = all.segment(layout.keygen);
    let mut p1 = all.segment(layout.phase1);
    let mut draw = all.segment(layout.draw);
    let mut enc = all.segment(layout.encrypt);
    let mut smp = all.segment(layout.sample);
    let mut p2 = all.segment(layout.phase2);
    check_coins(tape, "tape layout")?;

    let keys = scheme.keygen(&mut kg);
    check_coins(tape, "key generation")?;
    let mut oracle = GatedOracle::new(scheme, &keys.sk, spec.atk, spec.limits.query_cap);

    let choice = adv.choose_space(k, &keys.pk, &mut oracle, &mut p1).map_err(invalid)?;
    check_coins(tape, "adversary phase 1")?;
    let space = &choice.space;
    if space.message_len() != scheme.message_len() {
        return Err(invalid(format!(
            "message space holds {}-bit messages, scheme expects {}",
            space.message_len(),
            scheme.message_len()
        )));
    }
    if layout.draw < 64 && space.len() as u64 > 1u64 << layout.draw {
        return Err(invalid(format!(
            "message space has {} elements but only {} draw coins were declared",
            space.len(),
            layout.draw
        )));
    }
    choice.state.check_cap(spec.limits.state_cap).map_err(invalid)?;

    let x1 = space.draw(&mut draw);
    let blind = split && !b.is_one();
    let y = if blind {
        None
    } else {
        let y = scheme.encrypt(&keys.pk, &x1, &mut enc);
        check_coins(tape, "encryption")?;
        Some(y)
    };

    let x0 = sampler.sample(space, &choice.state, &mut smp);
    check_coins(tape, "sampler")?;
    if !space.contains(&x0) {
        return Err(GameError::InvalidSamplerOutput(format!("{x0} is not in the message space")));
    }

    match &y {
        Some(y) => oracle.advance_to_phase2(y)?,
        None => oracle.advance_to_phase2_blind()?,
    }
    let claim = adv
        .claim(space, &choice.state, y.as_ref(), &mut oracle, &mut p2)
        .map_err(invalid)?;
    check_coins(tape, "adversary phase 2")?;
    if claim.value.len() > spec.limits.value_cap {
        return Err(invalid(format!(
            "claimed value is {} bits, cap is {}",
            claim.value.len(),
            spec.limits.value_cap
        )));
    }

    let target = if b.is_one() { &x1 } else { &x0 };
    let hit = claim.function.verify(target, &claim.value).map_err(|e| {
        invalid(format!("claimed function ({}) at {target}: {e}", claim.function))
    })?;

    Ok(TrialOutcome {
        d: hit.into(),
        x0,
        x1,
        transcript: oracle.into_transcript(),
        challenge: y,
    })
}

fn run_seeded(
    spec: &GameSpec,
    experiment: Experiment,
    b: ChallengeBit,
    seed: u64,
) -> Result<TrialRecord, GameError> {
    let tape = CoinTape::from_seed(seed, spec.layout().total() as usize);
    let o = run_on_tape(spec, experiment, b, &tape)?;
    Ok(TrialRecord {
        game: experiment,
        atk: spec.atk,
        b,
        seed,
        d: o.d,
        x0: o.x0,
        x1: o.x1,
        transcript: o.transcript,
        challenge: o.challenge,
    })
}

/// One run of the IND experiment with challenge `E_pk(x_b)`.
pub fn run_ind_trial(spec: &GameSpec, b: ChallengeBit, seed: u64) -> Result<TrialRecord, GameError> {
    run_seeded(spec, Experiment::Ind, b, seed)
}

/// One run of the unified CSS experiment: `y` encrypts `x1`, the claim is
/// scored against `x_b`.
pub fn run_css_trial(spec: &GameSpec, b: ChallengeBit, seed: u64) -> Result<TrialRecord, GameError> {
    run_seeded(spec, Experiment::Css, b, seed)
}

/// One run of the separate CSS experiments.
pub fn run_css_split_trial(
    spec: &GameSpec,
    b: ChallengeBit,
    seed: u64,
) -> Result<TrialRecord, GameError> {
    run_seeded(spec, Experiment::CssSplit, b, seed)
}

/// One run of the spec's normative experiment (IND or unified CSS).
pub fn run_trial(spec: &GameSpec, b: ChallengeBit, seed: u64) -> Result<TrialRecord, GameError> {
    run_seeded(spec, spec.experiment(), b, seed)
}
