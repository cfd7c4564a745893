//! The two adversary constructions relating CSS and IND security, and the
//! residual check that compares an adversary's advantage with that of its
//! transform.
//!
//! `css_from_ind(A)` predicts the two-point function `f(x0) = 0, f(x1) = 1`
//! on `M = {x0, x1}`. Scored with the uniform two-point `Sample` it has
//! advantage exactly `Adv_ind(A) / 2`: at `b = 1` it wins with probability
//! `(1 + Adv_ind(A)) / 2`, at `b = 0` its claim is independent of the
//! sampled target and matches with probability `1/2`.
//!
//! `ind_from_css(B)` draws `x0, x1` independently from `B`'s space and
//! decides by which of them the claim verifies against. With a uniform
//! `Sample` that uses the same draw, `Adv_ind(ind_from_css(B)) = Adv_css(B)`
//! exactly under [`TieBreakMode::AnalysisCoinflip`].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Ciphertext;
use crate::coins::Coins;
use crate::games::Rational;
use crate::model::{
    AdversaryError, AdversaryResult, AttackModel, ChallengeBit, CssAdversary, IndAdversary,
    IndChallenge, IndChoice, MessageSpace, PartialInfoClaim, PartialInfoFunction, PhaseCoins,
    PublicKey, SecurityParameter, SpaceChoice, StateInfo,
};
use crate::oracle::DecryptOracle;
use crate::stats::AdvantageEstimate;

/// What the reverse construction outputs when the claim verifies against
/// both messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreakMode {
    /// The sequential `if`s, last one wins: `d = 1`.
    PaperPseudocode,
    /// A fair coin.
    #[default]
    AnalysisCoinflip,
}

impl fmt::Display for TieBreakMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreakMode::PaperPseudocode => "paper_pseudocode",
            TieBreakMode::AnalysisCoinflip => "analysis_coinflip",
        })
    }
}

impl FromStr for TieBreakMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "paper_pseudocode" | "pseudocode" => Ok(TieBreakMode::PaperPseudocode),
            "analysis_coinflip" | "coinflip" => Ok(TieBreakMode::AnalysisCoinflip),
            other => Err(format!("unknown tie-break mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    CssFromInd,
    IndFromCss,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::CssFromInd => "css_from_ind",
            Direction::IndFromCss => "ind_from_css",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "css_from_ind" => Ok(Direction::CssFromInd),
            "ind_from_css" => Ok(Direction::IndFromCss),
            other => Err(format!("unknown reduction direction {other:?}")),
        }
    }
}

/// CSS adversary built from an IND adversary `A`.
pub struct CssFromInd {
    inner: Arc<dyn IndAdversary>,
}

pub fn css_from_ind(a: Arc<dyn IndAdversary>) -> CssFromInd {
    CssFromInd { inner: a }
}

impl CssAdversary for CssFromInd {
    fn id(&self) -> String {
        format!("css_from_ind({})", self.inner.id())
    }

    fn coin_budget(&self, k: SecurityParameter) -> PhaseCoins {
        self.inner.coin_budget(k)
    }

    fn space_bits(&self, _k: SecurityParameter) -> u32 {
        1
    }

    fn choose_space(
        &self,
        k: SecurityParameter,
        pk: &PublicKey,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<SpaceChoice> {
        let IndChoice { x0, x1, state } = self.inner.choose(k, pk, oracle, coins)?;
        if x0 == x1 {
            return Err(AdversaryError::new(format!("inner adversary chose x0 = x1 = {x0}")));
        }
        let space = MessageSpace::new(vec![x0, x1]).map_err(|e| AdversaryError::new(e.to_string()))?;
        Ok(SpaceChoice { space, state })
    }

    fn claim(
        &self,
        space: &MessageSpace,
        state: &StateInfo,
        ciphertext: Option<&Ciphertext>,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<PartialInfoClaim> {
        let y = ciphertext.ok_or_else(|| AdversaryError::new("css_from_ind needs the ciphertext"))?;
        let [x0, x1] = space.elements() else {
            return Err(AdversaryError::new("css_from_ind expects its own two-point space"));
        };
        let challenge = IndChallenge { x0, x1, state, ciphertext: y };
        let d = self.inner.guess(challenge, oracle, coins)?;
        let function = PartialInfoFunction::two_point(x0.clone(), x1.clone())
            .map_err(|e| AdversaryError::new(e.to_string()))?;
        Ok(PartialInfoClaim { value: crate::bits::Value::bit(d.is_one()), function })
    }
}

/// IND adversary built from a CSS adversary `B`.
pub struct IndFromCss {
    inner: Arc<dyn CssAdversary>,
    mode: TieBreakMode,
}

pub fn ind_from_css(b: Arc<dyn CssAdversary>, mode: TieBreakMode) -> IndFromCss {
    IndFromCss { inner: b, mode }
}

/// `(k, M, s)` carried across the phases.
#[derive(Serialize, Deserialize)]
struct CarriedState {
    k: SecurityParameter,
    space: MessageSpace,
    inner: Vec<u8>,
}

impl IndFromCss {
    pub fn mode(&self) -> TieBreakMode {
        self.mode
    }
}

impl IndAdversary for IndFromCss {
    fn id(&self) -> String {
        format!("ind_from_css({}, {})", self.inner.id(), self.mode)
    }

    fn coin_budget(&self, k: SecurityParameter) -> PhaseCoins {
        let c = self.inner.coin_budget(k);
        PhaseCoins {
            phase1: c.phase1 + 2 * self.inner.space_bits(k),
            phase2: c.phase2 + 1,
        }
    }

    fn choose(
        &self,
        k: SecurityParameter,
        pk: &PublicKey,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<IndChoice> {
        let c = self.inner.coin_budget(k);
        let bits = self.inner.space_bits(k);
        let SpaceChoice { space, state } =
            self.inner.choose_space(k, pk, oracle, &mut coins.segment(c.phase1))?;
        if space.len() < 2 {
            return Err(AdversaryError::new("message space has fewer than two elements"));
        }
        let x0 = space.draw(&mut coins.segment(bits));
        let x1 = space.draw(&mut coins.segment(bits));
        let carried = CarriedState { k, space, inner: state.0 };
        let state = StateInfo(serde_json::to_vec(&carried).expect("state serializes"));
        Ok(IndChoice { x0, x1, state })
    }

    fn guess(
        &self,
        c: IndChallenge<'_>,
        oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<ChallengeBit> {
        let carried: CarriedState = serde_json::from_slice(&c.state.0)
            .map_err(|e| AdversaryError::new(format!("corrupt carried state: {e}")))?;
        let budget = self.inner.coin_budget(carried.k);
        let claim = self.inner.claim(
            &carried.space,
            &StateInfo(carried.inner),
            Some(c.ciphertext),
            oracle,
            &mut coins.segment(budget.phase2),
        )?;
        let check = |x| {
            claim
                .function
                .verify(x, &claim.value)
                .map_err(|e| AdversaryError::new(format!("claimed function ({}) at {x}: {e}", claim.function)))
        };
        let at0 = check(c.x0)?;
        let at1 = check(c.x1)?;
        let tie = coins.flip();
        Ok(match (at0, at1) {
            (true, false) => ChallengeBit::Zero,
            (false, true) => ChallengeBit::One,
            (false, false) => tie.into(),
            (true, true) => match self.mode {
                TieBreakMode::PaperPseudocode => ChallengeBit::One,
                TieBreakMode::AnalysisCoinflip => tie.into(),
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("cannot compare advantages: {0}")]
    IncomparableConfigurations(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AdvantageValue {
    Exact { value: Rational },
    Estimate { estimate: AdvantageEstimate },
}

/// An advantage together with the configuration it was measured on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasuredAdvantage {
    pub scheme: String,
    pub atk: AttackModel,
    pub k: u32,
    pub value: AdvantageValue,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Residual {
    Exact { residual: Rational },
    Estimate { residual: f64, band: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub original: AdvantageValue,
    pub constructed: AdvantageValue,
    pub residual: Residual,
    pub pass: bool,
}

/// `constructed − original`. Exact pairs pass iff the residual is 0;
/// estimates pass iff it is within the sum of both interval half-widths.
pub fn check_reduction_identity(
    original: &MeasuredAdvantage,
    constructed: &MeasuredAdvantage,
) -> Result<ResidualReport, ReductionError> {
    if original.scheme != constructed.scheme || original.atk != constructed.atk || original.k != constructed.k {
        return Err(ReductionError::IncomparableConfigurations(format!(
            "{}/{}/k={} vs {}/{}/k={}",
            original.scheme, original.atk, original.k, constructed.scheme, constructed.atk, constructed.k
        )));
    }
    let residual = match (&original.value, &constructed.value) {
        (AdvantageValue::Exact { value: o }, AdvantageValue::Exact { value: c }) => {
            Residual::Exact { residual: *c - *o }
        }
        (AdvantageValue::Estimate { estimate: o }, AdvantageValue::Estimate { estimate: c }) => {
            Residual::Estimate { residual: c.adv_hat - o.adv_hat, band: o.half_width() + c.half_width() }
        }
        _ => {
            return Err(ReductionError::IncomparableConfigurations(
                "one advantage is exact and the other estimated".into(),
            ))
        }
    };
    let pass = match &residual {
        Residual::Exact { residual } => residual.is_zero(),
        Residual::Estimate { residual, band } => residual.abs() <= *band,
    };
    Ok(ResidualReport {
        original: original.value.clone(),
        constructed: constructed.value.clone(),
        residual,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::games::{exact_advantage, GameSpec};

    fn k4() -> SecurityParameter {
        SecurityParameter::new(4).unwrap()
    }

    fn exact(spec: &GameSpec) -> Rational {
        exact_advantage(spec).unwrap().advantage()
    }

    #[test]
    fn reverse_lsb_is_one_half_both_sides() {
        let scheme = corpus::build_scheme("leaky_lsb", k4()).unwrap();
        let b = corpus::build_css_adversary("lsb_extractor").unwrap();
        let css = GameSpec::css(scheme.clone(), b.clone(), corpus::build_sampler("uniform").unwrap(), AttackModel::Cpa);
        let ind = GameSpec::ind(scheme, Arc::new(ind_from_css(b, TieBreakMode::AnalysisCoinflip)), AttackModel::Cpa);
        assert_eq!(exact(&css), Rational::new(1, 2));
        assert_eq!(exact(&ind), Rational::new(1, 2));
    }

    #[test]
    fn constant_adversary_both_modes_cancel() {
        let scheme = corpus::build_scheme("identity", k4()).unwrap();
        let b = corpus::build_css_adversary("constant").unwrap();
        for mode in [TieBreakMode::PaperPseudocode, TieBreakMode::AnalysisCoinflip] {
            let spec = GameSpec::ind(scheme.clone(), Arc::new(ind_from_css(b.clone(), mode)), AttackModel::Cpa);
            let e = exact_advantage(&spec).unwrap();
            assert!(e.advantage().is_zero());
            let p1 = if mode == TieBreakMode::PaperPseudocode { Rational::new(1, 1) } else { Rational::new(1, 2) };
            assert_eq!(e.p1.value(), p1);
        }
    }

    #[test]
    fn forward_is_half_the_ind_advantage() {
        let scheme = corpus::build_scheme("identity", k4()).unwrap();
        let a = corpus::build_ind_adversary("replay").unwrap();
        let ind = GameSpec::ind(scheme.clone(), a.clone(), AttackModel::Cpa);
        let css = GameSpec::css(scheme, Arc::new(css_from_ind(a)), corpus::build_sampler("uniform").unwrap(), AttackModel::Cpa);
        assert_eq!(exact(&ind), Rational::new(1, 1));
        assert_eq!(exact(&css), Rational::new(1, 2));
    }

    #[test]
    fn mismatched_configurations_rejected() {
        let m = |scheme: &str, atk| MeasuredAdvantage {
            scheme: scheme.into(),
            atk,
            k: 4,
            value: AdvantageValue::Exact { value: Rational::zero() },
        };
        assert!(check_reduction_identity(&m("identity", AttackModel::Cpa), &m("identity", AttackModel::Cca2)).is_err());
        assert!(check_reduction_identity(&m("identity", AttackModel::Cpa), &m("ideal_table", AttackModel::Cpa)).is_err());
        assert!(check_reduction_identity(&m("identity", AttackModel::Cpa), &m("identity", AttackModel::Cpa)).unwrap().pass);
    }

    #[test]
    fn tie_break_text_forms() {
        for m in [TieBreakMode::PaperPseudocode, TieBreakMode::AnalysisCoinflip] {
            assert_eq!(m.to_string().parse::<TieBreakMode>().unwrap(), m);
        }
        assert_eq!(TieBreakMode::default(), TieBreakMode::AnalysisCoinflip);
    }
}
