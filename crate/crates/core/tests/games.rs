use std::sync::Arc;

use gamelab::coins::Coins;
use gamelab::corpus;
use gamelab::games::{
    exact_advantage, exact_split_distribution, exact_trial_distribution, run_css_split_trial,
    run_css_trial, run_ind_trial, run_trial, GameError, GameSpec, MAX_ENUMERATION_BITS,
};
use gamelab::model::{
    AdversaryResult, AttackModel, ChallengeBit, IndAdversary, IndChallenge, IndChoice, Limits,
    PhaseCoins, PublicKey, SecurityParameter, StateInfo,
};
use gamelab::oracle::{DecryptOracle, Phase, QueryOutcome, Refusal};
use gamelab::stats::estimate_advantage;
use gamelab::{BitString, Message, Rational};

fn k4() -> SecurityParameter {
    SecurityParameter::new(4).unwrap()
}

fn ind(scheme: &str, adversary: &str, atk: AttackModel) -> GameSpec {
    GameSpec::ind(
        corpus::build_scheme(scheme, k4()).unwrap(),
        corpus::build_ind_adversary(adversary).unwrap(),
        atk,
    )
}

fn css(scheme: &str, adversary: &str, sampler: &str, atk: AttackModel) -> GameSpec {
    GameSpec::css(
        corpus::build_scheme(scheme, k4()).unwrap(),
        corpus::build_css_adversary(adversary).unwrap(),
        corpus::build_sampler(sampler).unwrap(),
        atk,
    )
}

#[test]
fn trials_are_pure_functions_of_seed() {
    let spec = ind("xor_malleable", "bitflip", AttackModel::Cca2);
    for seed in 0..50 {
        for b in ChallengeBit::BOTH {
            assert_eq!(run_ind_trial(&spec, b, seed).unwrap(), run_ind_trial(&spec, b, seed).unwrap());
        }
    }
}

#[test]
fn transcripts_comply_with_policy() {
    for atk in AttackModel::ALL {
        for (scheme, adversary) in [("xor_malleable", "bitflip"), ("cca1_key_leak", "cca1_table"), ("identity", "bitflip")] {
            let spec = ind(scheme, adversary, atk);
            for seed in 0..64 {
                for b in ChallengeBit::BOTH {
                    let r = run_trial(&spec, b, seed).unwrap();
                    assert!(r.transcript.complies_with(atk, r.challenge.as_ref()), "{}", spec.describe());
                }
            }
        }
    }
}

#[test]
fn bitflip_query_is_answered_only_under_cca2() {
    for atk in AttackModel::ALL {
        let r = run_ind_trial(&ind("xor_malleable", "bitflip", atk), ChallengeBit::One, 5).unwrap();
        let entries: Vec<_> = r.transcript.in_phase(Phase::Phase2).collect();
        assert_eq!(entries.len(), 1);
        let answered = matches!(entries[0].outcome, QueryOutcome::Answered(_));
        assert_eq!(answered, atk == AttackModel::Cca2, "{atk}");
        if atk != AttackModel::Cca2 {
            assert_eq!(entries[0].outcome, QueryOutcome::Refused(Refusal::NullOracle));
        }
    }
}

#[test]
fn unified_css_always_encrypts_x1() {
    let spec = css("identity", "lsb_extractor", "uniform", AttackModel::Cpa);
    for seed in 0..100 {
        for b in ChallengeBit::BOTH {
            let r = run_css_trial(&spec, b, seed).unwrap();
            // The identity scheme makes the ciphertext the plaintext.
            assert_eq!(r.challenge.unwrap().bits(), r.x1.bits());
        }
    }
}

#[test]
fn split_and_unified_agree_for_a_ciphertext_blind_adversary() {
    for atk in AttackModel::ALL {
        let spec = css("xor_malleable", "constant", "uniform", atk);
        for b in ChallengeBit::BOTH {
            let unified = exact_trial_distribution(&spec, b, MAX_ENUMERATION_BITS).unwrap();
            let split = exact_split_distribution(&spec, b, MAX_ENUMERATION_BITS).unwrap();
            assert_eq!(unified, split);
        }
        let r = run_css_split_trial(&spec, ChallengeBit::Zero, 9).unwrap();
        assert!(r.challenge.is_none());
        assert!(run_css_split_trial(&spec, ChallengeBit::One, 9).unwrap().challenge.is_some());
    }
}

#[test]
fn split_experiment_needs_a_blind_capable_adversary() {
    let spec = css("leaky_lsb", "lsb_extractor", "uniform", AttackModel::Cpa);
    assert_eq!(run_css_split_trial(&spec, ChallengeBit::Zero, 1), Err(GameError::UnsupportedSplitExperiment));
}

#[test]
fn wrong_experiment_for_contestant() {
    let spec = ind("identity", "replay", AttackModel::Cpa);
    assert!(matches!(run_css_trial(&spec, ChallengeBit::One, 0), Err(GameError::WrongAdversaryKind { .. })));
}

#[test]
fn monte_carlo_tracks_exact_values() {
    let cells = [
        ind("identity", "replay", AttackModel::Cpa),
        ind("xor_malleable", "bitflip", AttackModel::Cca2),
        css("leaky_lsb", "lsb_extractor", "uniform", AttackModel::Cpa),
        ind("ideal_table", "coinflip", AttackModel::Cca1),
    ];
    for spec in &cells {
        let exact = exact_advantage(spec).unwrap();
        let est = estimate_advantage(spec, 4000, 0.001, 11).unwrap();
        assert!((est.p1_hat - exact.p1.value().to_f64()).abs() <= est.epsilon, "{}", spec.describe());
        assert!((est.p0_hat - exact.p0.value().to_f64()).abs() <= est.epsilon, "{}", spec.describe());
    }
}

#[test]
fn replay_on_identity_is_exactly_one_for_every_seed() {
    let est = estimate_advantage(&ind("identity", "replay", AttackModel::Cpa), 1000, 0.01, 3).unwrap();
    assert_eq!(est.adv_hat, 1.0);
}

#[test]
fn enumeration_refuses_oversized_tapes() {
    let k8 = SecurityParameter::new(8).unwrap();
    let spec = GameSpec::css(
        corpus::build_scheme("xor_malleable", k8).unwrap(),
        corpus::build_css_adversary("lsb_extractor").unwrap(),
        corpus::build_sampler("uniform").unwrap(),
        AttackModel::Cpa,
    );
    assert_eq!(spec.layout().total(), 32);
    assert_eq!(
        exact_advantage(&spec).unwrap_err(),
        GameError::EnumerationInfeasible { required: 32, limit: MAX_ENUMERATION_BITS }
    );
}

/// Misbehaves in a configurable way.
struct Rogue {
    greedy: bool,
    short_x1: bool,
    state_bytes: usize,
}

impl IndAdversary for Rogue {
    fn id(&self) -> String {
        "rogue".into()
    }

    fn coin_budget(&self, _k: SecurityParameter) -> PhaseCoins {
        PhaseCoins { phase1: 1, phase2: 0 }
    }

    fn choose(
        &self,
        k: SecurityParameter,
        _pk: &PublicKey,
        _oracle: &mut dyn DecryptOracle,
        coins: &mut Coins<'_>,
    ) -> AdversaryResult<IndChoice> {
        coins.flip();
        if self.greedy {
            coins.flip();
        }
        let x1_len = if self.short_x1 { k.bits() - 1 } else { k.bits() };
        Ok(IndChoice {
            x0: Message::new(BitString::zeros(k.bits())).unwrap(),
            x1: Message::new(BitString::ones(x1_len)).unwrap(),
            state: StateInfo(vec![0; self.state_bytes]),
        })
    }

    fn guess(
        &self,
        _c: IndChallenge<'_>,
        _oracle: &mut dyn DecryptOracle,
        _coins: &mut Coins<'_>,
    ) -> AdversaryResult<ChallengeBit> {
        Ok(ChallengeBit::Zero)
    }
}

fn rogue(greedy: bool, short_x1: bool, state_bytes: usize) -> GameSpec {
    GameSpec::ind(
        corpus::build_scheme("identity", k4()).unwrap(),
        Arc::new(Rogue { greedy, short_x1, state_bytes }),
        AttackModel::Cpa,
    )
    .with_limits(Limits { state_cap: 8, ..Limits::default() })
}

#[test]
fn contract_violations_are_trial_errors() {
    assert!(run_trial(&rogue(false, false, 0), ChallengeBit::One, 0).is_ok());
    assert_eq!(
        run_trial(&rogue(true, false, 0), ChallengeBit::One, 0),
        Err(GameError::CoinBudgetExceeded { component: "adversary phase 1" })
    );
    assert!(matches!(
        run_trial(&rogue(false, true, 0), ChallengeBit::One, 0),
        Err(GameError::InvalidAdversaryOutput(_))
    ));
    assert!(matches!(
        run_trial(&rogue(false, false, 9), ChallengeBit::One, 0),
        Err(GameError::InvalidAdversaryOutput(_))
    ));
    // The first failing tape is reported, and enumeration does not hide it.
    assert!(exact_advantage(&rogue(true, false, 0)).is_err());
}

#[test]
fn exact_values_are_rationals_over_the_tape_count() {
    let e = exact_advantage(&css("leaky_lsb", "lsb_extractor", "uniform", AttackModel::Cca2)).unwrap();
    assert_eq!(e.p1.tapes, 1 << e.coin_bits);
    assert_eq!(e.advantage(), Rational::new(1, 2));
}
