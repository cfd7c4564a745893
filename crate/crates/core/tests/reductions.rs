use std::sync::Arc;

use gamelab::corpus;
use gamelab::games::{exact_advantage, run_on_tape, Experiment, GameSpec};
use gamelab::model::{
    check_verifier_contract, AttackModel, ChallengeBit, CssAdversary, IndAdversary,
    PartialInfoFunction, SecurityParameter,
};
use gamelab::reductions::{
    check_reduction_identity, css_from_ind, ind_from_css, AdvantageValue, MeasuredAdvantage,
    Residual, TieBreakMode,
};
use gamelab::stats::estimate_advantage;
use gamelab::{CoinTape, Rational};

fn k4() -> SecurityParameter {
    SecurityParameter::new(4).unwrap()
}

/// Concatenates `(value, bits)` segments into one enumeration tape.
fn splice(segments: &[(u64, u32)]) -> CoinTape {
    let mut index = 0u64;
    let mut at = 0u32;
    for &(value, bits) in segments {
        index |= (value & ((1u64 << bits) - 1)) << at;
        at += bits;
    }
    CoinTape::from_index(index, at as usize)
}

fn ind_spec(scheme: &str, a: Arc<dyn IndAdversary>, atk: AttackModel) -> GameSpec {
    GameSpec::ind(corpus::build_scheme(scheme, k4()).unwrap(), a, atk)
}

fn css_spec(scheme: &str, b: Arc<dyn CssAdversary>, atk: AttackModel) -> GameSpec {
    GameSpec::css(
        corpus::build_scheme(scheme, k4()).unwrap(),
        b,
        corpus::build_sampler("uniform").unwrap(),
        atk,
    )
}

#[test]
fn forward_transform_forwards_every_query() {
    for atk in AttackModel::ALL {
        for (scheme, id) in [("xor_malleable", "bitflip"), ("cca1_key_leak", "cca1_table"), ("identity", "replay")] {
            let a = corpus::build_ind_adversary(id).unwrap();
            let ind = ind_spec(scheme, a.clone(), atk);
            let css = css_spec(scheme, Arc::new(css_from_ind(a)), atk);
            let l = ind.layout();
            for t in 0..1u64 << l.total() {
                let (kg, rest) = (t & ((1 << l.keygen) - 1), t >> l.keygen);
                let (p1, rest) = (rest & ((1 << l.phase1) - 1), rest >> l.phase1);
                let (enc, p2) = (rest & ((1 << l.encrypt) - 1), rest >> l.encrypt);
                for b in ChallengeBit::BOTH {
                    let ind_tape = CoinTape::from_index(t, l.total() as usize);
                    // Drawing index b from M = [x0, x1] makes the CSS ciphertext encrypt x_b.
                    let css_tape = splice(&[
                        (kg, l.keygen),
                        (p1, l.phase1),
                        (b.is_one() as u64, 1),
                        (enc, l.encrypt),
                        (0, 1),
                        (p2, l.phase2),
                    ]);
                    let i = run_on_tape(&ind, Experiment::Ind, b, &ind_tape).unwrap();
                    let c = run_on_tape(&css, Experiment::Css, ChallengeBit::One, &css_tape).unwrap();
                    assert_eq!(i.transcript, c.transcript, "{scheme}/{id}/{atk}");
                    assert_eq!(i.challenge, c.challenge);
                    // v = d, scored against f(x_b) = b.
                    assert_eq!(c.d.is_one(), i.d == b);
                }
            }
        }
    }
}

#[test]
fn forward_advantage_is_half_the_ind_advantage() {
    for atk in AttackModel::ALL {
        for scheme in corpus::scheme_ids() {
            for id in corpus::ind_adversary_ids() {
                let a = corpus::build_ind_adversary(id).unwrap();
                let ind = exact_advantage(&ind_spec(scheme, a.clone(), atk)).unwrap();
                let css = exact_advantage(&css_spec(scheme, Arc::new(css_from_ind(a)), atk)).unwrap();
                assert_eq!(css.p0.value(), Rational::new(1, 2), "{scheme}/{id}/{atk}");
                assert_eq!(css.advantage() * Rational::new(2, 1), ind.advantage(), "{scheme}/{id}/{atk}");
            }
        }
    }
}

#[test]
fn forward_transform_rejects_equal_messages() {
    // ind_from_css draws with replacement, so its pair can collide.
    let inner = Arc::new(ind_from_css(corpus::build_css_adversary("constant").unwrap(), TieBreakMode::default()));
    let css = css_spec("identity", Arc::new(css_from_ind(inner)), AttackModel::Cpa);
    let err = exact_advantage(&css).unwrap_err();
    assert!(err.to_string().contains("x0 = x1"), "{err}");
}

#[test]
fn reverse_identity_is_exact_for_every_css_adversary() {
    for atk in AttackModel::ALL {
        for scheme in corpus::scheme_ids() {
            for id in corpus::css_adversary_ids() {
                let b = corpus::build_css_adversary(id).unwrap();
                let css = exact_advantage(&css_spec(scheme, b.clone(), atk)).unwrap();
                let a = Arc::new(ind_from_css(b, TieBreakMode::AnalysisCoinflip));
                let ind = exact_advantage(&ind_spec(scheme, a, atk)).unwrap();
                assert_eq!(ind.advantage(), css.advantage(), "{scheme}/{id}/{atk}");
            }
        }
    }
}

#[test]
fn pseudocode_mode_differs_only_on_double_matches() {
    let b = corpus::build_css_adversary("lsb_extractor").unwrap();
    let coin = ind_spec("leaky_lsb", Arc::new(ind_from_css(b.clone(), TieBreakMode::AnalysisCoinflip)), AttackModel::Cpa);
    let last = ind_spec("leaky_lsb", Arc::new(ind_from_css(b, TieBreakMode::PaperPseudocode)), AttackModel::Cpa);
    let bits = coin.layout().total();
    let mut differing = 0;
    for t in 0..1u64 << bits {
        let tape = CoinTape::from_index(t, bits as usize);
        for bit in ChallengeBit::BOTH {
            let x = run_on_tape(&coin, Experiment::Ind, bit, &tape).unwrap();
            let y = run_on_tape(&last, Experiment::Ind, bit, &tape).unwrap();
            if x.d != y.d {
                differing += 1;
                assert_eq!(x.x0.lsb(), x.x1.lsb(), "a double match needs f(x0) = f(x1)");
                assert!(y.d.is_one());
            }
        }
    }
    assert!(differing > 0);
    // At b = 1 the claim always verifies against x1, so the last `if` always fires.
    let e = exact_advantage(&last).unwrap();
    assert_eq!(e.p1.value(), Rational::new(1, 1));
    assert_eq!(e.advantage(), Rational::new(1, 2));
}

#[test]
fn constant_adversary_modes_differ_in_p1_only() {
    let b = corpus::build_css_adversary("constant").unwrap();
    let mut p1 = Vec::new();
    for mode in [TieBreakMode::PaperPseudocode, TieBreakMode::AnalysisCoinflip] {
        let e = exact_advantage(&ind_spec("identity", Arc::new(ind_from_css(b.clone(), mode)), AttackModel::Cpa)).unwrap();
        assert!(e.advantage().is_zero());
        p1.push(e.p1.value());
    }
    assert_eq!(p1, vec![Rational::new(1, 1), Rational::new(1, 2)]);
}

#[test]
fn two_point_functions_from_forward_runs_verify() {
    for id in corpus::ind_adversary_ids() {
        let a = corpus::build_ind_adversary(id).unwrap();
        let css = css_spec("xor_malleable", Arc::new(css_from_ind(a)), AttackModel::Cca2);
        for seed in 0..32 {
            let r = gamelab::run_css_trial(&css, ChallengeBit::One, seed).unwrap();
            if r.x0 != r.x1 {
                let f = PartialInfoFunction::two_point(r.x0.clone(), r.x1.clone()).unwrap();
                assert_eq!(check_verifier_contract(&f, 2).unwrap(), 2 * 8);
            }
        }
    }
}

#[test]
fn estimated_identities_fall_in_the_band() {
    let b = corpus::build_css_adversary("lsb_extractor").unwrap();
    let css = estimate_advantage(&css_spec("leaky_lsb", b.clone(), AttackModel::Cpa), 6623, 0.01, 21).unwrap();
    let ind = estimate_advantage(
        &ind_spec("leaky_lsb", Arc::new(ind_from_css(b, TieBreakMode::AnalysisCoinflip)), AttackModel::Cpa),
        6623,
        0.01,
        22,
    )
    .unwrap();
    let side = |e: &gamelab::AdvantageEstimate| MeasuredAdvantage {
        scheme: "leaky_lsb".into(),
        atk: AttackModel::Cpa,
        k: 4,
        value: AdvantageValue::Estimate { estimate: e.clone() },
    };
    let report = check_reduction_identity(&side(&css), &side(&ind)).unwrap();
    let Residual::Estimate { residual, band } = report.residual else { panic!() };
    assert!(band <= 0.08 + 1e-12, "band {band}");
    assert!(report.pass, "residual {residual}");
}
