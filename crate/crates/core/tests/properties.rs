use proptest::prelude::*;

use gamelab::coins::trial_seed;
use gamelab::corpus;
use gamelab::games::{run_trial, GameSpec};
use gamelab::model::{check_verifier_contract, AttackModel, ChallengeBit, MessageSpace, PartialInfoFunction, SecretKey, SecurityParameter};
use gamelab::oracle::{DecryptOracle, GatedOracle, Refusal, DEFAULT_QUERY_CAP};
use gamelab::stats::{hoeffding_epsilon, required_trials, AdvantageEstimate};
use gamelab::{BitString, Ciphertext, CoinTape, Message, Rational};

fn bits(max: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(BitString::new)
}

fn atk() -> impl Strategy<Value = AttackModel> {
    prop::sample::select(AttackModel::ALL.to_vec())
}

proptest! {
    #[test]
    fn estimates_stay_in_range(n in 1u64..10_000, a in 0u64..10_000, b in 0u64..10_000, delta in 0.001f64..0.999) {
        let e = AdvantageEstimate::from_counts(a % (n + 1), b % (n + 1), n, delta).unwrap();
        prop_assert!((-1.0..=1.0).contains(&e.adv_hat));
        prop_assert!(e.interval[0] >= -1.0 && e.interval[1] <= 1.0);
        prop_assert!(e.interval[0] <= e.adv_hat && e.adv_hat <= e.interval[1]);
    }

    #[test]
    fn planning_is_monotone(e1 in 0.001f64..0.99, e2 in 0.001f64..0.99, d1 in 0.001f64..0.99, d2 in 0.001f64..0.99) {
        let (lo_e, hi_e) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let (lo_d, hi_d) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(required_trials(hi_e, lo_d).unwrap() <= required_trials(lo_e, lo_d).unwrap());
        prop_assert!(required_trials(lo_e, hi_d).unwrap() <= required_trials(lo_e, lo_d).unwrap());
        let n = required_trials(lo_e, lo_d).unwrap();
        prop_assert!(hoeffding_epsilon(n, lo_d).unwrap() <= lo_e);
    }

    #[test]
    fn arms_never_share_a_seed(master in any::<u64>(), i in 0u64..1 << 40, j in 0u64..1 << 40) {
        prop_assert_ne!(trial_seed(master, true, i), trial_seed(master, false, j));
    }

    #[test]
    fn oracle_gate_matches_policy(atk in atk(), challenge in bits(10), queries in prop::collection::vec(bits(10), 0..20)) {
        let scheme = corpus::build_scheme("xor_malleable", SecurityParameter::new(4).unwrap()).unwrap();
        let keys = scheme.keygen(&mut CoinTape::from_seed(1, 64).reader());
        let challenge = Ciphertext::new(challenge);
        let mut o = GatedOracle::new(scheme.as_ref(), &keys.sk, atk, DEFAULT_QUERY_CAP);
        for q in &queries {
            let q = Ciphertext::new(q.clone());
            let got = o.query(&q);
            if atk == AttackModel::Cpa {
                prop_assert_eq!(got, Err(Refusal::NullOracle));
            } else {
                prop_assert_eq!(got, Ok(scheme.decrypt(&keys.sk, &q)));
            }
        }
        o.advance_to_phase2(&challenge).unwrap();
        for q in queries.iter().chain(std::iter::once(challenge.bits())) {
            let q = Ciphertext::new(q.clone());
            let expected = match atk {
                AttackModel::Cpa | AttackModel::Cca1 => Err(Refusal::NullOracle),
                AttackModel::Cca2 if q == challenge => Err(Refusal::ChallengeBanned),
                AttackModel::Cca2 => Ok(scheme.decrypt(&keys.sk, &q)),
            };
            prop_assert_eq!(o.query(&q), expected);
        }
        prop_assert!(o.transcript().complies_with(atk, Some(&challenge)));
    }

    #[test]
    fn gate_handles_foreign_keys(atk in atk()) {
        // A wrong key still yields a well-formed answer or refusal.
        let scheme = corpus::build_scheme("ideal_table", SecurityParameter::new(4).unwrap()).unwrap();
        let sk = SecretKey::default();
        let mut o = GatedOracle::new(scheme.as_ref(), &sk, atk, 4);
        let _ = o.query(&Ciphertext::new(BitString::zeros(8)));
        prop_assert_eq!(o.transcript().len(), 1);
    }

    #[test]
    fn trials_are_deterministic(seed in any::<u64>(), atk in atk(), b in any::<bool>(),
                                scheme in prop::sample::select(vec!["identity", "leaky_lsb", "xor_malleable", "ideal_table", "cca1_key_leak"]),
                                adversary in prop::sample::select(vec!["replay", "coinflip", "bitflip", "cca1_table", "lsb_extractor", "constant"])) {
        let k = SecurityParameter::new(4).unwrap();
        let s = corpus::build_scheme(scheme, k).unwrap();
        let spec = match corpus::build_adversary(adversary).unwrap() {
            corpus::AnyAdversary::Ind(a) => GameSpec::ind(s, a, atk),
            corpus::AnyAdversary::Css(a) => GameSpec::css(s, a, corpus::build_sampler("uniform").unwrap(), atk),
        };
        let b = ChallengeBit::from(b);
        let r1 = run_trial(&spec, b, seed).unwrap();
        prop_assert_eq!(&r1, &run_trial(&spec, b, seed).unwrap());
        prop_assert!(r1.transcript.complies_with(atk, r1.challenge.as_ref()));
    }

    #[test]
    fn draws_stay_in_the_space(n in 1usize..40, seed in any::<u64>()) {
        let k = SecurityParameter::new(6).unwrap();
        let space = MessageSpace::new((0..n as u64).map(|v| k.message(v)).collect()).unwrap();
        let tape = CoinTape::from_seed(seed, space.draw_bits() as usize);
        prop_assert!(space.contains(&space.draw(&mut tape.reader())));
    }

    #[test]
    fn two_point_verifier_contract(len in 1usize..8, a in any::<u64>(), b in any::<u64>()) {
        let x0 = Message::from_uint(a, len).unwrap();
        let x1 = Message::from_uint(b, len).unwrap();
        prop_assume!(x0 != x1);
        let f = PartialInfoFunction::two_point(x0, x1).unwrap();
        prop_assert!(check_verifier_contract(&f, 3).is_ok());
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = Rational::new(n, d);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        let json = serde_json::to_string(&r).unwrap();
        prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), r);
    }
}
