//! The CSS experiment: the LSB extractor against a scheme that leaks the
//! plaintext's low bit, scored against two different `Sample` algorithms,
//! plus the separate experiments for a ciphertext-blind adversary.

use gamelab::corpus;
use gamelab::games::{exact_advantage, exact_split_distribution, GameSpec, MAX_ENUMERATION_BITS};
use gamelab::model::{AttackModel, ChallengeBit, SecurityParameter};

fn main() {
    let k = SecurityParameter::new(4).unwrap();
    for sampler in corpus::sampler_ids() {
        let spec = GameSpec::css(
            corpus::build_scheme("leaky_lsb", k).unwrap(),
            corpus::build_css_adversary("lsb_extractor").unwrap(),
            corpus::build_sampler(sampler).unwrap(),
            AttackModel::Cpa,
        );
        let e = exact_advantage(&spec).unwrap();
        println!("{}: p(1)={} p(0)={} Adv={} over 2^{} tapes", spec.describe(), e.p1.value(), e.p0.value(), e.advantage(), e.coin_bits);
    }

    let blind = GameSpec::css(
        corpus::build_scheme("ideal_table", k).unwrap(),
        corpus::build_css_adversary("constant").unwrap(),
        corpus::build_sampler("uniform").unwrap(),
        AttackModel::Cca2,
    );
    for b in ChallengeBit::BOTH {
        let p = exact_split_distribution(&blind, b, MAX_ENUMERATION_BITS).unwrap();
        println!("separate experiment b={b}: Pr[d=1]={}", p.value());
    }
}
