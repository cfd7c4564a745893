//! Monte Carlo advantage estimates with Hoeffding intervals, next to the
//! exact values from enumeration.

use gamelab::corpus;
use gamelab::games::{exact_advantage, GameSpec};
use gamelab::model::{AttackModel, SecurityParameter};
use gamelab::stats::{estimate_advantage, required_trials};

fn main() {
    let k = SecurityParameter::new(4).unwrap();
    let n = required_trials(0.02, 0.01).unwrap();
    println!("trials per arm for eps=0.02, delta=0.01: {n}");

    let cells = [
        GameSpec::ind(corpus::build_scheme("identity", k).unwrap(), corpus::build_ind_adversary("coinflip").unwrap(), AttackModel::Cpa),
        GameSpec::ind(corpus::build_scheme("xor_malleable", k).unwrap(), corpus::build_ind_adversary("bitflip").unwrap(), AttackModel::Cca2),
        GameSpec::css(
            corpus::build_scheme("leaky_lsb", k).unwrap(),
            corpus::build_css_adversary("lsb_extractor").unwrap(),
            corpus::build_sampler("uniform").unwrap(),
            AttackModel::Cpa,
        ),
    ];
    for spec in &cells {
        let est = estimate_advantage(spec, n, 0.01, 2024).unwrap();
        let exact = exact_advantage(spec).unwrap().advantage();
        println!(
            "{}: adv_hat={:+.4} in [{:+.4}, {:+.4}], exact {}",
            spec.describe(),
            est.adv_hat,
            est.interval[0],
            est.interval[1],
            exact
        );
    }
}
