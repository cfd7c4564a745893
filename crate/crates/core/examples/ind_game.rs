//! Single IND trials and the exact IND advantage of the replay
//! distinguisher against the identity scheme.

use gamelab::corpus;
use gamelab::games::{exact_advantage, run_ind_trial, GameSpec};
use gamelab::model::{AttackModel, ChallengeBit, SecurityParameter};

fn main() {
    let k = SecurityParameter::new(4).unwrap();
    let spec = GameSpec::ind(
        corpus::build_scheme("identity", k).unwrap(),
        corpus::build_ind_adversary("replay").unwrap(),
        AttackModel::Cpa,
    );
    for b in ChallengeBit::BOTH {
        let r = run_ind_trial(&spec, b, 1).unwrap();
        println!("b={b} x0={} x1={} y={} d={}", r.x0, r.x1, r.challenge.unwrap(), r.d);
    }
    let exact = exact_advantage(&spec).unwrap();
    println!("{}: Pr[d=1|b=1]={} Pr[d=1|b=0]={} Adv={}", spec.describe(), exact.p1.value(), exact.p0.value(), exact.advantage());
}
