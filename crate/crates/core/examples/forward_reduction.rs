//! Turning IND adversaries into CSS adversaries that predict the two-point
//! function, and comparing both exact advantages.

use std::sync::Arc;

use gamelab::corpus;
use gamelab::games::{exact_advantage, GameSpec};
use gamelab::model::{AttackModel, SecurityParameter};
use gamelab::reductions::css_from_ind;

fn main() {
    let k = SecurityParameter::new(4).unwrap();
    for (scheme, adversary, atk) in [
        ("identity", "replay", AttackModel::Cpa),
        ("xor_malleable", "bitflip", AttackModel::Cca2),
        ("cca1_key_leak", "cca1_table", AttackModel::Cca1),
        ("ideal_table", "coinflip", AttackModel::Cca2),
    ] {
        let a = corpus::build_ind_adversary(adversary).unwrap();
        let s = corpus::build_scheme(scheme, k).unwrap();
        let ind = exact_advantage(&GameSpec::ind(s.clone(), a.clone(), atk)).unwrap();
        let css = exact_advantage(&GameSpec::css(s, Arc::new(css_from_ind(a)), corpus::build_sampler("uniform").unwrap(), atk)).unwrap();
        println!(
            "{adversary}/{scheme} {atk}: Adv_ind={} Adv_css={} (p(1)={}, p(0)={})",
            ind.advantage(),
            css.advantage(),
            css.p1.value(),
            css.p0.value()
        );
    }
}
