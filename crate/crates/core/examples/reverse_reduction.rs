//! Turning CSS adversaries into IND adversaries, under both tie-break rules.

use std::sync::Arc;

use gamelab::corpus;
use gamelab::games::{exact_advantage, GameSpec};
use gamelab::model::{AttackModel, SecurityParameter};
use gamelab::reductions::{ind_from_css, TieBreakMode};

fn main() {
    let k = SecurityParameter::new(4).unwrap();
    for (scheme, adversary) in [("leaky_lsb", "lsb_extractor"), ("identity", "constant")] {
        let b = corpus::build_css_adversary(adversary).unwrap();
        let s = corpus::build_scheme(scheme, k).unwrap();
        let css = exact_advantage(&GameSpec::css(s.clone(), b.clone(), corpus::build_sampler("uniform").unwrap(), AttackModel::Cpa)).unwrap();
        println!("{adversary}/{scheme}: Adv_css={}", css.advantage());
        for mode in [TieBreakMode::AnalysisCoinflip, TieBreakMode::PaperPseudocode] {
            let a = Arc::new(ind_from_css(b.clone(), mode));
            let ind = exact_advantage(&GameSpec::ind(s.clone(), a, AttackModel::Cpa)).unwrap();
            println!("  {mode}: Adv_ind={} (p'(1)={}, p'(0)={})", ind.advantage(), ind.p1.value(), ind.p0.value());
        }
    }
}
