//! Exact IND advantage of every corpus adversary against every corpus
//! scheme under each attack model, at k = 4.

use gamelab::corpus;
use gamelab::games::{exact_advantage, GameSpec};
use gamelab::model::{AttackModel, SecurityParameter};

fn main() {
    let k = SecurityParameter::new(4).unwrap();
    println!("{:<14} {:<12} {:>6} {:>6} {:>6}", "scheme", "adversary", "cpa", "cca1", "cca2");
    for scheme in corpus::scheme_ids() {
        for adversary in corpus::ind_adversary_ids() {
            let row: Vec<String> = AttackModel::ALL
                .iter()
                .map(|&atk| {
                    let spec = GameSpec::ind(
                        corpus::build_scheme(scheme, k).unwrap(),
                        corpus::build_ind_adversary(adversary).unwrap(),
                        atk,
                    );
                    exact_advantage(&spec).unwrap().advantage().to_string()
                })
                .collect();
            println!("{scheme:<14} {adversary:<12} {:>6} {:>6} {:>6}", row[0], row[1], row[2]);
        }
    }
}
