//! What each attack model lets an adversary decrypt, before and after the
//! challenge is issued.

use gamelab::corpus;
use gamelab::model::{AttackModel, SecurityParameter};
use gamelab::oracle::{open_oracle, DecryptOracle};
use gamelab::{Ciphertext, CoinTape};

fn main() {
    let k = SecurityParameter::new(4).unwrap();
    let scheme = corpus::build_scheme("xor_malleable", k).unwrap();
    let keys = scheme.keygen(&mut CoinTape::from_seed(42, 64).reader());
    let challenge = scheme.encrypt(&keys.pk, &k.message(0b1010), &mut CoinTape::from_seed(7, 64).reader());
    let neighbour = Ciphertext::new(challenge.bits().flipped(challenge.len() - 1));

    for atk in AttackModel::ALL {
        let mut oracle = open_oracle(scheme.as_ref(), &keys.sk, atk);
        let before = oracle.query(&neighbour);
        oracle.advance_to_phase2(&challenge).unwrap();
        let exact = oracle.query(&challenge);
        let after = oracle.query(&neighbour);
        println!("{atk}: phase 1 {before:?}");
        println!("{atk}: phase 2 challenge {exact:?}");
        println!("{atk}: phase 2 neighbour {after:?}");
        println!("{atk}: transcript digest {}", oracle.transcript().digest());
    }
}
