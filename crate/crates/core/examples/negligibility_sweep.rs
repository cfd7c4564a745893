//! Advantage as the security parameter grows, printed next to k^-c.
//! The table is the whole output; nothing is concluded from it.

use gamelab::corpus;
use gamelab::games::GameSpec;
use gamelab::model::AttackModel;
use gamelab::stats::negligibility_sweep;

fn main() {
    for (scheme, adversary) in [("identity", "replay"), ("ideal_table", "replay"), ("identity", "coinflip")] {
        let sweep = negligibility_sweep(
            |k| {
                Ok(GameSpec::ind(
                    corpus::build_scheme(scheme, k).map_err(|e| e.to_string())?,
                    corpus::build_ind_adversary(adversary).map_err(|e| e.to_string())?,
                    AttackModel::Cpa,
                ))
            },
            &[4, 6, 8],
            2000,
            0.05,
            1,
            &[1.0, 2.0],
        )
        .unwrap();
        println!("{adversary} vs {scheme}");
        for p in &sweep.points {
            let bounds: Vec<String> = p.thresholds.iter().map(|t| format!("k^-{}={:.4}", t.c, t.k_pow_neg_c)).collect();
            println!("  k={} adv_hat={:+.4} ±{:.4}  {}", p.k, p.estimate.adv_hat, p.estimate.half_width(), bounds.join(" "));
        }
    }
}
