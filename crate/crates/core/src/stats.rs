//! Advantage estimation with Hoeffding error bars, trial planning, and
//! security-parameter sweeps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coins::trial_seed;
use crate::games::{run_trial, GameError, GameSpec};
use crate::model::{ChallengeBit, SecurityParameter};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("{name} must lie strictly between 0 and 1, got {value}")]
    OutOfRange { name: &'static str, value: f64 },
    #[error("k list must be nonempty and strictly ascending")]
    BadKList,
    #[error("trial b={b} seed={seed} failed: {source}")]
    TrialFailed {
        b: ChallengeBit,
        seed: u64,
        #[source]
        source: GameError,
    },
    #[error("k = {k}: {message}")]
    SpecFamily { k: u32, message: String },
}

fn unit_open(name: &'static str, value: f64) -> Result<(), StatsError> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(StatsError::OutOfRange { name, value })
    }
}

/// Per-arm two-sided Hoeffding half-width `sqrt(ln(2/δ) / 2n)`.
pub fn hoeffding_epsilon(n: u64, delta: f64) -> Result<f64, StatsError> {
    if n == 0 {
        return Err(StatsError::NoTrials);
    }
    unit_open("delta", delta)?;
    Ok(((2.0 / delta).ln() / (2.0 * n as f64)).sqrt())
}

/// Smallest `n` whose per-arm half-width is at most `epsilon`.
pub fn required_trials(epsilon: f64, delta: f64) -> Result<u64, StatsError> {
    unit_open("epsilon", epsilon)?;
    unit_open("delta", delta)?;
    Ok(((2.0 / delta).ln() / (2.0 * epsilon * epsilon)).ceil() as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdvantageEstimate {
    pub p1_hat: f64,
    pub p0_hat: f64,
    pub adv_hat: f64,
    pub n: u64,
    pub epsilon: f64,
    pub delta: f64,
    pub interval: [f64; 2],
    pub ones1: u64,
    pub ones0: u64,
}

impl AdvantageEstimate {
    pub fn from_counts(ones1: u64, ones0: u64, n: u64, delta: f64) -> Result<Self, StatsError> {
        let epsilon = hoeffding_epsilon(n, delta)?;
        let p1_hat = ones1 as f64 / n as f64;
        let p0_hat = ones0 as f64 / n as f64;
        let adv_hat = p1_hat - p0_hat;
        Ok(Self {
            p1_hat,
            p0_hat,
            adv_hat,
            n,
            epsilon,
            delta,
            interval: [(adv_hat - 2.0 * epsilon).max(-1.0), (adv_hat + 2.0 * epsilon).min(1.0)],
            ones1,
            ones0,
        })
    }

    /// Half-width of the advantage interval before clamping.
    pub fn half_width(&self) -> f64 {
        2.0 * self.epsilon
    }
}

/// Counts for one arm, plus a digest over every trial record in seed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArmSummary {
    pub b: ChallengeBit,
    pub n: u64,
    pub ones: u64,
    pub records_digest: String,
}

/// Runs trials `0..n` of one arm. Seeds come from `trial_seed`, so the two
/// arms never share a tape and the result does not depend on scheduling.
pub fn run_arm(spec: &GameSpec, b: ChallengeBit, n: u64, master_seed: u64) -> Result<ArmSummary, StatsError> {
    if n == 0 {
        return Err(StatsError::NoTrials);
    }
    let outcomes: Vec<Result<(bool, [u8; 32]), StatsError>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(master_seed, b.is_one(), i);
            let record = run_trial(spec, b, seed).map_err(|source| StatsError::TrialFailed { b, seed, source })?;
            let bytes = serde_json::to_vec(&record).expect("trial record serializes");
            Ok((record.d.is_one(), Sha256::digest(bytes).into()))
        })
        .collect();
    let mut hasher = Sha256::new();
    let mut ones = 0;
    for o in outcomes {
        let (d, h) = o?;
        ones += d as u64;
        hasher.update(h);
    }
    Ok(ArmSummary { b, n, ones, records_digest: hex::encode(hasher.finalize()) })
}

/// Both arms plus the estimate.
pub fn estimate_with_arms(
    spec: &GameSpec,
    n: u64,
    delta: f64,
    master_seed: u64,
) -> Result<(AdvantageEstimate, [ArmSummary; 2]), StatsError> {
    unit_open("delta", delta)?;
    let one = run_arm(spec, ChallengeBit::One, n, master_seed)?;
    let zero = run_arm(spec, ChallengeBit::Zero, n, master_seed)?;
    let est = AdvantageEstimate::from_counts(one.ones, zero.ones, n, delta)?;
    Ok((est, [one, zero]))
}

pub fn estimate_advantage(
    spec: &GameSpec,
    n: u64,
    delta: f64,
    master_seed: u64,
) -> Result<AdvantageEstimate, StatsError> {
    estimate_with_arms(spec, n, delta, master_seed).map(|(e, _)| e)
}

/// `|adv_hat|` next to `k^{-c}` for one exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdComparison {
    pub c: f64,
    pub k_pow_neg_c: f64,
    pub abs_adv_hat: f64,
    /// Upper end of `|adv|`'s interval.
    pub abs_adv_upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub k: u32,
    pub estimate: AdvantageEstimate,
    pub thresholds: Vec<ThresholdComparison>,
}

/// The finite table only; no asymptotic claim is drawn from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegligibilitySweep {
    pub points: Vec<SweepPoint>,
    pub exponents: Vec<f64>,
    pub k_range: [u32; 2],
}

pub fn negligibility_sweep<F>(
    family: F,
    ks: &[u32],
    n: u64,
    delta: f64,
    master_seed: u64,
    exponents: &[f64],
) -> Result<NegligibilitySweep, StatsError>
where
    F: Fn(SecurityParameter) -> Result<GameSpec, String>,
{
    if ks.is_empty() || ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(StatsError::BadKList);
    }
    let mut points = Vec::with_capacity(ks.len());
    for &k in ks {
        let kp = SecurityParameter::new(k).map_err(|e| StatsError::SpecFamily { k, message: e.to_string() })?;
        let spec = family(kp).map_err(|message| StatsError::SpecFamily { k, message })?;
        let estimate = estimate_advantage(&spec, n, delta, master_seed)?;
        let abs_upper = estimate.interval[0].abs().max(estimate.interval[1].abs());
        let thresholds = exponents
            .iter()
            .map(|&c| ThresholdComparison {
                c,
                k_pow_neg_c: (k as f64).powf(-c),
                abs_adv_hat: estimate.adv_hat.abs(),
                abs_adv_upper: abs_upper,
            })
            .collect();
        points.push(SweepPoint { k, estimate, thresholds });
    }
    Ok(NegligibilitySweep {
        points,
        exponents: exponents.to_vec(),
        k_range: [ks[0], ks[ks.len() - 1]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planning_values() {
        assert_eq!(required_trials(0.05, 0.01).unwrap(), 1060);
        assert_eq!(required_trials(0.02, 0.01).unwrap(), 6623);
        assert_eq!(required_trials(0.5, 0.5).unwrap(), 3);
        assert!(required_trials(0.0, 0.5).is_err());
        assert!(required_trials(0.1, 1.0).is_err());
    }

    #[test]
    fn planned_n_meets_epsilon() {
        for &(eps, delta) in &[(0.05, 0.01), (0.02, 0.01), (0.1, 0.2), (0.01, 0.05)] {
            let n = required_trials(eps, delta).unwrap();
            assert!(hoeffding_epsilon(n, delta).unwrap() <= eps);
            assert!(hoeffding_epsilon(n - 1, delta).unwrap() > eps);
        }
    }

    #[test]
    fn interval_is_clamped() {
        let e = AdvantageEstimate::from_counts(10, 0, 10, 0.01).unwrap();
        assert_eq!(e.adv_hat, 1.0);
        assert_eq!(e.interval[1], 1.0);
        assert!(e.interval[0] >= -1.0);
    }
}
