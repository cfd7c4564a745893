use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::model::AttackModel;
use crate::reductions::{Direction, TieBreakMode};
use crate::stats::required_trials;

/// Confidence parameter used when only a trial count is given.
pub const DEFAULT_DELTA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    #[default]
    Run,
    Reduce,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameKind {
    Ind,
    Css,
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameKind::Ind => "ind",
            GameKind::Css => "css",
        })
    }
}

impl FromStr for GameKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ind" => Ok(GameKind::Ind),
            "css" => Ok(GameKind::Css),
            other => Err(format!("unknown game {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Pretty,
    Compact,
}

/// Everything needed to reproduce one report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Command,
    /// Inferred from the adversary when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub game: Option<GameKind>,
    pub atk: AttackModel,
    pub scheme: String,
    pub adversary: String,
    /// CSS only; defaults to `uniform`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampler: Option<String>,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub exact: bool,
    #[serde(default)]
    pub tie_break: TieBreakMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    /// Sweep only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ks: Vec<u32>,
    /// Sweep only: the `c` in `k^{-c}`; defaults to `[1, 2]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exponents: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: ReportFormat,
}

/// How a configuration measures advantage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Plan {
    Exact,
    MonteCarlo { n: u64, delta: f64 },
}

impl RunConfig {
    pub fn new(atk: AttackModel, scheme: &str, adversary: &str, k: u32) -> Self {
        Self {
            command: Command::Run,
            game: None,
            atk,
            scheme: scheme.into(),
            adversary: adversary.into(),
            sampler: None,
            k,
            trials: None,
            epsilon: None,
            delta: None,
            seed: 0,
            exact: false,
            tie_break: TieBreakMode::default(),
            direction: None,
            ks: Vec::new(),
            exponents: Vec::new(),
            output: None,
            format: ReportFormat::default(),
        }
    }

    pub fn exact(mut self) -> Self {
        self.exact = true;
        self
    }

    pub fn trials(mut self, n: u64) -> Self {
        self.trials = Some(n);
        self
    }

    pub fn sampler(mut self, id: &str) -> Self {
        self.sampler = Some(id.into());
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Exact mode takes no trial count; otherwise exactly one of `trials`
    /// or `epsilon` (which needs `delta`) is required.
    pub fn plan(&self) -> Result<Plan, HarnessError> {
        let bad = |m: &str| Err(HarnessError::Config(m.into()));
        if self.exact {
            if self.trials.is_some() || self.epsilon.is_some() || self.delta.is_some() {
                return bad("exact mode takes no trials, epsilon or delta");
            }
            return Ok(Plan::Exact);
        }
        match (self.trials, self.epsilon, self.delta) {
            (Some(_), Some(_), _) => bad("give either trials or epsilon/delta, not both"),
            (None, None, _) => bad("give trials, epsilon/delta, or exact"),
            (Some(0), _, _) => bad("trials must be at least 1"),
            (Some(n), None, delta) => {
                let delta = delta.unwrap_or(DEFAULT_DELTA);
                if !(delta > 0.0 && delta < 1.0) {
                    return bad("delta must lie strictly between 0 and 1");
                }
                Ok(Plan::MonteCarlo { n, delta })
            }
            (None, Some(_), None) => bad("epsilon needs delta"),
            (None, Some(eps), Some(delta)) => {
                let n = required_trials(eps, delta).map_err(|e| HarnessError::Config(e.to_string()))?;
                Ok(Plan::MonteCarlo { n, delta })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> RunConfig {
        RunConfig::new(AttackModel::Cpa, "identity", "replay", 4)
    }

    #[test]
    fn plan_resolution() {
        assert_eq!(base().exact().plan().unwrap(), Plan::Exact);
        assert_eq!(base().trials(10).plan().unwrap(), Plan::MonteCarlo { n: 10, delta: DEFAULT_DELTA });
        let mut c = base();
        c.epsilon = Some(0.05);
        c.delta = Some(0.01);
        assert_eq!(c.plan().unwrap(), Plan::MonteCarlo { n: 1060, delta: 0.01 });
        c.trials = Some(5);
        assert!(c.plan().is_err());
        assert!(base().plan().is_err());
        assert!(base().exact().trials(3).plan().is_err());
        let mut c = base();
        c.epsilon = Some(0.05);
        assert!(c.plan().is_err());
    }

    #[test]
    fn config_json_round_trips() {
        let c = base().sampler("uniform").trials(100).seed(7);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), c);
        assert!(serde_json::from_str::<RunConfig>(r#"{"atk":"cpa","scheme":"a","adversary":"b","k":4,"bogus":1}"#).is_err());
    }
}
