//! Config-driven runs that produce self-describing JSON reports.
//!
//! Exit codes: 0 success, 1 trial or cell failure, 2 invalid config or
//! unknown id, 3 exact mode infeasible.

mod config;
mod matrix;

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{Command, GameKind, Plan, ReportFormat, RunConfig, DEFAULT_DELTA};
pub use matrix::{run_matrix, MatrixCell, MatrixConfig, MatrixGrid, MatrixReport, SummaryRow};

use crate::corpus::{self, AnyAdversary, CorpusError};
use crate::games::{exact_advantage, Experiment, GameError, GameSpec, Rational};
use crate::model::SecurityParameter;
use crate::reductions::{
    check_reduction_identity, css_from_ind, ind_from_css, AdvantageValue, Direction,
    MeasuredAdvantage, ResidualReport, TieBreakMode,
};
use crate::stats::{estimate_with_arms, negligibility_sweep, AdvantageEstimate, ArmSummary, NegligibilitySweep, StatsError};

pub const SCHEMA_VERSION: &str = "1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("exact mode infeasible: needs {required} coin bits, limit is {limit}")]
    Infeasible { required: u32, limit: u32 },
    #[error("trial failed: {0}")]
    Trial(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Corpus(_) => 2,
            HarnessError::Infeasible { .. } => 3,
            HarnessError::Trial(_) | HarnessError::Io(_) => 1,
        }
    }
}

impl From<GameError> for HarnessError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::EnumerationInfeasible { required, limit } => HarnessError::Infeasible { required, limit },
            other => HarnessError::Trial(other.to_string()),
        }
    }
}

impl From<StatsError> for HarnessError {
    fn from(e: StatsError) -> Self {
        match e {
            StatsError::NoTrials | StatsError::OutOfRange { .. } | StatsError::BadKList => {
                HarnessError::Config(e.to_string())
            }
            StatsError::SpecFamily { .. } => HarnessError::Config(e.to_string()),
            StatsError::TrialFailed { .. } => HarnessError::Trial(e.to_string()),
        }
    }
}

/// An advantage measurement, exact or estimated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Measurement {
    Exact {
        coin_bits: u32,
        tapes: u64,
        ones1: u64,
        ones0: u64,
        p1: Rational,
        p0: Rational,
        advantage: Rational,
    },
    MonteCarlo {
        estimate: AdvantageEstimate,
        arms: [ArmSummary; 2],
    },
}

impl Measurement {
    pub fn value(&self) -> AdvantageValue {
        match self {
            Measurement::Exact { advantage, .. } => AdvantageValue::Exact { value: *advantage },
            Measurement::MonteCarlo { estimate, .. } => AdvantageValue::Estimate { estimate: estimate.clone() },
        }
    }

    /// The advantage as a float, for summaries.
    pub fn advantage_f64(&self) -> f64 {
        match self {
            Measurement::Exact { advantage, .. } => advantage.to_f64(),
            Measurement::MonteCarlo { estimate, .. } => estimate.adv_hat,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameMeasurement {
    pub game: Experiment,
    pub description: String,
    pub adversary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampler: Option<String>,
    pub measurement: Measurement,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Run(GameMeasurement),
    Reduction {
        direction: Direction,
        tie_break: TieBreakMode,
        original: GameMeasurement,
        constructed: GameMeasurement,
        check: ResidualReport,
    },
    Sweep {
        sweep: NegligibilitySweep,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub tool_version: String,
    pub config: RunConfig,
    pub body: ReportBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

impl Report {
    /// The report without its wall-clock field, in the config's format.
    pub fn body_bytes(&self) -> Vec<u8> {
        let mut r = self.clone();
        r.wall_clock_ms = None;
        r.to_bytes()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = match self.config.format {
            ReportFormat::Pretty => serde_json::to_vec_pretty(self),
            ReportFormat::Compact => serde_json::to_vec(self),
        }
        .expect("report serializes");
        out.push(b'\n');
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<(), HarnessError> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }
}

/// Reads a config file. A full report is accepted too; its embedded
/// config is used.
pub fn parse_config(text: &str) -> Result<RunConfig, HarnessError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| HarnessError::Config(format!("unparseable config: {e}")))?;
    let inner = match value.get("schema_version") {
        Some(_) => value.get("config").cloned().ok_or_else(|| HarnessError::Config("report has no config".into()))?,
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| HarnessError::Config(e.to_string()))
}

fn security_parameter(k: u32) -> Result<SecurityParameter, HarnessError> {
    SecurityParameter::new(k).map_err(|e| HarnessError::Config(e.to_string()))
}

fn sampler_id(config: &RunConfig) -> &str {
    config.sampler.as_deref().unwrap_or("uniform")
}

/// Builds the game a `run` config describes.
pub fn build_game(config: &RunConfig, k: SecurityParameter) -> Result<GameSpec, HarnessError> {
    let scheme = corpus::build_scheme(&config.scheme, k)?;
    let adversary = corpus::build_adversary(&config.adversary)?;
    let game = config.game.unwrap_or(match adversary {
        AnyAdversary::Ind(_) => GameKind::Ind,
        AnyAdversary::Css(_) => GameKind::Css,
    });
    match (game, adversary) {
        (GameKind::Ind, AnyAdversary::Ind(a)) => {
            if config.sampler.is_some() {
                return Err(HarnessError::Config("the IND game takes no sampler".into()));
            }
            Ok(GameSpec::ind(scheme, a, config.atk))
        }
        (GameKind::Css, AnyAdversary::Css(a)) => {
            let sampler = corpus::build_sampler(sampler_id(config))?;
            Ok(GameSpec::css(scheme, a, sampler, config.atk))
        }
        (game, _) => Err(HarnessError::Config(format!(
            "adversary {} cannot play the {game} game",
            config.adversary
        ))),
    }
}

/// Measures a game's advantage according to `plan`.
pub fn measure(spec: &GameSpec, plan: Plan, seed: u64) -> Result<Measurement, HarnessError> {
    Ok(match plan {
        Plan::Exact => {
            let e = exact_advantage(spec)?;
            Measurement::Exact {
                coin_bits: e.coin_bits,
                tapes: e.p1.tapes,
                ones1: e.p1.ones,
                ones0: e.p0.ones,
                p1: e.p1.value(),
                p0: e.p0.value(),
                advantage: e.advantage(),
            }
        }
        Plan::MonteCarlo { n, delta } => {
            let (estimate, arms) = estimate_with_arms(spec, n, delta, seed)?;
            Measurement::MonteCarlo { estimate, arms }
        }
    })
}

fn game_measurement(spec: &GameSpec, plan: Plan, seed: u64) -> Result<GameMeasurement, HarnessError> {
    let (adversary, sampler) = match &spec.contestant {
        crate::games::Contestant::Ind(a) => (a.id(), None),
        crate::games::Contestant::Css { adversary, sampler } => (adversary.id(), Some(sampler.id())),
    };
    Ok(GameMeasurement {
        game: spec.experiment(),
        description: spec.describe(),
        adversary,
        sampler,
        measurement: measure(spec, plan, seed)?,
    })
}

/// Runs one config and returns its report, stamped with wall-clock time.
pub fn execute(config: &RunConfig) -> Result<Report, HarnessError> {
    let start = Instant::now();
    let body = match config.command {
        Command::Run => run_body(config)?,
        Command::Reduce => reduce_body(config)?,
        Command::Sweep => sweep_body(config)?,
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION.into(),
        tool_version: TOOL_VERSION.into(),
        config: config.clone(),
        body,
        wall_clock_ms: Some(start.elapsed().as_millis() as u64),
    })
}

fn run_body(config: &RunConfig) -> Result<ReportBody, HarnessError> {
    let plan = config.plan()?;
    let spec = build_game(config, security_parameter(config.k)?)?;
    Ok(ReportBody::Run(game_measurement(&spec, plan, config.seed)?))
}

fn reduce_body(config: &RunConfig) -> Result<ReportBody, HarnessError> {
    let plan = config.plan()?;
    let k = security_parameter(config.k)?;
    let direction = config
        .direction
        .ok_or_else(|| HarnessError::Config("reduce needs a direction".into()))?;
    if config.game.is_some() {
        return Err(HarnessError::Config("reduce takes its games from the direction".into()));
    }
    let scheme = corpus::build_scheme(&config.scheme, k)?;
    let sampler = corpus::build_sampler(sampler_id(config))?;
    let (original, constructed) = match (direction, corpus::build_adversary(&config.adversary)?) {
        (Direction::CssFromInd, AnyAdversary::Ind(a)) => (
            GameSpec::ind(scheme.clone(), a.clone(), config.atk),
            GameSpec::css(scheme, Arc::new(css_from_ind(a)), sampler, config.atk),
        ),
        (Direction::IndFromCss, AnyAdversary::Css(b)) => (
            GameSpec::css(scheme.clone(), b.clone(), sampler, config.atk),
            GameSpec::ind(scheme, Arc::new(ind_from_css(b, config.tie_break)), config.atk),
        ),
        (direction, _) => {
            return Err(HarnessError::Config(format!(
                "adversary {} does not fit direction {direction}",
                config.adversary
            )))
        }
    };
    let original = game_measurement(&original, plan, config.seed)?;
    let constructed = game_measurement(&constructed, plan, config.seed)?;
    let side = |m: &GameMeasurement| MeasuredAdvantage {
        scheme: config.scheme.clone(),
        atk: config.atk,
        k: config.k,
        value: m.measurement.value(),
    };
    let check = check_reduction_identity(&side(&original), &side(&constructed))
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    Ok(ReportBody::Reduction {
        direction,
        tie_break: config.tie_break,
        original,
        constructed,
        check,
    })
}

fn sweep_body(config: &RunConfig) -> Result<ReportBody, HarnessError> {
    let (n, delta) = match config.plan()? {
        Plan::MonteCarlo { n, delta } => (n, delta),
        Plan::Exact => return Err(HarnessError::Config("sweep is Monte Carlo only".into())),
    };
    let ks = if config.ks.is_empty() { vec![config.k] } else { config.ks.clone() };
    let exponents = if config.exponents.is_empty() { vec![1.0, 2.0] } else { config.exponents.clone() };
    // Surface unknown ids as config errors before any trial runs.
    corpus::build_adversary(&config.adversary)?;
    for &k in &ks {
        build_game(config, security_parameter(k)?)?;
    }
    let sweep = negligibility_sweep(
        |k| build_game(config, k).map_err(|e| e.to_string()),
        &ks,
        n,
        delta,
        config.seed,
        &exponents,
    )?;
    Ok(ReportBody::Sweep { sweep })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::AttackModel;

    #[test]
    fn exact_run_reports_rational() {
        let r = execute(&RunConfig::new(AttackModel::Cpa, "identity", "replay", 4).exact()).unwrap();
        let ReportBody::Run(m) = r.body else { panic!() };
        let Measurement::Exact { advantage, .. } = m.measurement else { panic!() };
        assert_eq!(advantage.to_string(), "1/1");
    }

    #[test]
    fn exit_codes() {
        let unknown = execute(&RunConfig::new(AttackModel::Cpa, "rsa", "replay", 4).exact()).unwrap_err();
        assert_eq!(unknown.exit_code(), 2);
        let no_plan = execute(&RunConfig::new(AttackModel::Cpa, "identity", "replay", 4)).unwrap_err();
        assert_eq!(no_plan.exit_code(), 2);
        let wrong_game = RunConfig { game: Some(GameKind::Css), ..RunConfig::new(AttackModel::Cpa, "identity", "replay", 4).exact() };
        assert_eq!(execute(&wrong_game).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn report_can_be_read_back_as_config() {
        let c = RunConfig::new(AttackModel::Cca2, "xor_malleable", "bitflip", 4).trials(50).seed(3);
        let r = execute(&c).unwrap();
        let text = String::from_utf8(r.to_bytes()).unwrap();
        assert_eq!(parse_config(&text).unwrap(), c);
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), r);
    }
}
