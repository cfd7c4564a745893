use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{execute, HarnessError, Measurement, Report, ReportBody, RunConfig, SCHEMA_VERSION, TOOL_VERSION};
use crate::corpus::{self, AnyAdversary};
use crate::model::AttackModel;

/// A cross product of corpus entries. Omitted lists mean "every registered entry".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixGrid {
    #[serde(default)]
    pub schemes: Vec<String>,
    #[serde(default)]
    pub adversaries: Vec<String>,
    #[serde(default)]
    pub samplers: Vec<String>,
    #[serde(default)]
    pub atks: Vec<AttackModel>,
    pub k: u32,
    #[serde(default)]
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixConfig {
    #[serde(default)]
    pub cells: Vec<RunConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<MatrixGrid>,
}

fn or_all(list: &[String], all: impl Iterator<Item = &'static str>) -> Vec<String> {
    if list.is_empty() {
        all.map(String::from).collect()
    } else {
        list.to_vec()
    }
}

impl MatrixGrid {
    /// Cells in scheme, adversary, sampler, atk order. CSS adversaries are
    /// crossed with every sampler; unknown adversary ids are kept so that
    /// their cells fail individually.
    pub fn expand(&self) -> Vec<RunConfig> {
        let schemes = or_all(&self.schemes, corpus::scheme_ids());
        let adversaries = or_all(
            &self.adversaries,
            corpus::ind_adversary_ids().chain(corpus::css_adversary_ids()),
        );
        let samplers = or_all(&self.samplers, corpus::sampler_ids());
        let atks = if self.atks.is_empty() { AttackModel::ALL.to_vec() } else { self.atks.clone() };
        let mut cells = Vec::new();
        for scheme in &schemes {
            for adversary in &adversaries {
                let sampler_choices: Vec<Option<String>> = match corpus::build_adversary(adversary) {
                    Ok(AnyAdversary::Css(_)) => samplers.iter().cloned().map(Some).collect(),
                    _ => vec![None],
                };
                for sampler in &sampler_choices {
                    for &atk in &atks {
                        let mut c = RunConfig::new(atk, scheme, adversary, self.k);
                        c.sampler = sampler.clone();
                        c.exact = self.exact;
                        c.trials = self.trials;
                        c.epsilon = self.epsilon;
                        c.delta = self.delta;
                        c.seed = self.seed;
                        cells.push(c);
                    }
                }
            }
        }
        cells
    }
}

impl MatrixConfig {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::Config(format!("unparseable matrix config: {e}")))
    }

    /// Explicit cells first, then the grid's.
    pub fn cell_configs(&self) -> Vec<RunConfig> {
        let mut cells = self.cells.clone();
        if let Some(grid) = &self.grid {
            cells.extend(grid.expand());
        }
        cells
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixCell {
    pub index: usize,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub exit_code: i32,
}

/// One line of the summary table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub index: usize,
    pub command: String,
    pub atk: AttackModel,
    pub scheme: String,
    pub adversary: String,
    pub sampler: String,
    pub k: u32,
    pub mode: String,
    /// Exact rational or estimated `adv_hat`.
    pub advantage: String,
    pub interval_low: String,
    pub interval_high: String,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixReport {
    pub schema_version: String,
    pub tool_version: String,
    pub cells: Vec<MatrixCell>,
    pub summary: Vec<SummaryRow>,
}

impl MatrixReport {
    /// 0 if every cell succeeded, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.cells.iter().all(|c| c.exit_code == 0) {
            0
        } else {
            1
        }
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), HarnessError> {
        let mut w = csv::Writer::from_path(path).map_err(csv_io)?;
        for row in &self.summary {
            w.serialize(row).map_err(csv_io)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &self.summary {
            w.serialize(row).expect("summary row serializes");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
    }
}

fn csv_io(e: csv::Error) -> HarnessError {
    HarnessError::Io(std::io::Error::other(e))
}

fn summarize(cell: &MatrixCell) -> SummaryRow {
    let c = &cell.config;
    let (mode, advantage, lo, hi) = match cell.report.as_ref().map(|r| &r.body) {
        Some(ReportBody::Run(m)) => describe(&m.measurement),
        Some(ReportBody::Reduction { check, .. }) => (
            "reduction".into(),
            serde_json::to_string(&check.residual).expect("residual serializes"),
            String::new(),
            String::new(),
        ),
        Some(ReportBody::Sweep { .. }) => ("sweep".into(), String::new(), String::new(), String::new()),
        None => (String::new(), String::new(), String::new(), String::new()),
    };
    SummaryRow {
        index: cell.index,
        command: format!("{:?}", c.command).to_lowercase(),
        atk: c.atk,
        scheme: c.scheme.clone(),
        adversary: c.adversary.clone(),
        sampler: c.sampler.clone().unwrap_or_default(),
        k: c.k,
        mode,
        advantage,
        interval_low: lo,
        interval_high: hi,
        status: match &cell.error {
            None => "ok".into(),
            Some(e) => format!("error: {e}"),
        },
    }
}

fn describe(m: &Measurement) -> (String, String, String, String) {
    match m {
        Measurement::Exact { advantage, .. } => {
            ("exact".into(), advantage.to_string(), advantage.to_string(), advantage.to_string())
        }
        Measurement::MonteCarlo { estimate, .. } => (
            "monte_carlo".into(),
            format!("{:.6}", estimate.adv_hat),
            format!("{:.6}", estimate.interval[0]),
            format!("{:.6}", estimate.interval[1]),
        ),
    }
}

/// Runs every cell concurrently; a failing cell is recorded and the rest
/// still run. Output order follows the config. Cell reports carry no
/// wall-clock time so that the matrix report is reproducible.
pub fn run_matrix(config: &MatrixConfig) -> MatrixReport {
    let cells: Vec<MatrixCell> = config
        .cell_configs()
        .into_par_iter()
        .enumerate()
        .map(|(index, config)| match execute(&config) {
            Ok(mut report) => {
                report.wall_clock_ms = None;
                MatrixCell { index, config, report: Some(report), error: None, exit_code: 0 }
            }
            Err(e) => MatrixCell { index, config, report: None, error: Some(e.to_string()), exit_code: e.exit_code() },
        })
        .collect();
    let summary = cells.iter().map(summarize).collect();
    MatrixReport {
        schema_version: SCHEMA_VERSION.into(),
        tool_version: TOOL_VERSION.into(),
        cells,
        summary,
    }
}
