//! Config-driven runs: a single report, a reduction check, and a small
//! matrix with its CSV summary. Reports re-run from their own config.

use gamelab::harness::{self, Command, MatrixConfig, RunConfig};
use gamelab::model::AttackModel;
use gamelab::reductions::Direction;

fn main() {
    let run = RunConfig::new(AttackModel::Cca2, "xor_malleable", "bitflip", 4).trials(1000).seed(3);
    let report = harness::execute(&run).unwrap();
    println!("{}", String::from_utf8(report.to_bytes()).unwrap());

    let rerun = harness::execute(&report.config).unwrap();
    println!("re-run body identical: {}", rerun.body_bytes() == report.body_bytes());

    let mut reduce = RunConfig::new(AttackModel::Cpa, "leaky_lsb", "lsb_extractor", 4).exact();
    reduce.command = Command::Reduce;
    reduce.direction = Some(Direction::IndFromCss);
    let check = harness::execute(&reduce).unwrap();
    println!("{}", serde_json::to_string(&check.body).unwrap());

    let matrix = MatrixConfig::parse(
        r#"{"grid": {"schemes": ["identity", "ideal_table"], "adversaries": ["replay", "lsb_extractor"], "atks": ["cpa"], "k": 4, "exact": true}}"#,
    )
    .unwrap();
    let result = harness::run_matrix(&matrix);
    print!("{}", result.to_csv_string());
    println!("exit code {}", result.exit_code());
}
