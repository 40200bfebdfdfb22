//! Criteria 1 to 9 in-process, criterion 10 by running the binary twice.
//! Prints one line per criterion and fails if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use slcc_core::acceptance::{self, CriterionResult, DETERMINISM};
use slcc_core::report::Check;

fn slcc_json() -> Result<Vec<u8>, String> {
    let out =
        Command::new(env!("CARGO_BIN_EXE_slcc")).args(["acceptance", "--format", "json"]).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("exit status {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> CriterionResult {
    let check = match (slcc_json(), slcc_json()) {
        (Ok(a), Ok(b)) => Check::new("`slcc acceptance --format json` twice, byte-identical", a == b && !a.is_empty())
            .with_detail(format!("{} bytes", a.len())),
        (Err(e), _) | (_, Err(e)) => Check::new("`slcc acceptance --format json` runs", false).with_detail(e),
    };
    CriterionResult::new(DETERMINISM.0, DETERMINISM.1, vec![check])
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut report = acceptance::run(None, None);
    report.push(determinism());
    println!("{report}");
    println!("acceptance: {} criteria in {:.2?}", report.criteria.len(), start.elapsed());
    if report.pass && report.criteria.len() == 10 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
