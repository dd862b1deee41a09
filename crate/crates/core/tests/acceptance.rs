//! Acceptance run: one line per criterion, non-zero exit on any failure.

use std::process::ExitCode;

use arcforge_core::verify::{run_verify, VerifyReport};

const SURFACE: &str = "torus-2-marked";
/// Compared against `BOUND + 2` inside the suite.
const BOUND: usize = 10;

fn run_with(threads: usize) -> VerifyReport {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    pool.install(|| run_verify(SURFACE, BOUND)).expect("verification suite runs")
}

fn main() -> ExitCode {
    let first = run_with(2);
    let second = run_with(4);
    let same = serde_json::to_string(&first).unwrap() == serde_json::to_string(&second).unwrap();

    let mut failed = 0;
    for row in &first.rows {
        let mut passed = row.passed;
        let mut detail = row.detail.clone();
        if row.id == 11 {
            passed &= same;
            detail =
                format!("{detail}; full reports with 2 and 4 threads {}", if same { "identical" } else { "differ" });
        }
        println!("criterion {:>2}: {} ({}) {}", row.id, if passed { "PASS" } else { "FAIL" }, row.name, detail);
        failed += usize::from(!passed);
    }
    println!("acceptance: {} of {} criteria passed", first.rows.len() - failed, first.rows.len());
    if failed == 0 && first.rows.len() == 11 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
