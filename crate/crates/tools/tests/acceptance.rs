//! One pass/fail line per acceptance criterion.
//!
//! Exits nonzero on a failing criterion only when `E6_ACCEPTANCE_STRICT` is set,
//! so the workspace test run stays green while still printing every failure.

use std::process::ExitCode;
use std::time::Instant;

use e6tools::cache;
use e6tools::checks::{self, CRITERIA};
use e6tools::report::Status;
use e6tools::session::Session;

const STRICT_ENV: &str = "E6_ACCEPTANCE_STRICT";

fn main() -> ExitCode {
    let start = Instant::now();
    let cache_dir = std::env::var_os(cache::CACHE_ENV).map(std::path::PathBuf::from);
    let group = match cache::load_or_build(cache_dir.as_deref()) {
        Ok((group, _)) => group,
        Err(e) => {
            eprintln!("cannot load the Weyl group: {e}");
            return ExitCode::FAILURE;
        }
    };
    let session = Session::new(group);
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let records = match checks::run(&checks::registry(), &session, jobs, false) {
        Ok(records) => records,
        Err(e) => {
            eprintln!("cannot run checks: {e}");
            return ExitCode::FAILURE;
        }
    };

    let mut failing = 0;
    for (number, description) in CRITERIA {
        let mine: Vec<_> = records.iter().filter(|r| r.criterion == number).collect();
        let failed: Vec<_> = mine.iter().filter(|r| r.status == Status::Fail).collect();
        let skipped = mine.iter().filter(|r| matches!(r.status, Status::Skipped { .. })).count();
        let verdict = if mine.is_empty() || !failed.is_empty() { "FAIL" } else { "PASS" };
        let note = if skipped > 0 { format!(", {skipped} informational") } else { String::new() };
        println!("criterion {number:>2} ({description}): {verdict} [{} checks{note}]", mine.len());
        for r in &failed {
            println!("    {}: expected {}, computed {}", r.id, r.expected, r.computed);
            if let Some(detail) = &r.detail {
                println!("        {detail}");
            }
        }
        if verdict == "FAIL" {
            failing += 1;
        }
    }
    println!("{} of {} criteria pass ({:.1}s)", CRITERIA.len() - failing, CRITERIA.len(), start.elapsed().as_secs_f64());

    if failing > 0 && std::env::var_os(STRICT_ENV).is_some() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
