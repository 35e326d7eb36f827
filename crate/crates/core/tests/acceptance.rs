//! Runs the twelve acceptance checks and prints one line per check.
//!
//! Pass check numbers as arguments to run a subset, e.g.
//! `cargo test -p bplab --test acceptance -- 1 9`.

use std::process::ExitCode;

use bplab::verify;

fn main() -> ExitCode {
    let ids: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() { (1..=12).collect() } else { ids };
    let mut failed = 0;
    let mut known = 0;
    for id in ids {
        let Some(o) = verify::criterion(id) else {
            eprintln!("no check {id}");
            return ExitCode::FAILURE;
        };
        println!("{o}");
        failed += usize::from(o.is_unexpected_failure());
        known += usize::from(!o.passed && !o.is_unexpected_failure());
    }
    if failed == 0 {
        if known > 0 {
            println!("{known} check(s) failed on a documented known issue; no other failures");
        } else {
            println!("all acceptance checks passed");
        }
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance check(s) failed");
        ExitCode::FAILURE
    }
}
