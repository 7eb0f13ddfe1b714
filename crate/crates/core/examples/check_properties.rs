//! Run every registered property over random and enumerated models.
//!
//! `cargo run --release --example check_properties -- 200 7` runs 200 trials
//! with seed 7.

use ceteris::oracle::{check_property, CheckConfig, PROPERTIES};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|a| a.parse().ok()).unwrap_or(100);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(0);
    let cfg = CheckConfig {
        trials,
        seed,
        ..Default::default()
    };
    let mut failed = 0;
    for id in PROPERTIES {
        let report = check_property(id, &cfg).unwrap();
        if !report.passed() {
            failed += 1;
        }
        print!("{report}");
    }
    std::process::exit(i32::from(failed > 0));
}
