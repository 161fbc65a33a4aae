//! Runs every acceptance criterion and prints one line each. Criteria
//! listed in `KNOWN_FAILURES` are reported but do not fail the run.

use incidence_toric::cli::{run_criterion, RunConfig, CRITERIA, KNOWN_FAILURES};

fn main() {
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let cfg = RunConfig::default();
    let mut unexpected = Vec::new();
    for id in 1..=CRITERIA {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let r = run_criterion(id, &cfg);
        let known = KNOWN_FAILURES.contains(&id);
        let note = match (r.passed, known) {
            (false, true) => "  (known failure)",
            (true, true) => "  (known failure now passes)",
            _ => "",
        };
        println!("{}{note}", r.line());
        if !r.passed && !known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
