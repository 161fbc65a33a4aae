//! Runs the acceptance criteria given on the command line (all by default).

use incidence_toric::cli::{run_criterion, RunConfig, CRITERIA};

fn main() {
    let ids: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() { (1..=CRITERIA).collect() } else { ids };
    let cfg = RunConfig::default();
    for id in ids {
        println!("{}", run_criterion(id, &cfg).line());
    }
}
