use serde::Serialize;

use crate::error::{Error, Result};
use crate::threepoint::{DEFAULT_MAX_DET_N, DEFAULT_MAX_N};
use crate::toric::ToricBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
    /// Only for `incidence matrix`.
    Csv,
}

/// Work caps and output settings shared by every command.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub toric: ToricBudget,
    /// Number of minors a gcd-of-minors computation may enumerate.
    pub minor_sample: u64,
    /// Largest triangulation a volume computation may produce.
    pub volume_simplices: u64,
    /// Number of face LPs a neighborliness scan may solve.
    pub face_lps: u64,
    /// Number of candidate supports a minimum-support scan may enumerate.
    pub support_scan: u64,
    pub max_derangement_n: usize,
    pub max_det_n: usize,
    pub format: OutputFormat,
    /// Worker threads; `None` uses one per core.
    pub workers: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            toric: ToricBudget::default(),
            minor_sample: 5_000_000,
            volume_simplices: 2_000_000,
            face_lps: 5_000_000,
            support_scan: 10_000_000,
            max_derangement_n: DEFAULT_MAX_N,
            max_det_n: DEFAULT_MAX_DET_N,
            format: OutputFormat::Json,
            workers: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let caps = [
            self.toric.pair_queue,
            self.toric.box_points,
            self.toric.fiber_points,
            self.minor_sample,
            self.volume_simplices,
            self.face_lps,
            self.support_scan,
        ];
        if caps.contains(&0) || self.max_derangement_n == 0 || self.max_det_n == 0 || self.workers == Some(0) {
            return Err(Error::BadParameters("budgets and worker count must be positive".into()));
        }
        Ok(())
    }
}
