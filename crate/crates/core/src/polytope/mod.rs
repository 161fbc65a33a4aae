//! The lattice polytope spanned by the columns of an integer matrix.

mod face;
mod triangulation;
mod volume;

use serde::Serialize;

pub use face::{is_face, neighborliness, supporting_hyperplane_ht, FaceCertificate, HtHyperplane, Neighborliness};
pub use triangulation::{placing_triangulation, placing_triangulation_capped, placing_triangulation_in_order, Triangulation};
pub use volume::{lattice_index, normalized_volume, simplex_volumes, VolumeLattice};

use crate::error::{Error, Result};
use crate::incidence::IncidenceMatrix;

/// Distinct integer points, one per column of the source matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointConfig {
    pub points: Vec<Vec<i64>>,
    pub labels: Vec<String>,
}

impl PointConfig {
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let labels = (1..=points.len()).map(|i| i.to_string()).collect();
        PointConfig::with_labels(points, labels)
    }

    pub fn with_labels(points: Vec<Vec<i64>>, labels: Vec<String>) -> Result<Self> {
        if labels.len() != points.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                got: labels.len(),
            });
        }
        let dim = points.first().map_or(0, Vec::len);
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        let mut sorted = points.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::PreconditionFailed("points must be distinct".into()));
        }
        Ok(PointConfig { points, labels })
    }

    /// The columns of the incidence matrix, labelled by their k-subsets.
    pub fn from_incidence(a: &IncidenceMatrix) -> Self {
        let rows = a.dense();
        let points = (0..a.cols()).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        PointConfig {
            points,
            labels: a.col_labels.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// Points with a trailing 1, so affine questions become linear ones.
    pub(crate) fn homogenized(&self) -> Vec<Vec<i64>> {
        self.points
            .iter()
            .map(|p| {
                let mut q = p.clone();
                q.push(1);
                q
            })
            .collect()
    }

    /// Dimension of the affine hull.
    pub fn affine_dim(&self) -> usize {
        let m = crate::exactmath::IntMatrix::from_rows(&self.homogenized());
        crate::exactmath::rank_q(&m).saturating_sub(1)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}
