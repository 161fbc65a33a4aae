use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{placing_triangulation, PointConfig, Triangulation};
use crate::error::{Error, Result};
use crate::exactmath::{det_small, kernel_basis, rank_q, IntMatrix, LatticeBasis};

/// Lattice against which simplex volumes are normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeLattice {
    /// All integer points of the affine hull's direction space.
    Euclidean,
    /// The lattice generated by differences of the configuration's points.
    ColumnLattice,
}

fn differences(cfg: &PointConfig) -> Vec<Vec<BigInt>> {
    let base = &cfg.points[0];
    cfg.points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect()
}

/// A basis of the chosen affine lattice, as columns of an `N x dim` matrix.
pub(crate) fn affine_lattice(cfg: &PointConfig, lattice: VolumeLattice) -> Result<LatticeBasis> {
    let n = cfg.ambient_dim();
    let diffs = differences(cfg);
    let column = LatticeBasis::from_generators(n, &diffs)?;
    match lattice {
        VolumeLattice::ColumnLattice => Ok(column),
        VolumeLattice::Euclidean => {
            if column.is_empty() {
                return Ok(column);
            }
            // integer vectors orthogonal to everything the differences annihilate
            let left = kernel_basis(&column.as_matrix().transpose());
            if left.is_empty() {
                let id = (0..n)
                    .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                    .collect();
                return LatticeBasis::new(n, id);
            }
            let rows = IntMatrix::from_columns(n, &left.basis_vectors)?.transpose();
            Ok(kernel_basis(&rows))
        }
    }
}

/// Rows on which the basis is nonsingular, with the basis minor there.
fn coordinate_rows(basis: &LatticeBasis) -> (Vec<usize>, BigInt) {
    let m = basis.as_matrix();
    let mut rows: Vec<usize> = Vec::new();
    for i in 0..m.rows() {
        rows.push(i);
        let sub = m.select(&rows, &(0..m.cols()).collect::<Vec<_>>());
        if rank_q(&sub) < rows.len() {
            rows.pop();
        }
        if rows.len() == m.cols() {
            break;
        }
    }
    let minor = m.select(&rows, &(0..m.cols()).collect::<Vec<_>>());
    let det = minor.determinant().expect("square").abs();
    (rows, det)
}

/// Normalized volume of every simplex of `tri`, in simplex order.
pub fn simplex_volumes(cfg: &PointConfig, tri: &Triangulation, lattice: VolumeLattice) -> Result<Vec<BigInt>> {
    if cfg.is_empty() {
        return Ok(Vec::new());
    }
    let basis = affine_lattice(cfg, lattice)?;
    if basis.rank() != tri.dim {
        return Err(Error::DimensionMismatch {
            expected: basis.rank(),
            got: tri.dim,
        });
    }
    let (rows, base_det) = coordinate_rows(&basis);
    let d = tri.dim;
    tri.simplices
        .par_iter()
        .map(|s| {
            if s.len() != d + 1 {
                return Err(Error::DimensionMismatch {
                    expected: d + 1,
                    got: s.len(),
                });
            }
            let v0 = &cfg.points[s[0]];
            let mut entries = Vec::with_capacity(d * d);
            for &r in &rows {
                for &j in &s[1..] {
                    entries.push(cfg.points[j][r] - v0[r]);
                }
            }
            let det = det_small(d, &entries).abs();
            let (q, rem) = det.div_rem(&base_det);
            if !rem.is_zero() {
                return Err(Error::PreconditionFailed("simplex is not a lattice simplex".into()));
            }
            Ok(q)
        })
        .collect()
}

/// Normalized volume of the convex hull via the placing triangulation.
pub fn normalized_volume(cfg: &PointConfig, lattice: VolumeLattice) -> Result<BigInt> {
    let tri = placing_triangulation(cfg)?;
    Ok(simplex_volumes(cfg, &tri, lattice)?.into_iter().sum())
}

/// Index of the column lattice in the euclidean lattice.
pub fn lattice_index(cfg: &PointConfig) -> Result<BigInt> {
    let col = affine_lattice(cfg, VolumeLattice::ColumnLattice)?;
    let euc = affine_lattice(cfg, VolumeLattice::Euclidean)?;
    let (rows, euc_det) = coordinate_rows(&euc);
    let m = col.as_matrix().select(&rows, &(0..col.rank()).collect::<Vec<_>>());
    let det = m.determinant()?.abs();
    if det.is_zero() {
        return Ok(BigInt::one());
    }
    Ok(det / euc_det)
}
