//! Placing (beneath-beyond) triangulations with exact visibility tests.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::PointConfig;
use crate::error::{Error, Result};
use crate::exactmath::{kernel_basis, rank_q, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triangulation {
    pub dim: usize,
    /// Sorted point indices, `dim + 1` per simplex.
    pub simplices: Vec<Vec<usize>>,
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

/// A boundary facet of the current hull: `verts` plus the opposite vertex
/// of its simplex, and a linear functional vanishing on `verts` and
/// negative on the opposite vertex. A point of the current span is beyond
/// the facet exactly when the functional is positive on it.
struct Facet {
    verts: Vec<usize>,
    opp: usize,
    normal: Vec<BigInt>,
}

fn dot(a: &[BigInt], b: &[i64]) -> BigInt {
    a.iter().zip(b).filter(|(_, &y)| y != 0).map(|(x, &y)| x * y).sum()
}

fn facet_normal(pts: &[Vec<i64>], verts: &[usize], opp: usize) -> Vec<BigInt> {
    let dim = pts[opp].len();
    let rows: Vec<Vec<i64>> = verts.iter().map(|&v| pts[v].clone()).collect();
    let kernel = if rows.is_empty() {
        (0..dim)
            .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect()
    } else {
        kernel_basis(&IntMatrix::from_rows(&rows)).basis_vectors
    };
    let v = kernel
        .into_iter()
        .find(|b| !dot(b, &pts[opp]).is_zero())
        .expect("opposite vertex lies off the facet span");
    if dot(&v, &pts[opp]).is_positive() {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

/// Placing triangulation inserting points in index order.
pub fn placing_triangulation(cfg: &PointConfig) -> Result<Triangulation> {
    placing_triangulation_in_order(cfg, &(0..cfg.len()).collect::<Vec<_>>())
}

/// Placing triangulation for an explicit insertion order (a permutation
/// of the point indices).
pub fn placing_triangulation_in_order(cfg: &PointConfig, order: &[usize]) -> Result<Triangulation> {
    triangulate(cfg, order, u64::MAX)
}

/// Placing triangulation in index order, failing once more than
/// `max_simplices` simplices exist.
pub fn placing_triangulation_capped(cfg: &PointConfig, max_simplices: u64) -> Result<Triangulation> {
    triangulate(cfg, &(0..cfg.len()).collect::<Vec<_>>(), max_simplices)
}

fn triangulate(cfg: &PointConfig, order: &[usize], max_simplices: u64) -> Result<Triangulation> {
    let mut seen = vec![false; cfg.len()];
    for &i in order {
        if i >= cfg.len() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::PreconditionFailed("insertion order must be a permutation".into()));
        }
    }
    if order.len() != cfg.len() {
        return Err(Error::PreconditionFailed("insertion order must be a permutation".into()));
    }
    let pts = cfg.homogenized();
    let Some((&first, rest)) = order.split_first() else {
        return Ok(Triangulation {
            dim: 0,
            simplices: Vec::new(),
        });
    };
    let mut simplices: Vec<Vec<usize>> = vec![vec![first]];
    let mut used: Vec<Vec<i64>> = vec![pts[first].clone()];
    let mut rank = 1;
    let mut boundary = vec![Facet {
        verts: Vec::new(),
        opp: first,
        normal: facet_normal(&pts, &[], first),
    }];
    for &p in rest {
        used.push(pts[p].clone());
        let new_rank = rank_q(&IntMatrix::from_rows(&used));
        if new_rank > rank {
            // p leaves the current span: cone over everything
            rank = new_rank;
            let mut next: Vec<(Vec<usize>, usize)> = boundary
                .iter()
                .map(|f| {
                    let mut v = f.verts.clone();
                    v.push(p);
                    v.sort_unstable();
                    (v, f.opp)
                })
                .collect();
            next.extend(simplices.iter().map(|s| (s.clone(), p)));
            for s in simplices.iter_mut() {
                s.push(p);
                s.sort_unstable();
            }
            boundary = next
                .into_iter()
                .map(|(verts, opp)| Facet {
                    normal: facet_normal(&pts, &verts, opp),
                    verts,
                    opp,
                })
                .collect();
            continue;
        }
        used.pop();
        let visible: Vec<bool> = boundary
            .iter()
            .map(|f| dot(&f.normal, &pts[p]).is_positive())
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        used.push(pts[p].clone());
        // ridges of visible facets seen once lie on the horizon
        let mut ridges: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for (f, _) in boundary.iter().zip(&visible).filter(|(_, &v)| v) {
            for (i, &drop) in f.verts.iter().enumerate() {
                let mut r = f.verts.clone();
                r.remove(i);
                ridges.entry(r).or_insert((drop, 0)).1 += 1;
            }
            let mut s = f.verts.clone();
            s.push(p);
            s.sort_unstable();
            simplices.push(s);
        }
        if simplices.len() as u64 > max_simplices {
            return Err(Error::BudgetExceeded {
                what: "triangulation simplices",
                limit: max_simplices,
            });
        }
        let mut kept: Vec<Facet> = boundary
            .into_iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f)
            .collect();
        let mut horizon: Vec<(Vec<usize>, usize)> = ridges
            .into_iter()
            .filter(|(_, (_, c))| *c == 1)
            .map(|(mut r, (drop, _))| {
                r.push(p);
                r.sort_unstable();
                (r, drop)
            })
            .collect();
        horizon.sort();
        kept.extend(horizon.into_iter().map(|(verts, opp)| Facet {
            normal: facet_normal(&pts, &verts, opp),
            verts,
            opp,
        }));
        boundary = kept;
    }
    simplices.sort();
    Ok(Triangulation {
        dim: rank - 1,
        simplices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_cap() {
        let square = PointConfig::new(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(placing_triangulation_capped(&square, 2).unwrap().len(), 2);
        assert!(matches!(
            placing_triangulation_capped(&square, 1),
            Err(Error::BudgetExceeded { limit: 1, .. })
        ));
    }

    #[test]
    fn small_cases() {
        let tri = PointConfig::new(vec![vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let t = placing_triangulation(&tri).unwrap();
        assert_eq!(t.dim, 2);
        assert_eq!(t.simplices, vec![vec![0, 1, 2]]);

        let square = PointConfig::new(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let t = placing_triangulation(&square).unwrap();
        assert_eq!(t.len(), 2);

        // an interior point is never placed
        let with_center =
            PointConfig::new(vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]]).unwrap();
        let t = placing_triangulation(&with_center).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.simplices.iter().all(|s| !s.contains(&4)));
        // placed first, the center is a vertex of every simplex
        let t = placing_triangulation_in_order(&with_center, &[4, 0, 1, 2, 3]).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.simplices.iter().all(|s| s.contains(&4)));
    }

    #[test]
    fn collinear_points() {
        let line = PointConfig::new(vec![vec![0], vec![3], vec![1], vec![5]]).unwrap();
        let t = placing_triangulation(&line).unwrap();
        assert_eq!(t.dim, 1);
        assert_eq!(t.simplices, vec![vec![0, 1], vec![1, 3]]);
    }

    #[test]
    fn bad_order_rejected() {
        let c = PointConfig::new(vec![vec![0], vec![1]]).unwrap();
        assert!(placing_triangulation_in_order(&c, &[0, 0]).is_err());
        assert!(placing_triangulation_in_order(&c, &[0]).is_err());
    }
}
