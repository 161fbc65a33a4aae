//! The containment matrices of t-subsets in k-subsets.

use num_bigint::BigInt;
use serde::Serialize;

use crate::combinat::{binom, k_subsets, SubsetIndex};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::exactmath::{rank_mod_p, rank_q, IntMatrix};

/// `C(n,t) x C(n,k)` matrix with entry 1 iff the row t-subset lies in the
/// column k-subset. Rows and columns are labelled in colex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceMatrix {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub matrix: IntMatrix,
    pub row_labels: Vec<SubsetIndex>,
    pub col_labels: Vec<SubsetIndex>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// Column `j` as the list of row indices holding a 1.
    pub fn column_support(&self, j: usize) -> Vec<usize> {
        let col = &self.col_labels[j];
        self.row_labels
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_subset_of(col))
            .map(|(i, _)| i)
            .collect()
    }

    /// Dense copy with small entries.
    pub fn dense(&self) -> Vec<Vec<i64>> {
        self.matrix.to_i64_rows().expect("0/1 entries")
    }

    /// Index of the column labelled by `s`.
    pub fn column_of(&self, s: &SubsetIndex) -> Option<usize> {
        self.col_labels.iter().position(|c| c == s)
    }

    /// Whether the toric ideal is nonzero, i.e. `C(n,t) < C(n,k)`.
    pub fn has_kernel(&self) -> bool {
        self.rows() < self.cols()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t\\k");
        for c in &self.col_labels {
            out.push(',');
            out.push_str(&c.to_string());
        }
        out.push('\n');
        for (i, r) in self.row_labels.iter().enumerate() {
            out.push_str(&r.to_string());
            for x in self.matrix.row(i) {
                out.push(',');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Builds `A_{n,k,t}`. Requires `1 <= t < k <= n`.
pub fn build_matrix(n: usize, k: usize, t: usize) -> Result<IncidenceMatrix> {
    build(n, k, t, false)
}

/// Like [`build_matrix`] but also accepts `t == k`, where the matrix is the
/// identity.
pub fn build_matrix_allow_identity(n: usize, k: usize, t: usize) -> Result<IncidenceMatrix> {
    build(n, k, t, true)
}

fn build(n: usize, k: usize, t: usize, allow_identity: bool) -> Result<IncidenceMatrix> {
    let ok = t >= 1 && k <= n && (t < k || (allow_identity && t == k));
    if !ok {
        return Err(Error::BadParameters(format!(
            "need 1 <= t < k <= n, got n={n} k={k} t={t}"
        )));
    }
    let row_labels = k_subsets(n, t);
    let col_labels = k_subsets(n, k);
    let row_masks: Vec<u64> = row_labels.iter().map(SubsetIndex::mask).collect();
    let mut entries = Vec::with_capacity(row_labels.len() * col_labels.len());
    let col_masks: Vec<u64> = col_labels.iter().map(SubsetIndex::mask).collect();
    for rm in &row_masks {
        for cm in &col_masks {
            entries.push(BigInt::from((rm & !cm == 0) as i64));
        }
    }
    let matrix = IntMatrix::new(row_labels.len(), col_labels.len(), entries)?;
    Ok(IncidenceMatrix {
        n,
        k,
        t,
        matrix,
        row_labels,
        col_labels,
    })
}

/// The `(t,k)`-incidence complex: its vertices are the t-faces of `delta`
/// (numbered from 1 in colex order), and each k-face contributes the facet
/// made of its t-faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceComplex {
    pub complex: SimplicialComplex,
    /// `vertex_labels[v - 1]` is the t-face of `delta` behind vertex `v`
    pub vertex_labels: Vec<Vec<usize>>,
}

pub fn incidence_complex(delta: &SimplicialComplex, t: usize, k: usize) -> Result<IncidenceComplex> {
    if !delta.is_pure() {
        return Err(Error::NotPure);
    }
    let dim = delta.dimension();
    if dim < k as isize || t > k {
        return Err(Error::DimensionTooSmall {
            dim: dim.max(0) as usize,
            needed: k,
        });
    }
    let vertex_labels = delta.faces_colex(t);
    let index = |f: &Vec<usize>| vertex_labels.binary_search_by(|x| colex_cmp(x, f)).expect("face present") + 1;
    let facets: Vec<Vec<usize>> = delta
        .faces_colex(k)
        .iter()
        .map(|kf| {
            use itertools::Itertools;
            kf.iter().copied().combinations(t + 1).map(|tf| index(&tf)).collect()
        })
        .collect();
    let complex = SimplicialComplex::new(vertex_labels.len(), facets)?;
    Ok(IncidenceComplex {
        complex,
        vertex_labels,
    })
}

fn colex_cmp(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Facet-by-vertex 0/1 matrix (rows follow the facet order).
pub fn facet_vertex_matrix(c: &SimplicialComplex) -> IntMatrix {
    let mut m = IntMatrix::zeros(c.facets.len(), c.n);
    for (i, f) in c.facets.iter().enumerate() {
        for &v in f {
            m.set(i, v - 1, BigInt::from(1));
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModPRank {
    pub p: u64,
    /// rank of `A_{n,k,t}` itself over F_p
    pub rank_incidence: usize,
    /// rank over F_p of the multiplication map `x L^{k-t}`, i.e. of `(k-t)! A`
    pub rank_lefschetz: usize,
    pub predicted_full: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub rank_q: usize,
    pub expected_rank: usize,
    pub mod_p: Vec<ModPRank>,
}

impl RankRow {
    pub fn ok(&self) -> bool {
        self.rank_q == self.expected_rank && self.mod_p.iter().all(|m| m.agrees)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rows: Vec<RankRow>,
}

impl RankReport {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(RankRow::ok)
    }

    /// Triples where `A` itself (unscaled) has full rank mod p exactly when
    /// `p > min(k, n-t)` fails to hold.
    pub fn raw_incidence_mismatches(&self) -> usize {
        self.rows
            .iter()
            .map(|r| {
                let full = r.rank_q;
                r.mod_p
                    .iter()
                    .filter(|m| (m.rank_incidence == full) != m.predicted_full)
                    .count()
            })
            .sum()
    }
}

/// Rank checks for all `1 <= t < k <= n <= n_max` and the given primes.
///
/// Over F_p the full-rank criterion concerns the multiplication map by
/// `L^{k-t}` in `K[x]/(x_i^2)`, whose matrix is `(k-t)!` times the
/// incidence matrix. Both ranks are reported.
pub fn check_rank_theorems(n_max: usize, primes: &[u64]) -> Result<RankReport> {
    let mut rows = Vec::new();
    for n in 2..=n_max {
        for k in 2..=n {
            for t in 1..k {
                let a = build_matrix(n, k, t)?;
                let r = rank_q(&a.matrix);
                let expected = binom(n, t).min(binom(n, k)) as usize;
                let fact: u64 = (1..=(k - t) as u64).product();
                let mut mod_p = Vec::new();
                for &p in primes {
                    let raw = rank_mod_p(&a.matrix, p)?;
                    let lef = if fact.is_multiple_of(p) { 0 } else { raw };
                    let predicted_full = p > k.min(n - t) as u64;
                    mod_p.push(ModPRank {
                        p,
                        rank_incidence: raw,
                        rank_lefschetz: lef,
                        predicted_full,
                        agrees: (lef == expected) == predicted_full,
                    });
                }
                rows.push(RankRow {
                    n,
                    k,
                    t,
                    rank_q: r,
                    expected_rank: expected,
                    mod_p,
                });
            }
        }
    }
    Ok(RankReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a432_matches_display() {
        let a = build_matrix(4, 3, 2).unwrap();
        assert_eq!(
            a.dense(),
            vec![
                vec![1, 1, 0, 0],
                vec![1, 0, 1, 0],
                vec![1, 0, 0, 1],
                vec![0, 1, 1, 0],
                vec![0, 1, 0, 1],
                vec![0, 0, 1, 1],
            ]
        );
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(build_matrix(4, 2, 2), Err(Error::BadParameters(_))));
        assert!(matches!(build_matrix(4, 5, 2), Err(Error::BadParameters(_))));
        assert!(matches!(build_matrix(4, 2, 0), Err(Error::BadParameters(_))));
        let id = build_matrix_allow_identity(4, 2, 2).unwrap();
        assert_eq!(id.matrix, IntMatrix::identity(6));
    }

    #[test]
    fn whole_set_column() {
        let a = build_matrix(4, 4, 2).unwrap();
        assert_eq!(a.cols(), 1);
        assert!(a.dense().iter().all(|r| r == &vec![1]));
    }

    #[test]
    fn row_and_column_sums() {
        for (n, k, t) in [(6, 3, 2), (7, 4, 2), (8, 3, 1)] {
            let a = build_matrix(n, k, t).unwrap();
            let d = a.dense();
            for j in 0..a.cols() {
                assert_eq!(d.iter().map(|r| r[j]).sum::<i64>() as u64, binom(k, t));
            }
            for r in &d {
                assert_eq!(r.iter().sum::<i64>() as u64, binom(n - t, k - t));
            }
        }
    }

    #[test]
    fn rank_examples_632() {
        let a = build_matrix(6, 3, 2).unwrap();
        assert_eq!(rank_q(&a.matrix), 15);
        assert!(rank_mod_p(&a.matrix, 2).unwrap() < 15);
        assert_eq!(rank_mod_p(&a.matrix, 5).unwrap(), 15);
        assert_eq!(rank_mod_p(&a.matrix, 7).unwrap(), 15);
    }

    fn octahedron() -> SimplicialComplex {
        let mut f = Vec::new();
        for a in [1, 2] {
            for b in [3, 4] {
                for c in [5, 6] {
                    f.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(6, f).unwrap()
    }

    #[test]
    fn octahedron_edge_complex() {
        let h = incidence_complex(&octahedron(), 1, 2).unwrap();
        assert_eq!(h.complex.facets.len(), 8);
        assert_eq!(h.complex.n, 12);
        assert!(h.complex.facets.iter().all(|f| f.len() == 3));
    }

    #[test]
    fn degenerate_incidence_complexes() {
        let o = octahedron();
        let same = incidence_complex(&o, 0, 2).unwrap();
        let relabel: Vec<Vec<usize>> = same
            .complex
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| same.vertex_labels[v - 1][0]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        let mut expect = o.facets.clone();
        expect.sort();
        let mut got = relabel;
        got.sort();
        assert_eq!(got, expect);
        let graph = incidence_complex(&o, 0, 1).unwrap();
        assert_eq!(graph.complex.facets.len(), 12);
        assert!(matches!(incidence_complex(&o, 1, 3), Err(Error::DimensionTooSmall { .. })));
        let impure = SimplicialComplex::new(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert_eq!(incidence_complex(&impure, 0, 1), Err(Error::NotPure));
    }

    #[test]
    fn transpose_is_simplex_incidence_complex() {
        for (n, k, t) in [(5, 3, 2), (6, 3, 1), (6, 4, 2)] {
            let a = build_matrix(n, k, t).unwrap();
            let h = incidence_complex(&SimplicialComplex::simplex(n), t - 1, k - 1).unwrap();
            assert_eq!(facet_vertex_matrix(&h.complex), a.matrix.transpose());
        }
    }

    #[test]
    fn complex_dimension_formula() {
        let o = octahedron();
        for (t, k) in [(0, 1), (0, 2), (1, 2)] {
            let h = incidence_complex(&o, t, k).unwrap();
            assert_eq!(h.complex.dimension(), binom(k + 1, t + 1) as isize - 1);
        }
    }

    #[test]
    fn kernel_nontrivial_iff_more_columns() {
        for n in 2..=8 {
            for k in 2..=n {
                for t in 1..k {
                    let a = build_matrix(n, k, t).unwrap();
                    let kr = crate::exactmath::kernel_basis(&a.matrix).rank();
                    assert_eq!(kr > 0, binom(n, t) < binom(n, k), "({n},{k},{t})");
                }
            }
        }
    }

    #[test]
    fn rank_theorems_small() {
        let r = check_rank_theorems(6, &[2, 3, 5, 7]).unwrap();
        assert!(r.all_ok());
        let row = r.rows.iter().find(|x| (x.n, x.k, x.t) == (6, 3, 2)).unwrap();
        assert_eq!(row.rank_q, 15);
        assert!(!row.mod_p[0].predicted_full);
        assert!(row.mod_p[3].predicted_full);
    }
}
