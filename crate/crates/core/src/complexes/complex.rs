use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simplicial complex on vertices `1..=n`, stored by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Sorts each facet, drops duplicates and faces contained in other
    /// facets. Facet order is otherwise preserved.
    pub fn new(n: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for mut f in facets {
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadParameters(format!("repeated vertex in facet {f:?}")));
            }
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            sorted.push(f);
        }
        let mut keep = Vec::with_capacity(sorted.len());
        for (i, f) in sorted.iter().enumerate() {
            let dominated = sorted.iter().enumerate().any(|(j, g)| {
                j != i && is_subset(f, g) && (g.len() > f.len() || j < i)
            });
            if !dominated {
                keep.push(f.clone());
            }
        }
        Ok(SimplicialComplex { n, facets: keep })
    }

    /// The full simplex on `1..=n`.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: vec![(1..=n).collect()],
        }
    }

    /// Largest facet dimension (`-1` for the empty complex).
    pub fn dimension(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).all_equal()
    }

    /// Vertices that occur in some facet.
    pub fn vertices(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    /// All faces with `dim + 1` vertices, sorted lexicographically.
    pub fn faces(&self, dim: usize) -> Vec<Vec<usize>> {
        let mut s = BTreeSet::new();
        for f in &self.facets {
            for c in f.iter().copied().combinations(dim + 1) {
                s.insert(c);
            }
        }
        s.into_iter().collect()
    }

    /// Faces with `dim + 1` vertices in colex order.
    pub fn faces_colex(&self, dim: usize) -> Vec<Vec<usize>> {
        let mut v = self.faces(dim);
        v.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        v
    }

    /// Facets of the link of `face`.
    pub fn link(&self, face: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| is_subset(face, f))
            .map(|f| f.iter().copied().filter(|v| !face.contains(v)).collect())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Reads the one-facet-per-line text format. Blank lines and lines
    /// starting with `#` are skipped; `n` is the largest label.
    pub fn parse(text: &str) -> Result<Self> {
        let mut facets = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("line {}: bad vertex {tok:?}", lineno + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            facets.push(f);
        }
        let n = facets.iter().flatten().copied().max().unwrap_or(0);
        SimplicialComplex::new(n, facets)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for facet in &self.facets {
            writeln!(f, "{}", facet.iter().join(" "))?;
        }
        Ok(())
    }
}

/// Both slices sorted.
pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}
