use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hnf::{hnf, smith_invariants, HnfResult};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A list of Z-linearly independent integer vectors in `Z^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub ambient_dim: usize,
    #[serde(with = "super::decimal::vecs")]
    pub basis_vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    /// Wraps vectors that are already known to be independent.
    pub fn new(ambient_dim: usize, basis_vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        for v in &basis_vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        let b = LatticeBasis {
            ambient_dim,
            basis_vectors,
        };
        if super::rank::rank_q(&b.as_matrix()) != b.rank() {
            return Err(Error::PreconditionFailed(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(b)
    }

    /// Basis of the lattice generated by arbitrary (possibly dependent) vectors.
    pub fn from_generators(ambient_dim: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        let m = IntMatrix::from_columns(ambient_dim, generators)?;
        let r = hnf(&m);
        let basis_vectors = (0..r.rank()).map(|j| r.h.column(j)).collect();
        Ok(LatticeBasis {
            ambient_dim,
            basis_vectors,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis_vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis_vectors.is_empty()
    }

    /// Basis vectors as the columns of a matrix.
    pub fn as_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient_dim, &self.basis_vectors).expect("checked dims")
    }

    /// True when the lattice equals its rational span intersected with `Z^n`.
    pub fn is_saturated(&self) -> bool {
        smith_invariants(&self.as_matrix()).iter().all(One::is_one)
    }

    /// Canonical HNF basis; two lattices are equal iff these agree.
    pub fn canonical(&self) -> IntMatrix {
        let r = hnf(&self.as_matrix());
        r.h.select(
            &(0..self.ambient_dim).collect::<Vec<_>>(),
            &(0..r.rank()).collect::<Vec<_>>(),
        )
    }

    /// Whether every vector of `other` lies in this lattice.
    pub fn contains_lattice(&self, other: &LatticeBasis) -> Result<bool> {
        let solver = LatticeSolver::new(self.ambient_dim, &self.basis_vectors)?;
        for v in &other.basis_vectors {
            if solver.solve(v)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Integer kernel of `m`. The returned basis is saturated: every integer
/// kernel vector is an integer combination of it.
pub fn kernel_basis(m: &IntMatrix) -> LatticeBasis {
    let r = hnf(m);
    let basis_vectors: Vec<Vec<BigInt>> = (r.rank()..m.cols()).map(|j| r.u.column(j)).collect();
    let b = LatticeBasis {
        ambient_dim: m.cols(),
        basis_vectors,
    };
    debug_assert!(b.is_saturated());
    b
}

/// Precomputed HNF of a generating set, for repeated membership queries.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    dim: usize,
    generator_count: usize,
    hnf: HnfResult,
}

impl LatticeSolver {
    pub fn new(dim: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        let m = IntMatrix::from_columns(dim, generators)?;
        Ok(LatticeSolver {
            dim,
            generator_count: generators.len(),
            hnf: hnf(&m),
        })
    }

    pub fn rank(&self) -> usize {
        self.hnf.rank()
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Coefficients on the HNF basis columns, if `v` is in the lattice.
    fn solve_hnf(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let h = &self.hnf.h;
        let rank = self.rank();
        let mut x: Vec<BigInt> = vec![BigInt::zero(); rank];
        let mut next = 0usize;
        for i in 0..self.dim {
            let mut acc = v[i].clone();
            for (j, xj) in x.iter().enumerate().take(next) {
                let hij = h.get(i, j);
                if !hij.is_zero() {
                    acc -= hij * xj;
                }
            }
            if next < rank && self.hnf.pivots[next] == i {
                let (q, r) = acc.div_rem(h.get(i, next));
                if !r.is_zero() {
                    return None;
                }
                x[next] = q;
                next += 1;
            } else if !acc.is_zero() {
                return None;
            }
        }
        Some(x)
    }

    /// Integer coefficients `c` over the original generators with
    /// `sum c_i g_i = v`, or `None` when `v` is not in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let Some(x) = self.solve_hnf(v) else {
            return Ok(None);
        };
        let u = &self.hnf.u;
        let coeffs = (0..self.generator_count)
            .map(|g| {
                x.iter()
                    .enumerate()
                    .filter(|(_, xj)| !xj.is_zero())
                    .map(|(j, xj)| u.get(g, j) * xj)
                    .sum()
            })
            .collect();
        Ok(Some(coeffs))
    }
}

/// Coefficients expressing `v` over `basis`, or `None` if `v` is not in the
/// lattice. The certificate recomputes to `v` exactly.
pub fn lattice_member(basis: &LatticeBasis, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != basis.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: basis.ambient_dim,
            got: v.len(),
        });
    }
    let solver = LatticeSolver::new(basis.ambient_dim, &basis.basis_vectors)?;
    let c = solver.solve(v)?;
    if let Some(c) = &c {
        debug_assert_eq!(&combine(basis.ambient_dim, &basis.basis_vectors, c), v);
    }
    Ok(c)
}

/// `sum_i c_i * vectors[i]`.
pub fn combine(dim: usize, vectors: &[Vec<BigInt>], coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); dim];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}
