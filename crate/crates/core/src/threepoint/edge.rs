use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::combinat::{k_subsets, Derangement, SubsetIndex};
use crate::error::{Error, Result};
use crate::exactmath::LatticeSolver;

/// Colex position of the edge `{i, j}` of `K_n` (1-based, `i != j`).
pub fn edge_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    (b - 1) * (b - 2) / 2 + (a - 1)
}

/// An element of the free abelian group on the edges `p_{ij}` of `K_n`,
/// written additively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeVector {
    pub n: usize,
    pub exponents: Vec<i64>,
}

impl EdgeVector {
    pub fn zero(n: usize) -> Self {
        EdgeVector {
            n,
            exponents: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn edge(n: usize, i: usize, j: usize) -> Self {
        let mut v = Self::zero(n);
        v.exponents[edge_index(i, j)] = 1;
        v
    }

    /// `c_{ijk} = e_ij + e_jk + e_ik`.
    pub fn triangle(n: usize, i: usize, j: usize, k: usize) -> Self {
        let mut v = Self::zero(n);
        for (a, b) in [(i, j), (j, k), (i, k)] {
            v.exponents[edge_index(a, b)] += 1;
        }
        v
    }

    /// Sum of all edges of `K_n`, the exponent of `prod_{i<j} p_ij`.
    pub fn all_edges(n: usize) -> Self {
        EdgeVector {
            n,
            exponents: vec![1; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.exponents[edge_index(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().sum()
    }

    pub fn is_monomial(&self) -> bool {
        self.exponents.iter().all(|&e| e >= 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        EdgeVector {
            n: self.n,
            exponents: self.exponents.iter().map(|e| e * k).collect(),
        }
    }

    pub fn to_big(&self) -> Vec<BigInt> {
        self.exponents.iter().map(|&e| BigInt::from(e)).collect()
    }

    /// Labels of the edges in storage order: `12, 13, 23, 14, ...`.
    pub fn labels(n: usize) -> Vec<String> {
        k_subsets(n, 2).iter().map(|s| s.to_string()).collect()
    }

    fn label_map(&self) -> BTreeMap<String, i64> {
        Self::labels(self.n)
            .into_iter()
            .zip(&self.exponents)
            .filter(|(_, e)| **e != 0)
            .map(|(l, e)| (l, *e))
            .collect()
    }
}

impl fmt::Display for EdgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Self::labels(self.n)
            .iter()
            .zip(&self.exponents)
            .filter(|(_, e)| **e != 0)
            .map(|(l, &e)| if e == 1 { format!("p{l}") } else { format!("p{l}^{e}") })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl Serialize for EdgeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("EdgeVector", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("exponents", &self.label_map())?;
        st.end()
    }
}

fn zip_with(a: &EdgeVector, b: &EdgeVector, f: impl Fn(i64, i64) -> i64) -> EdgeVector {
    assert_eq!(a.n, b.n, "edge vectors over different n");
    EdgeVector {
        n: a.n,
        exponents: a.exponents.iter().zip(&b.exponents).map(|(&x, &y)| f(x, y)).collect(),
    }
}

impl Add for &EdgeVector {
    type Output = EdgeVector;
    fn add(self, o: &EdgeVector) -> EdgeVector {
        zip_with(self, o, |x, y| x + y)
    }
}

impl Sub for &EdgeVector {
    type Output = EdgeVector;
    fn sub(self, o: &EdgeVector) -> EdgeVector {
        zip_with(self, o, |x, y| x - y)
    }
}

impl Neg for &EdgeVector {
    type Output = EdgeVector;
    fn neg(self) -> EdgeVector {
        self.scaled(-1)
    }
}

/// `phi(sigma) = p_{1,sigma(1)} ... p_{n,sigma(n)}`.
pub fn phi(d: &Derangement) -> EdgeVector {
    let mut v = EdgeVector::zero(d.n);
    for i in 1..=d.n {
        v.exponents[edge_index(i, d.image(i))] += 1;
    }
    v
}

/// Sign of a permutation with `t` cycles on `n` points.
pub fn derangement_sign(d: &Derangement) -> i64 {
    if (d.n - d.t_count).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Integer coefficients on the triangles with `sum a_T c_T = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCertificate {
    pub target: EdgeVector,
    pub coefficients: Vec<i64>,
}

impl CosetCertificate {
    /// Nonzero coefficients keyed by triangle label.
    pub fn terms(&self) -> BTreeMap<String, i64> {
        k_subsets(self.target.n, 3)
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| **c != 0)
            .map(|(t, c)| (t.to_string(), *c))
            .collect()
    }

    /// Recomputes the combination and compares with the target.
    pub fn verify(&self) -> bool {
        let n = self.target.n;
        let triangles = k_subsets(n, 3);
        if triangles.len() != self.coefficients.len() {
            return false;
        }
        let mut acc = EdgeVector::zero(n);
        for (t, &a) in triangles.iter().zip(&self.coefficients) {
            let m = &t.members;
            acc = &acc + &EdgeVector::triangle(n, m[0], m[1], m[2]).scaled(a);
        }
        acc == self.target
    }
}

impl Serialize for CosetCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CosetCertificate", 2)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("triangles", &self.terms())?;
        st.end()
    }
}

/// The subgroup `C_n` generated by the triangles `c_{ijk}`.
#[derive(Clone, Debug)]
pub struct TriangleLattice {
    pub n: usize,
    pub triangles: Vec<SubsetIndex>,
    pub generators: Vec<EdgeVector>,
    solver: LatticeSolver,
}

impl TriangleLattice {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::BadParameters("triangle lattice needs n >= 3".into()));
        }
        let triangles = k_subsets(n, 3);
        let generators: Vec<EdgeVector> = triangles
            .iter()
            .map(|t| EdgeVector::triangle(n, t.members[0], t.members[1], t.members[2]))
            .collect();
        let big: Vec<Vec<BigInt>> = generators.iter().map(EdgeVector::to_big).collect();
        let solver = LatticeSolver::new(n * (n - 1) / 2, &big)?;
        Ok(TriangleLattice {
            n,
            triangles,
            generators,
            solver,
        })
    }

    pub fn rank(&self) -> usize {
        self.solver.rank()
    }

    /// A certificate that `v` lies in `C_n`, if it does.
    pub fn coset_member(&self, v: &EdgeVector) -> Result<Option<CosetCertificate>> {
        if v.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.n,
            });
        }
        let Some(c) = self.solver.solve(&v.to_big())? else {
            return Ok(None);
        };
        let coefficients = c
            .iter()
            .map(|x| {
                x.to_i64()
                    .ok_or_else(|| Error::PreconditionFailed("certificate coefficient overflows i64".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let cert = CosetCertificate {
            target: v.clone(),
            coefficients,
        };
        debug_assert!(cert.verify());
        Ok(Some(cert))
    }

    /// Whether `a` and `b` lie in the same coset of `C_n`.
    pub fn same_coset(&self, a: &EdgeVector, b: &EdgeVector) -> Result<Option<CosetCertificate>> {
        self.coset_member(&(a - b))
    }
}

/// Sizes are brute-force only: all derangements of `n` are scanned.
pub fn fiber(v: &EdgeVector, max_n: usize) -> Result<Vec<Derangement>> {
    if v.n > max_n {
        return Err(Error::BudgetExceeded {
            what: "derangement enumeration size n",
            limit: max_n as u64,
        });
    }
    Ok(crate::combinat::derangements(v.n).filter(|d| phi(d) == *v).collect())
}

/// `2^{t(sigma) - s(sigma)}`.
pub fn fiber_size_formula(d: &Derangement) -> u64 {
    1 << (d.t_count - d.s_count)
}

/// Both identities of the transposition lemma for distinct `i, j, k, s, t`,
/// as exact equalities in the edge group.
pub fn transposition_identities(n: usize, idx: [usize; 5]) -> Result<(bool, bool)> {
    let [i, j, k, s, t] = idx;
    if idx.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::BadParameters(format!("indices {idx:?} outside 1..={n}")));
    }
    if (0..5).any(|a| (a + 1..5).any(|b| idx[a] == idx[b])) {
        return Err(Error::PreconditionFailed(format!("indices {idx:?} are not distinct")));
    }
    let e = |a, b| EdgeVector::edge(n, a, b);
    let c = |a, b, d| EdgeVector::triangle(n, a, b, d);
    let lhs1 = &e(k, i) + &e(j, s);
    let rhs1 = &(&(&(&e(k, j) + &e(i, s)) + &c(k, i, t)) + &c(j, s, t)) - &(&c(k, j, t) + &c(i, s, t));
    let lhs2 = e(i, j).scaled(2);
    let rhs2 = &(&(&e(k, s).scaled(2) + &c(i, j, k)) + &c(i, j, s)) - &(&c(i, k, s) + &c(j, k, s));
    Ok((lhs1 == rhs1, lhs2 == rhs2))
}

/// Checks both identities for every ordered choice of five distinct indices.
/// Returns the number of index tuples checked, or the first failure.
pub fn transposition_relations_check(n: usize) -> Result<std::result::Result<usize, [usize; 5]>> {
    if n < 5 {
        return Err(Error::PreconditionFailed(format!("need n >= 5, got {n}")));
    }
    let mut count = 0;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for s in 1..=n {
                    for t in 1..=n {
                        let idx = [i, j, k, s, t];
                        if (0..5).any(|a| (a + 1..5).any(|b| idx[a] == idx[b])) {
                            continue;
                        }
                        if transposition_identities(n, idx)? != (true, true) {
                            return Ok(Err(idx));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(Ok(count))
}
