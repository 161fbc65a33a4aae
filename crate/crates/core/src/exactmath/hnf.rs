use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Column-style Hermite normal form `m * u = h`.
///
/// `h` is lower staircase: the pivot of column `j` sits in row `pivots[j]`,
/// the pivot rows increase strictly with `j`, pivots are positive and every
/// entry to the left of a pivot lies in `[0, pivot)`. Columns `rank..` of `h`
/// are zero and the matching columns of `u` span the integer kernel of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl HnfResult {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

struct ColOps {
    h: Vec<Vec<BigInt>>, // column-major working copy
    u: Vec<Vec<BigInt>>,
}

impl ColOps {
    fn swap(&mut self, a: usize, b: usize) {
        self.h.swap(a, b);
        self.u.swap(a, b);
    }

    fn negate(&mut self, a: usize) {
        for x in self.h[a].iter_mut().chain(self.u[a].iter_mut()) {
            *x = -&*x;
        }
    }

    /// column[dst] -= q * column[src]
    fn axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let (d, s) = two_mut(&mut self.h, dst, src);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
        let (d, s) = two_mut(&mut self.u, dst, src);
        for (x, y) in d.iter_mut().zip(s.iter()) {
            if !y.is_zero() {
                *x -= q * y;
            }
        }
    }
}

fn two_mut<T>(v: &mut [T], a: usize, b: usize) -> (&mut T, &T) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &lo[b])
    }
}

/// Column Hermite normal form with unimodular transform. Deterministic.
pub fn hnf(m: &IntMatrix) -> HnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut ops = ColOps {
        h: m.columns(),
        u: IntMatrix::identity(cols).columns(),
    };
    let mut pivots = Vec::new();
    let mut pc = 0usize;
    for i in 0..rows {
        if pc == cols {
            break;
        }
        // Euclid on row i over columns pc.. until a single nonzero remains.
        loop {
            let mut best: Option<usize> = None;
            for j in pc..cols {
                let x = &ops.h[j][i];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < ops.h[b][i].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            if b != pc {
                ops.swap(b, pc);
            }
            let mut done = true;
            for j in pc + 1..cols {
                if ops.h[j][i].is_zero() {
                    continue;
                }
                let q = ops.h[j][i].div_floor(&ops.h[pc][i]);
                ops.axpy(j, pc, &q);
                if !ops.h[j][i].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if ops.h[pc][i].is_zero() {
            continue;
        }
        if ops.h[pc][i].is_negative() {
            ops.negate(pc);
        }
        let p = ops.h[pc][i].clone();
        for j in 0..pc {
            let q = ops.h[j][i].div_floor(&p);
            ops.axpy(j, pc, &q);
        }
        pivots.push(i);
        pc += 1;
    }
    let h = IntMatrix::from_columns(rows, &ops.h).expect("shape preserved");
    let u = IntMatrix::from_columns(cols, &ops.u).expect("shape preserved");
    HnfResult { h, u, pivots }
}

/// Invariant factors of the Smith normal form (nonzero diagonal, each
/// dividing the next).
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let rows = m.rows();
    let cols = m.cols();
    let mut diag = Vec::new();
    let mut t = 0usize;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let p = a[t][t].clone();
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&p);
            for j in t..cols {
                let v = &q * &a[t][j];
                a[i][j] -= v;
            }
            if !a[i][t].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&p);
            for row in a.iter_mut().skip(t) {
                let v = &q * &row[t];
                row[j] -= v;
            }
            if !a[t][j].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // divisibility: fold a non-multiple entry into row t and retry
        let mut fixed = true;
        'outer: for i in t + 1..rows {
            for j in t + 1..cols {
                if !a[i][j].is_multiple_of(&p) {
                    for jj in t..cols {
                        let v = a[i][jj].clone();
                        a[t][jj] += v;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// Index of the lattice spanned by the columns of `m` inside its
/// saturation (`span_Q ∩ Z^n`), i.e. the product of the invariant factors.
pub fn saturation_index(m: &IntMatrix) -> BigInt {
    smith_invariants(m)
        .iter()
        .fold(BigInt::one(), |acc, d| acc * d)
}
