use std::collections::HashMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{Binomial, BinomialBasis, ToricBudget, ToricMatrix};
use crate::error::{Error, Result};

/// All `u >= 0` with `A u = target`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub target: Vec<i64>,
    pub points: Vec<Vec<u32>>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn small_matrix(a: &ToricMatrix) -> Result<Vec<Vec<i64>>> {
    let rows = a
        .matrix
        .to_i64_rows()
        .ok_or_else(|| Error::PreconditionFailed("matrix entries exceed i64".into()))?;
    if rows.iter().flatten().any(|&x| x < 0) {
        return Err(Error::PreconditionFailed("fibers need a nonnegative matrix".into()));
    }
    for j in 0..a.var_count() {
        if rows.iter().all(|r| r[j] == 0) {
            return Err(Error::PreconditionFailed(format!("column {} is zero, fiber is infinite", j + 1)));
        }
    }
    Ok(rows)
}

struct FiberSearch<'a> {
    rows: &'a [Vec<i64>],
    // last column touching each row
    last_col: Vec<usize>,
    limit: u64,
    cur: Vec<u32>,
    out: Vec<Vec<u32>>,
}

impl FiberSearch<'_> {
    fn go(&mut self, j: usize, residual: &mut [i64]) -> Result<()> {
        let n = self.cur.len();
        if j == n {
            if residual.iter().all(|&r| r == 0) {
                if self.out.len() as u64 >= self.limit {
                    return Err(Error::BudgetExceeded {
                        what: "fiber points",
                        limit: self.limit,
                    });
                }
                self.out.push(self.cur.clone());
            }
            return Ok(());
        }
        let cap = (0..self.rows.len())
            .filter(|&r| self.rows[r][j] > 0)
            .map(|r| residual[r] / self.rows[r][j])
            .min()
            .unwrap_or(0);
        for x in 0..=cap {
            for r in 0..self.rows.len() {
                residual[r] -= self.rows[r][j] * x;
            }
            // rows whose last column is j must now be exactly satisfied
            let dead = (0..self.rows.len()).any(|r| self.last_col[r] == j && residual[r] != 0);
            if !dead {
                self.cur[j] = x as u32;
                self.go(j + 1, residual)?;
            }
            for r in 0..self.rows.len() {
                residual[r] += self.rows[r][j] * x;
            }
        }
        self.cur[j] = 0;
        Ok(())
    }
}

/// Enumerates the fiber `{u in N^n : A u = target}` of a nonnegative
/// matrix without zero columns.
pub fn fiber_enumerate(a: &ToricMatrix, target: &[i64], budget: &ToricBudget) -> Result<Fiber> {
    let rows = small_matrix(a)?;
    if target.len() != rows.len() {
        return Err(Error::DimensionMismatch {
            expected: rows.len(),
            got: target.len(),
        });
    }
    let n = a.var_count();
    let last_col = rows
        .iter()
        .map(|r| (0..n).rev().find(|&j| r[j] != 0).unwrap_or(0))
        .collect();
    let mut residual = target.to_vec();
    if rows.iter().zip(&residual).any(|(r, &b)| b != 0 && r.iter().all(|&x| x == 0)) || residual.iter().any(|&b| b < 0) {
        return Ok(Fiber {
            target: target.to_vec(),
            points: Vec::new(),
        });
    }
    let mut s = FiberSearch {
        rows: &rows,
        last_col,
        limit: budget.fiber_points,
        cur: vec![0; n],
        out: Vec::new(),
    };
    s.go(0, &mut residual)?;
    Ok(Fiber {
        target: target.to_vec(),
        points: s.out,
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Whether the moves of `m` connect every pair of points of the fiber.
pub fn is_markov_on_fiber(m: &BinomialBasis, f: &Fiber) -> bool {
    if f.points.len() <= 1 {
        return true;
    }
    let index: HashMap<&[u32], usize> = f.points.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..f.points.len()).collect();
    for (i, p) in f.points.iter().enumerate() {
        for b in &m.elements {
            if b.var_count != p.len() {
                return false;
            }
            // moving along -b covers the reverse direction from the other endpoint
            if p.iter().zip(&b.minus).all(|(x, y)| x >= y) {
                let q: Vec<u32> = p
                    .iter()
                    .zip(&b.plus)
                    .zip(&b.minus)
                    .map(|((x, y), z)| x + y - z)
                    .collect();
                if let Some(&j) = index.get(q.as_slice()) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..f.points.len()).all(|i| find(&mut parent, i) == root)
}

/// Whether no kernel vector other than `0` and `u` is conformal to `u`,
/// i.e. fits in the box `0 <= v+ <= u+`, `0 <= v- <= u-`. Decided by
/// meeting in the middle: both halves are enumerated and matched on `A v`.
pub fn is_primitive(b: &Binomial, a: &ToricMatrix, budget: &ToricBudget) -> Result<bool> {
    if b.var_count != a.var_count() || !b.in_kernel(&a.matrix) {
        return Err(Error::PreconditionFailed("binomial is not in the kernel".into()));
    }
    let box_size = |e: &[u32]| -> Option<u64> { e.iter().try_fold(1u64, |acc, &x| acc.checked_mul(x as u64 + 1)) };
    let (np, nm) = match (box_size(&b.plus), box_size(&b.minus)) {
        (Some(p), Some(m)) if p.saturating_add(m) <= budget.box_points => (p, m),
        _ => {
            return Err(Error::BudgetExceeded {
                what: "primitivity box",
                limit: budget.box_points,
            })
        }
    };
    let columns: Vec<Vec<i64>> = (0..a.var_count())
        .map(|j| {
            a.matrix
                .column(j)
                .iter()
                .map(|x| x.to_i64().ok_or_else(|| Error::PreconditionFailed("matrix entries exceed i64".into())))
                .collect()
        })
        .collect::<Result<_>>()?;
    let rows = a.matrix.rows();
    let image = |e: &[u32], code: u64| -> Vec<i64> {
        let mut out = vec![0i64; rows];
        let mut c = code;
        for (j, &cap) in e.iter().enumerate() {
            if cap == 0 {
                continue;
            }
            let x = (c % (cap as u64 + 1)) as i64;
            c /= cap as u64 + 1;
            if x != 0 {
                for (o, v) in out.iter_mut().zip(&columns[j]) {
                    *o += x * v;
                }
            }
        }
        out
    };
    // images of the plus half; code 0 is v+ = 0, code np-1 is v+ = u+
    let mut table: HashMap<Vec<i64>, Vec<u64>> = HashMap::new();
    for code in 0..np {
        table.entry(image(&b.plus, code)).or_default().push(code);
    }
    let hit = (0..nm).into_par_iter().any(|code| {
        table.get(&image(&b.minus, code)).is_some_and(|codes| {
            codes.iter().any(|&p| {
                let trivial = (p == 0 && code == 0) || (p == np - 1 && code == nm - 1);
                !trivial
            })
        })
    });
    Ok(!hit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::IntMatrix;
    use crate::toric::minimal_markov;

    fn twisted_cubic() -> ToricMatrix {
        ToricMatrix::new(IntMatrix::from_rows(&[[1, 1, 1, 1], [3, 2, 1, 0], [0, 1, 2, 3]]))
    }

    #[test]
    fn fiber_of_column_is_unit_vector() {
        let a = twisted_cubic();
        let f = fiber_enumerate(&a, &[1, 2, 1], &ToricBudget::default()).unwrap();
        assert_eq!(f.points, vec![vec![0, 1, 0, 0]]);
    }

    #[test]
    fn fibers_match_brute_force() {
        let a = twisted_cubic();
        let b = ToricBudget::default();
        let m = minimal_markov(&a, &b).unwrap();
        for code in 0u32..5u32.pow(4) {
            let u: Vec<i64> = (0..4).map(|i| (code / 5u32.pow(i) % 5) as i64).collect();
            let target: Vec<i64> = a.matrix.mul_vec_i64(&u).unwrap().iter().map(|x| x.to_i64().unwrap()).collect();
            let f = fiber_enumerate(&a, &target, &b).unwrap();
            let deg: i64 = u.iter().sum();
            // brute force over the simplex of the same degree
            let mut want = Vec::new();
            for c2 in 0u32..(deg as u32 + 1).pow(4) {
                let w: Vec<u32> = (0..4).map(|i| c2 / (deg as u32 + 1).pow(i) % (deg as u32 + 1)).collect();
                let wi: Vec<i64> = w.iter().map(|&x| x as i64).collect();
                let img: Vec<i64> = a.matrix.mul_vec_i64(&wi).unwrap().iter().map(|x| x.to_i64().unwrap()).collect();
                if img == target {
                    want.push(w);
                }
            }
            want.sort();
            assert_eq!(f.points, want);
            assert!(is_markov_on_fiber(&m, &f));
        }
    }

    #[test]
    fn primitivity_of_doubled_vector() {
        let a = twisted_cubic();
        let b = ToricBudget::default();
        let u = Binomial::from_i64(&[1, -2, 1, 0]).unwrap();
        assert!(is_primitive(&u, &a, &b).unwrap());
        let u2 = Binomial::from_i64(&[2, -4, 2, 0]).unwrap();
        assert!(!is_primitive(&u2, &a, &b).unwrap());
        assert!(is_primitive(&Binomial::from_i64(&[1, -1, -1, 1]).unwrap(), &a, &b).unwrap());
        // (1,-1,-1,1) fits inside (1,-2,1,0) + (1,0,-3,2)
        assert!(!is_primitive(&Binomial::from_i64(&[2, -2, -2, 2]).unwrap(), &a, &b).unwrap());
        assert!(is_primitive(&u, &a, &ToricBudget { box_points: 1, ..b }).is_err());
    }
}
