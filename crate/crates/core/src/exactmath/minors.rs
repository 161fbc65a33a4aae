use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::{det_bareiss, det_small, IntMatrix};
use crate::combinat::{binom, colex_unrank};

/// gcd over an enumerated set of minors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorGcd {
    /// gcd of the nonzero minors seen (zero if none were nonzero)
    pub gcd: BigInt,
    pub enumerated: u64,
    /// true when every minor of the requested size was enumerated
    pub complete: bool,
}

impl MinorGcd {
    /// Associative merge of two disjoint chunks.
    pub fn merge(self, other: MinorGcd) -> MinorGcd {
        MinorGcd {
            gcd: self.gcd.gcd(&other.gcd),
            enumerated: self.enumerated + other.enumerated,
            complete: false,
        }
    }
}

/// Number of `size x size` minors, saturating.
pub fn minor_count(m: &IntMatrix, size: usize) -> u64 {
    binom(m.rows(), size).saturating_mul(binom(m.cols(), size))
}

/// gcd over minors with flat indices in `range`. Index `i` selects row
/// subset `i / C(cols,size)` and column subset `i % C(cols,size)`, both colex.
pub fn gcd_minors_range(m: &IntMatrix, size: usize, range: Range<u64>) -> MinorGcd {
    let ccount = binom(m.cols(), size);
    let total = minor_count(m, size);
    let end = range.end.min(total);
    let small = m.to_i64_rows();
    let mut g = BigInt::zero();
    let mut count = 0;
    let mut buf = Vec::with_capacity(size * size);
    for idx in range.start..end {
        let rs = colex_unrank(m.rows(), size, idx / ccount).expect("in range");
        let cs = colex_unrank(m.cols(), size, idx % ccount).expect("in range");
        let det = match &small {
            Some(rows) => {
                buf.clear();
                for &r in &rs.members {
                    for &c in &cs.members {
                        buf.push(rows[r - 1][c - 1]);
                    }
                }
                det_small(size, &buf)
            }
            None => {
                let big: Vec<BigInt> = rs
                    .members
                    .iter()
                    .flat_map(|&r| cs.members.iter().map(move |&c| m.get(r - 1, c - 1).clone()))
                    .collect();
                det_bareiss(size, big)
            }
        };
        g = g.gcd(&det);
        count += 1;
    }
    MinorGcd {
        gcd: g,
        enumerated: count,
        complete: range.start == 0 && end == total,
    }
}

/// gcd of all nonzero `size x size` minors, enumerating at most `budget`
/// of them. If the budget runs out, the partial gcd is returned with
/// `complete = false`.
pub fn gcd_maximal_minors(m: &IntMatrix, size: usize, budget: u64) -> MinorGcd {
    let total = minor_count(m, size);
    if size > m.rows().min(m.cols()) {
        return MinorGcd {
            gcd: BigInt::zero(),
            enumerated: 0,
            complete: true,
        };
    }
    let r = gcd_minors_range(m, size, 0..total.min(budget));
    MinorGcd {
        complete: r.enumerated == total,
        ..r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_minors() {
        let m = IntMatrix::identity(3);
        let r = gcd_maximal_minors(&m, 3, 100);
        assert_eq!(r.gcd, BigInt::from(1));
        assert!(r.complete);
        let r = gcd_maximal_minors(&m, 1, 100);
        assert_eq!(r.enumerated, 9);
    }

    #[test]
    fn chunks_merge_to_whole() {
        let m = IntMatrix::from_rows(&[[2, 4, 6, 0], [0, 6, 3, 9], [4, 2, 8, 6]]);
        let whole = gcd_maximal_minors(&m, 2, u64::MAX);
        let a = gcd_minors_range(&m, 2, 0..7);
        let b = gcd_minors_range(&m, 2, 7..18);
        assert_eq!(a.merge(b).gcd, whole.gcd);
        assert_eq!(whole.enumerated, 18);
    }

    #[test]
    fn budget_truncation_is_flagged() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]);
        let r = gcd_maximal_minors(&m, 2, 2);
        assert!(!r.complete);
        assert_eq!(r.enumerated, 2);
    }
}
