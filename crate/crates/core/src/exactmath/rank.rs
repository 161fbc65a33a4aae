use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank over the rationals (fraction-free elimination).
pub fn rank_q(m: &IntMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let piv = &top[rank];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = piv[c].gcd(&row[c]);
            let fp = &row[c] / &g;
            let fr = &piv[c] / &g;
            for j in c..cols {
                let v = &row[j] * &fr - &piv[j] * &fp;
                row[j] = v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over the field with `p` elements.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::CompositeModulus(p));
    }
    let big_p = BigInt::from(p);
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&big_p).to_u64().expect("reduced"))
                .collect()
        })
        .collect();
    let mut rank = 0usize;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = mod_inverse(a[rank][c], p);
        for j in c..cols {
            a[rank][j] = mulmod(a[rank][j], inv, p);
        }
        for i in 0..rows {
            if i == rank || a[i][c] == 0 {
                continue;
            }
            let f = a[i][c];
            for j in c..cols {
                let sub = mulmod(f, a[rank][j], p);
                a[i][j] = (a[i][j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: p is prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn composite_modulus_rejected() {
        let m = IntMatrix::identity(2);
        assert_eq!(rank_mod_p(&m, 4), Err(Error::CompositeModulus(4)));
        assert_eq!(rank_mod_p(&m, 1), Err(Error::CompositeModulus(1)));
    }

    #[test]
    fn rank_drops_mod_p() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(rank_q(&m), 2);
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 5).unwrap(), 2);
    }

    #[test]
    fn negative_entries_reduce_correctly() {
        let m = IntMatrix::from_rows(&[[-1, 1], [1, -1]]);
        assert_eq!(rank_mod_p(&m, 7).unwrap(), 1);
        assert_eq!(rank_q(&m), 1);
    }

    proptest::proptest! {
        #[test]
        fn mod_p_rank_never_exceeds_rational_rank(
            rows in 1usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(-5i64..6, 16),
            pi in 0usize..4
        ) {
            let p = [2u64, 3, 5, 7][pi];
            let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * cols..(i + 1) * cols].to_vec()).collect();
            let m = IntMatrix::from_rows(&data);
            let r = rank_q(&m);
            proptest::prop_assert!(rank_mod_p(&m, p).unwrap() <= r);
            let k = crate::exactmath::kernel_basis(&m);
            proptest::prop_assert_eq!(r, cols - k.rank());
        }
    }
}
