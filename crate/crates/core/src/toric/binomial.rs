use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::exactmath::IntMatrix;

/// `x^plus - x^minus` with disjoint supports.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binomial {
    pub var_count: usize,
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

impl Binomial {
    pub fn new(plus: Vec<u32>, minus: Vec<u32>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::DimensionMismatch {
                expected: plus.len(),
                got: minus.len(),
            });
        }
        if plus.iter().zip(&minus).any(|(&a, &b)| a != 0 && b != 0) {
            return Err(Error::BadParameters("plus and minus parts share a variable".into()));
        }
        if plus.iter().chain(&minus).all(|&x| x == 0) {
            return Err(Error::BadParameters("zero binomial".into()));
        }
        Ok(Binomial {
            var_count: plus.len(),
            plus,
            minus,
        })
    }

    /// Splits a nonzero integer vector into positive and negative parts.
    pub fn from_vector(v: &[BigInt]) -> Result<Self> {
        let conv = |x: &BigInt| {
            x.abs()
                .to_u32()
                .ok_or_else(|| Error::BadParameters(format!("exponent {x} too large")))
        };
        let mut plus = vec![0; v.len()];
        let mut minus = vec![0; v.len()];
        for (i, x) in v.iter().enumerate() {
            if x.is_positive() {
                plus[i] = conv(x)?;
            } else if x.is_negative() {
                minus[i] = conv(x)?;
            }
        }
        Binomial::new(plus, minus)
    }

    pub fn from_i64(v: &[i64]) -> Result<Self> {
        Binomial::from_vector(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    /// Squarefree binomial on two disjoint sets of variable indices.
    pub fn from_supports(var_count: usize, plus: &[usize], minus: &[usize]) -> Result<Self> {
        let mut p = vec![0; var_count];
        let mut m = vec![0; var_count];
        for &i in plus {
            *p.get_mut(i).ok_or(Error::IndexOutOfRange { index: i, n: var_count })? += 1;
        }
        for &i in minus {
            *m.get_mut(i).ok_or(Error::IndexOutOfRange { index: i, n: var_count })? += 1;
        }
        Binomial::new(p, m)
    }

    /// `plus - minus` as an integer vector.
    pub fn vector(&self) -> Vec<i64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    pub fn big_vector(&self) -> Vec<BigInt> {
        self.vector().into_iter().map(BigInt::from).collect()
    }

    pub fn plus_degree(&self) -> u64 {
        self.plus.iter().map(|&x| x as u64).sum()
    }

    pub fn minus_degree(&self) -> u64 {
        self.minus.iter().map(|&x| x as u64).sum()
    }

    /// Degree of the larger term.
    pub fn degree(&self) -> u64 {
        self.plus_degree().max(self.minus_degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.plus_degree() == self.minus_degree()
    }

    pub fn is_squarefree(&self) -> bool {
        self.plus.iter().chain(&self.minus).all(|&x| x <= 1)
    }

    pub fn negated(&self) -> Self {
        Binomial {
            var_count: self.var_count,
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }

    /// Sign with the larger term (in `order`) first.
    pub fn canonical(&self, order: &MonomialOrder) -> Self {
        if order.cmp(&self.plus, &self.minus) == Ordering::Less {
            self.negated()
        } else {
            self.clone()
        }
    }

    /// Whether `A (plus - minus) = 0`.
    pub fn in_kernel(&self, a: &IntMatrix) -> bool {
        a.mul_vec_i64(&self.vector())
            .map(|v| v.iter().all(Zero::is_zero))
            .unwrap_or(false)
    }

    pub fn plus_support(&self) -> Vec<usize> {
        (0..self.var_count).filter(|&i| self.plus[i] > 0).collect()
    }

    pub fn minus_support(&self) -> Vec<usize> {
        (0..self.var_count).filter(|&i| self.minus[i] > 0).collect()
    }

    /// Renders as `c136*c246 - c146*c236` style text with the given names.
    pub fn display_with(&self, prefix: &str, labels: &[String]) -> String {
        let term = |e: &[u32]| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("{prefix}{}", labels[i])
                    } else {
                        format!("{prefix}{}^{x}", labels[i])
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        format!("{} - {}", term(&self.plus), term(&self.minus))
    }

    pub(crate) fn to_json(&self, labels: &[String]) -> LabelledBinomial {
        let part = |e: &[u32]| {
            e.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| (labels[i].clone(), x))
                .collect()
        };
        LabelledBinomial {
            plus: part(&self.plus),
            minus: part(&self.minus),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub(crate) struct LabelledBinomial {
    plus: BTreeMap<String, u32>,
    minus: BTreeMap<String, u32>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_parts() {
        let b = Binomial::from_i64(&[1, -1, 0, 2]).unwrap();
        assert_eq!(b.plus, vec![1, 0, 0, 2]);
        assert_eq!(b.minus, vec![0, 1, 0, 0]);
        assert!(!b.is_homogeneous());
        assert_eq!(b.vector(), vec![1, -1, 0, 2]);
        assert!(Binomial::from_i64(&[0, 0]).is_err());
        assert!(Binomial::new(vec![1, 0], vec![1, 1]).is_err());
    }

    #[test]
    fn canonical_sign() {
        let o = MonomialOrder::degrevlex(3);
        let b = Binomial::from_i64(&[0, 1, -1]).unwrap();
        assert_eq!(b.canonical(&o), b);
        assert_eq!(b.negated().canonical(&o), b);
    }

    #[test]
    fn text_rendering() {
        let labels: Vec<String> = ["12", "13", "23"].iter().map(|s| s.to_string()).collect();
        let b = Binomial::from_i64(&[2, -1, -1]).unwrap();
        assert_eq!(b.display_with("p", &labels), "p12^2 - p13*p23");
    }
}
