use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// A polynomial with integer coefficients, terms keyed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPoly {
    pub var_count: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    #[serde(with = "crate::exactmath::decimal::scalar")]
    pub coefficient: BigInt,
    pub monomial: BTreeMap<String, u32>,
}

/// Graded lexicographic comparison of exponent vectors.
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl SymbolicPoly {
    pub fn zero(var_count: usize) -> Self {
        SymbolicPoly {
            var_count,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(var_count: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; var_count], c)
    }

    pub fn monomial(exponents: Vec<u32>, c: BigInt) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: BigInt) {
        assert_eq!(exponents.len(), self.var_count);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u64).sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().map(|&x| x as u64).sum::<u64>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn add(&self, other: &SymbolicPoly) -> SymbolicPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymbolicPoly) -> SymbolicPoly {
        self.add(&other.scaled(&-BigInt::one()))
    }

    pub fn scaled(&self, k: &BigInt) -> SymbolicPoly {
        let mut out = Self::zero(self.var_count);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &SymbolicPoly) -> SymbolicPoly {
        assert_eq!(self.var_count, other.var_count);
        let mut out = Self::zero(self.var_count);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &[u32]) -> SymbolicPoly {
        SymbolicPoly {
            var_count: self.var_count,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Vec<u32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.var_count];
        };
        it.fold(first.clone(), |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect())
    }

    /// Divides every term by the monomial `m`, which must divide all of them.
    pub fn div_monomial(&self, m: &[u32]) -> Option<SymbolicPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e.iter().zip(m).any(|(x, y)| x < y) {
                return None;
            }
            terms.insert(e.iter().zip(m).map(|(x, y)| x - y).collect(), c.clone());
        }
        Some(SymbolicPoly {
            var_count: self.var_count,
            terms,
        })
    }

    /// Gcd of the coefficients, with the sign of the leading term.
    pub fn content(&self) -> BigInt {
        let g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        match self.terms.iter().max_by(|a, b| grlex(a.0, b.0)) {
            Some((_, c)) if c.is_negative() => -g,
            _ => g,
        }
    }

    /// Replaces variable `i` by the monomial `images[i]` over `target_vars`
    /// variables.
    pub fn substitute(&self, images: &[Vec<u32>], target_vars: usize) -> SymbolicPoly {
        assert_eq!(images.len(), self.var_count);
        let mut out = Self::zero(target_vars);
        for (e, c) in &self.terms {
            let mut m = vec![0u32; target_vars];
            for (&k, img) in e.iter().zip(images) {
                if k > 0 {
                    for (mi, &x) in m.iter_mut().zip(img) {
                        *mi += k * x;
                    }
                }
            }
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .filter(|(k, _)| **k > 0)
                    .fold(c.clone(), |acc, (&k, x)| acc * x.pow(k))
            })
            .sum()
    }

    /// Multivariate division by a single polynomial in graded lex order.
    /// The remainder is zero exactly when `d` divides `self` over the
    /// rationals, since `{d}` is a Gröbner basis of `(d)`.
    fn divide(&self, d: &SymbolicPoly) -> (BTreeMap<Vec<u32>, BigRational>, bool) {
        let (lm, lc) = d.terms.iter().max_by(|a, b| grlex(a.0, b.0)).expect("nonzero divisor");
        let lc = BigRational::from(lc.clone());
        let mut rest: BTreeMap<Vec<u32>, BigRational> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), BigRational::from(c.clone())))
            .collect();
        let mut quotient = BTreeMap::new();
        loop {
            let Some((m, c)) = rest.iter().max_by(|a, b| grlex(a.0, b.0)).map(|(m, c)| (m.clone(), c.clone())) else {
                return (quotient, true);
            };
            if m.iter().zip(lm).any(|(a, b)| a < b) {
                return (quotient, false);
            }
            let shift: Vec<u32> = m.iter().zip(lm).map(|(a, b)| a - b).collect();
            let factor = &c / &lc;
            for (e, dc) in &d.terms {
                let key: Vec<u32> = e.iter().zip(&shift).map(|(a, b)| a + b).collect();
                let v = rest.entry(key.clone()).or_insert_with(BigRational::zero);
                *v -= &factor * BigRational::from(dc.clone());
                if v.is_zero() {
                    rest.remove(&key);
                }
            }
            quotient.insert(shift, factor);
        }
    }

    pub fn is_divisible_by(&self, d: &SymbolicPoly) -> bool {
        !d.is_zero() && self.divide(d).1
    }

    /// The quotient when `d` divides `self` with integer quotient.
    pub fn exact_quotient(&self, d: &SymbolicPoly) -> Option<SymbolicPoly> {
        if d.is_zero() {
            return None;
        }
        let (q, exact) = self.divide(d);
        if !exact || q.values().any(|c| !c.is_integer()) {
            return None;
        }
        Some(SymbolicPoly {
            var_count: self.var_count,
            terms: q.into_iter().map(|(e, c)| (e, c.to_integer())).collect(),
        })
    }

    /// Terms in decreasing graded lex order, e.g. `2*c123 - c124^2`.
    pub fn display_with(&self, prefix: &str, labels: &[String]) -> String {
        let mut terms: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        let mut out = String::new();
        for (i, (e, c)) in terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(labels)
                .filter(|(k, _)| **k > 0)
                .map(|(&k, l)| if k == 1 { format!("{prefix}{l}") } else { format!("{prefix}{l}^{k}") })
                .collect();
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{abs}*{}", mono.join("*"))),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_json(&self, labels: &[String]) -> Vec<TermJson> {
        let mut terms: Vec<(&Vec<u32>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        terms
            .into_iter()
            .map(|(e, c)| TermJson {
                coefficient: c.clone(),
                monomial: e
                    .iter()
                    .zip(labels)
                    .filter(|(k, _)| **k > 0)
                    .map(|(&k, l)| (l.clone(), k))
                    .collect(),
            })
            .collect()
    }
}
