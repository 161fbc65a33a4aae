//! Null designs, pods and minimal supports.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinat::{binom, colex_rank, colex_unrank, k_subsets, SubsetIndex};
use crate::error::{Error, Result};
use crate::exactmath::IntMatrix;
use crate::incidence::IncidenceMatrix;

/// An integer function on the k-subsets of `{1..n}`, keyed by colex rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NullDesign {
    pub n: usize,
    pub k: usize,
    values: BTreeMap<u64, i64>,
}

impl NullDesign {
    pub fn zero(n: usize, k: usize) -> Self {
        NullDesign {
            n,
            k,
            values: BTreeMap::new(),
        }
    }

    pub fn get(&self, s: &SubsetIndex) -> i64 {
        self.values.get(&colex_rank(s)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, s: &SubsetIndex, v: i64) -> Result<()> {
        if s.n != self.n || s.k() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                got: s.k(),
            });
        }
        let r = colex_rank(s);
        if v == 0 {
            self.values.remove(&r);
        } else {
            self.values.insert(r, v);
        }
        Ok(())
    }

    /// Nonzero values in colex order.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetIndex, i64)> + '_ {
        self.values
            .iter()
            .map(|(&r, &v)| (colex_unrank(self.n, self.k, r).expect("stored rank"), v))
    }

    pub fn support(&self) -> Vec<SubsetIndex> {
        self.iter().map(|(s, _)| s).collect()
    }

    pub fn positive_support(&self) -> Vec<SubsetIndex> {
        self.iter().filter(|(_, v)| *v > 0).map(|(s, _)| s).collect()
    }

    pub fn negative_support(&self) -> Vec<SubsetIndex> {
        self.iter().filter(|(_, v)| *v < 0).map(|(s, _)| s).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> Self {
        NullDesign {
            n: self.n,
            k: self.k,
            values: self.values.iter().map(|(&r, &v)| (r, -v)).collect(),
        }
    }

    /// Sign choice making the first nonzero value (colex order) positive.
    pub fn normalized(&self) -> Self {
        match self.values.values().next() {
            Some(&v) if v < 0 => self.negated(),
            _ => self.clone(),
        }
    }
}

impl Serialize for NullDesign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (set, v) in self.iter() {
            map.serialize_entry(&set.to_string(), &v)?;
        }
        map.end()
    }
}

impl NullDesign {
    /// Parses the JSON map form `{"136": 1, "146": -1}`.
    pub fn from_json(n: usize, k: usize, json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw(BTreeMap<String, i64>);
        let raw: Raw = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let mut d = NullDesign::zero(n, k);
        for (label, v) in raw.0 {
            let s = SubsetIndex::parse(n, &label)?;
            d.set(&s, v)?;
        }
        Ok(d)
    }
}

impl<'de> Deserialize<'de> for NullDesign {
    /// Infers `n` from the largest element and `k` from the label length.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = BTreeMap::<String, i64>::deserialize(d)?;
        let mut parsed = Vec::new();
        for (label, v) in raw {
            let s = SubsetIndex::parse(usize::MAX, &label).map_err(D::Error::custom)?;
            parsed.push((s.members, v));
        }
        let n = parsed.iter().flat_map(|(m, _)| m.iter().copied()).max().unwrap_or(0);
        let k = parsed.first().map_or(0, |(m, _)| m.len());
        let mut out = NullDesign::zero(n, k);
        for (m, v) in parsed {
            let s = SubsetIndex::new(n, m).map_err(D::Error::custom)?;
            out.set(&s, v).map_err(D::Error::custom)?;
        }
        Ok(out)
    }
}

/// Outcome of a balance check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceCheck {
    pub balanced: bool,
    /// first t-subset (colex) whose sum is nonzero
    pub violated: Option<SubsetIndex>,
}

/// Whether every t-subset `X` has `sum_{F ⊇ X} f(F) = 0`.
pub fn is_null_design(f: &NullDesign, t: usize) -> BalanceCheck {
    let entries: Vec<(u64, i64)> = f.iter().map(|(s, v)| (s.mask(), v)).collect();
    for x in k_subsets(f.n, t) {
        let xm = x.mask();
        let sum: i64 = entries.iter().filter(|(m, _)| xm & !m == 0).map(|(_, v)| v).sum();
        if sum != 0 {
            return BalanceCheck {
                balanced: false,
                violated: Some(x),
            };
        }
    }
    BalanceCheck {
        balanced: true,
        violated: None,
    }
}

/// `(x_{a1} - x_{b1}) ... (x_{a_{t+1}} - x_{b_{t+1}}) x_{s1} ... x_{s_{k-t-1}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pod {
    pub diff_pairs: Vec<(usize, usize)>,
    pub singletons: Vec<usize>,
}

impl Pod {
    pub fn new(diff_pairs: Vec<(usize, usize)>, singletons: Vec<usize>) -> Result<Self> {
        if diff_pairs.is_empty() {
            return Err(Error::BadParameters("a pod needs at least one pair".into()));
        }
        let mut all: Vec<usize> = diff_pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        all.extend(&singletons);
        let mut sorted = all.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.first() == Some(&0) {
            return Err(Error::BadParameters(format!("pod indices must be distinct and positive: {all:?}")));
        }
        Ok(Pod {
            diff_pairs,
            singletons,
        })
    }

    pub fn t(&self) -> usize {
        self.diff_pairs.len() - 1
    }

    pub fn k(&self) -> usize {
        self.diff_pairs.len() + self.singletons.len()
    }

    fn max_index(&self) -> usize {
        self.diff_pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(self.singletons.iter().copied())
            .max()
            .unwrap_or(0)
    }
}

/// Expands the pod polynomial into a k-uniform design on `{1..n}`.
pub fn pod_expand(p: &Pod, n: usize) -> Result<NullDesign> {
    let mx = p.max_index();
    if mx > n {
        return Err(Error::IndexOutOfRange { index: mx, n });
    }
    let mut d = NullDesign::zero(n, p.k());
    let pairs = p.diff_pairs.len();
    for choice in 0u64..1 << pairs {
        let mut members = p.singletons.clone();
        let mut sign = 1i64;
        for (i, &(a, b)) in p.diff_pairs.iter().enumerate() {
            if choice >> i & 1 == 1 {
                members.push(b);
                sign = -sign;
            } else {
                members.push(a);
            }
        }
        let s = SubsetIndex::new(n, members)?;
        d.set(&s, sign)?;
    }
    Ok(d)
}

/// All pods with increasing pairs `a < b`, pairs sorted, singletons
/// increasing. Distinct pods give distinct designs up to sign.
pub fn all_pods(n: usize, k: usize, t: usize) -> Vec<Pod> {
    let mut out = Vec::new();
    if k + t + 1 > n || t >= k {
        return out;
    }
    let paired = 2 * (t + 1);
    for chosen in k_subsets(n, paired) {
        let mut matchings = Vec::new();
        perfect_matchings(&chosen.members, &mut Vec::new(), &mut matchings);
        let rest: Vec<usize> = (1..=n).filter(|x| !chosen.members.contains(x)).collect();
        for singles in k_subsets(rest.len(), k - t - 1) {
            let singletons: Vec<usize> = singles.members.iter().map(|&i| rest[i - 1]).collect();
            for m in &matchings {
                out.push(Pod {
                    diff_pairs: m.clone(),
                    singletons: singletons.clone(),
                });
            }
        }
    }
    out
}

fn perfect_matchings(items: &[usize], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if items.is_empty() {
        out.push(cur.clone());
        return;
    }
    let a = items[0];
    for j in 1..items.len() {
        let b = items[j];
        let rest: Vec<usize> = items[1..].iter().copied().filter(|&x| x != b).collect();
        cur.push((a, b));
        perfect_matchings(&rest, cur, out);
        cur.pop();
    }
}

/// The design as a vector indexed by colex rank.
pub fn design_kernel_iso(d: &NullDesign) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); binom(d.n, d.k) as usize];
    for (&r, &x) in &d.values {
        v[r as usize] = BigInt::from(x);
    }
    v
}

pub fn vector_to_design(v: &[BigInt], n: usize, k: usize) -> Result<NullDesign> {
    let len = binom(n, k) as usize;
    if v.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            got: v.len(),
        });
    }
    let mut d = NullDesign::zero(n, k);
    for (r, x) in v.iter().enumerate() {
        if !x.is_zero() {
            let x = x
                .to_i64()
                .ok_or_else(|| Error::BadParameters(format!("design value {x} exceeds i64")))?;
            d.values.insert(r as u64, x);
        }
    }
    Ok(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// `{-1,0,1}` vectors with at most `max_support` nonzero entries.
    PlusMinusOne { max_support: usize },
    /// Every vector in `[-b, b]^N`.
    Box { bound: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportScan {
    /// `None` when no nonzero kernel vector was found
    pub min_positive_support: Option<usize>,
    pub witness: Option<NullDesign>,
    pub enumerated: u64,
}

/// Smallest positive support among nonzero kernel vectors of `a` in the
/// scanned family.
pub fn min_support_scan(a: &IncidenceMatrix, mode: ScanMode, budget: u64) -> Result<SupportScan> {
    match mode {
        ScanMode::PlusMinusOne { max_support } => scan_pm1(a, max_support, budget),
        ScanMode::Box { bound } => scan_box(a, bound, budget),
    }
}

/// Constant column sums force `|supp+| = |supp-|` on ±1 kernel vectors, so
/// kernel vectors with `|supp+| = s` are pairs of disjoint s-sets of
/// columns with equal column sums.
fn scan_pm1(a: &IncidenceMatrix, max_support: usize, budget: u64) -> Result<SupportScan> {
    let cols = a.cols();
    if cols > 64 {
        return Err(Error::PreconditionFailed("support scan handles at most 64 columns".into()));
    }
    let supports: Vec<Vec<usize>> = (0..cols).map(|j| a.column_support(j)).collect();
    if !supports.iter().map(Vec::len).all(|l| l == supports[0].len()) {
        return Err(Error::PreconditionFailed("column sums are not constant".into()));
    }
    let mut enumerated = 0u64;
    for s in 1..=max_support / 2 {
        let count = binom(cols, s);
        enumerated = enumerated.saturating_add(count);
        if enumerated > budget {
            return Err(Error::BudgetExceeded {
                what: "support scan",
                limit: budget,
            });
        }
        let mut seen: HashMap<Vec<u16>, Vec<u64>> = HashMap::new();
        for set in k_subsets(cols, s) {
            let mut image = vec![0u16; a.rows()];
            for &j in &set.members {
                for &i in &supports[j - 1] {
                    image[i] += 1;
                }
            }
            let mask = set.mask();
            let bucket = seen.entry(image).or_default();
            if let Some(&other) = bucket.iter().find(|&&m| m & mask == 0) {
                // `other` came first in colex order: it is the positive part
                let mut d = NullDesign::zero(a.n, a.k);
                for j in 0..cols {
                    let bit = 1u64 << j;
                    if other & bit != 0 {
                        d.values.insert(j as u64, 1);
                    } else if mask & bit != 0 {
                        d.values.insert(j as u64, -1);
                    }
                }
                return Ok(SupportScan {
                    min_positive_support: Some(s),
                    witness: Some(d),
                    enumerated,
                });
            }
            bucket.push(mask);
        }
    }
    Ok(SupportScan {
        min_positive_support: None,
        witness: None,
        enumerated,
    })
}

fn scan_box(a: &IncidenceMatrix, bound: i64, budget: u64) -> Result<SupportScan> {
    let cols = a.cols();
    let side = (2 * bound + 1) as u64;
    let total = (0..cols).try_fold(1u64, |acc, _| acc.checked_mul(side));
    let total = match total {
        Some(t) if t <= budget => t,
        _ => {
            return Err(Error::BudgetExceeded {
                what: "box scan",
                limit: budget,
            })
        }
    };
    let m = a.dense();
    let mut best: Option<(usize, Vec<i64>)> = None;
    let mut v = vec![-bound; cols];
    for _ in 0..total {
        if v.iter().any(|&x| x != 0) && m.iter().all(|r| r.iter().zip(&v).map(|(x, y)| x * y).sum::<i64>() == 0) {
            let plus = v.iter().filter(|&&x| x > 0).count();
            if best.as_ref().is_none_or(|(b, _)| plus < *b) {
                best = Some((plus, v.clone()));
            }
        }
        for x in v.iter_mut() {
            *x += 1;
            if *x > bound {
                *x = -bound;
            } else {
                break;
            }
        }
    }
    let witness = match &best {
        Some((_, w)) => {
            let big: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
            Some(vector_to_design(&big, a.n, a.k)?)
        }
        None => None,
    };
    Ok(SupportScan {
        min_positive_support: best.map(|(b, _)| b),
        witness,
        enumerated: total,
    })
}

/// Pod designs as kernel vectors, as columns of a matrix.
pub fn pod_matrix(n: usize, k: usize, t: usize) -> Result<IntMatrix> {
    let pods = all_pods(n, k, t);
    let cols: Vec<Vec<BigInt>> = pods
        .iter()
        .map(|p| pod_expand(p, n).map(|d| design_kernel_iso(&d)))
        .collect::<Result<_>>()?;
    IntMatrix::from_columns(binom(n, k) as usize, &cols)
}
