//! Subsets in colex order, derangements, two-row tableaux.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binomial coefficient; saturates at `u64::MAX`.
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// A k-subset of `{1..n}` with strictly increasing members.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubsetIndex {
    pub n: usize,
    pub members: Vec<usize>,
}

impl SubsetIndex {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadParameters(format!("repeated element in {members:?}")));
        }
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m > n) {
            return Err(Error::IndexOutOfRange { index: bad, n });
        }
        Ok(SubsetIndex { n, members })
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    /// Bit `i-1` set for each member `i`.
    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        let members = (1..=n).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
        SubsetIndex { n, members }
    }

    pub fn is_subset_of(&self, other: &SubsetIndex) -> bool {
        self.mask() & !other.mask() == 0
    }

    /// Parses `136` (one digit per element, n ≤ 9) or `1,3,6`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let members: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad subset label {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        SubsetIndex::new(n, members)
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n <= 9 { "" } else { "," };
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

pub fn colex_rank(s: &SubsetIndex) -> u64 {
    s.members
        .iter()
        .enumerate()
        .map(|(i, &m)| binom(m - 1, i + 1))
        .sum()
}

pub fn colex_unrank(n: usize, k: usize, r: u64) -> Result<SubsetIndex> {
    if k > n || r >= binom(n, k) {
        return Err(Error::RankOutOfRange { n, k, rank: r });
    }
    let mut members = vec![0; k];
    let mut r = r;
    let mut top = n;
    for i in (0..k).rev() {
        // largest m with C(m-1, i+1) <= r
        let mut m = top;
        while binom(m - 1, i + 1) > r {
            m -= 1;
        }
        members[i] = m;
        r -= binom(m - 1, i + 1);
        top = m - 1;
    }
    Ok(SubsetIndex { n, members })
}

/// All k-subsets of `{1..n}` in colex order.
pub fn k_subsets(n: usize, k: usize) -> Vec<SubsetIndex> {
    let mut out = Vec::with_capacity(binom(n, k).min(1 << 24) as usize);
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(SubsetIndex {
            n,
            members: cur.clone(),
        });
        // colex successor: bump the first member that can move
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            let limit = if i + 1 < k { cur[i + 1] } else { n + 1 };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, c) in cur.iter_mut().enumerate().take(i) {
                    *c = j + 1;
                }
                break;
            }
            i += 1;
        }
    }
}

/// A fixed-point-free permutation of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Derangement {
    pub n: usize,
    /// `images[i-1] = σ(i)`
    pub images: Vec<usize>,
    /// canonical: each cycle starts at its smallest element; cycles sorted
    pub cycles: Vec<Vec<usize>>,
    pub t_count: usize,
    pub s_count: usize,
}

impl Derangement {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for (i, &im) in images.iter().enumerate() {
            if im == 0 || im > n || seen[im] {
                return Err(Error::BadParameters(format!("{images:?} is not a permutation")));
            }
            if im == i + 1 {
                return Err(Error::BadParameters(format!("{} is a fixed point", i + 1)));
            }
            seen[im] = true;
        }
        let cycles = canonical_cycles(&images);
        let t_count = cycles.len();
        let s_count = cycles.iter().filter(|c| c.len() == 2).count();
        Ok(Derangement {
            n,
            images,
            cycles,
            t_count,
            s_count,
        })
    }

    /// Builds from disjoint cycles covering `{1..n}`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images = vec![0; n];
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                let b = c[(i + 1) % c.len()];
                if a == 0 || a > n {
                    return Err(Error::IndexOutOfRange { index: a, n });
                }
                if images[a - 1] != 0 {
                    return Err(Error::BadParameters(format!("{a} appears twice")));
                }
                images[a - 1] = b;
            }
        }
        if images.contains(&0) {
            return Err(Error::BadParameters("cycles do not cover 1..n".into()));
        }
        Derangement::from_images(images)
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }
}

impl fmt::Display for Derangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

fn canonical_cycles(images: &[usize]) -> Vec<Vec<usize>> {
    let n = images.len();
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut c = vec![start];
        seen[start] = true;
        let mut x = images[start - 1];
        while x != start {
            seen[x] = true;
            c.push(x);
            x = images[x - 1];
        }
        cycles.push(c);
    }
    cycles
}

pub fn cycle_stats(d: &Derangement) -> (usize, usize) {
    (d.t_count, d.s_count)
}

/// Derangements of `{1..n}` in lexicographic order of image tuples.
/// Restartable: clone before iterating to replay.
#[derive(Clone, Debug)]
pub struct Derangements {
    n: usize,
    stack: Vec<usize>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

pub fn derangements(n: usize) -> Derangements {
    Derangements {
        n,
        stack: Vec::with_capacity(n),
        used: vec![false; n + 2],
        started: false,
        done: n < 2,
    }
}

impl Derangements {
    /// Extends the current prefix with the smallest admissible images,
    /// starting the search at position `stack.len()` from value `from`.
    fn advance(&mut self, mut from: usize) -> bool {
        loop {
            let pos = self.stack.len() + 1;
            if pos > self.n {
                return true;
            }
            let next = (from..=self.n).find(|&v| v != pos && !self.used[v]);
            match next {
                Some(v) => {
                    self.used[v] = true;
                    self.stack.push(v);
                    from = 1;
                }
                None => {
                    let Some(v) = self.stack.pop() else {
                        return false;
                    };
                    self.used[v] = false;
                    from = v + 1;
                }
            }
        }
    }
}

impl Iterator for Derangements {
    type Item = Derangement;

    fn next(&mut self) -> Option<Derangement> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.advance(1)
        } else {
            let v = self.stack.pop().expect("complete tuple");
            self.used[v] = false;
            self.advance(v + 1)
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(Derangement::from_images(self.stack.clone()).expect("valid by construction"))
    }
}

/// Standard tableau of shape `(n-s, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoRowTableau {
    pub top_row: Vec<usize>,
    pub bottom_row: Vec<usize>,
}

impl TwoRowTableau {
    pub fn n(&self) -> usize {
        self.top_row.len() + self.bottom_row.len()
    }

    pub fn is_standard(&self) -> bool {
        let inc = |r: &[usize]| r.windows(2).all(|w| w[0] < w[1]);
        let mut all: Vec<usize> = self.top_row.iter().chain(&self.bottom_row).copied().collect();
        all.sort_unstable();
        inc(&self.top_row)
            && inc(&self.bottom_row)
            && self.bottom_row.len() <= self.top_row.len()
            && self.bottom_row.iter().zip(&self.top_row).all(|(b, t)| b > t)
            && all.windows(2).all(|w| w[0] != w[1])
    }

    /// Column pairs `(i_k, j_k)` for the Specht polynomial.
    pub fn columns(&self) -> Vec<(usize, usize)> {
        self.top_row.iter().copied().zip(self.bottom_row.iter().copied()).collect()
    }
}

/// Every standard tableau of shape `(n-s, s)` filled with `1..n`.
pub fn standard_two_row_tableaux(n: usize, s: usize) -> Result<Vec<TwoRowTableau>> {
    if 2 * s > n {
        return Err(Error::BadParameters(format!("shape ({}, {s}) is not a partition", n as i64 - s as i64)));
    }
    let mut out = Vec::new();
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    fill(1, n, s, &mut top, &mut bottom, &mut out);
    Ok(out)
}

fn fill(
    next: usize,
    n: usize,
    s: usize,
    top: &mut Vec<usize>,
    bottom: &mut Vec<usize>,
    out: &mut Vec<TwoRowTableau>,
) {
    if next > n {
        out.push(TwoRowTableau {
            top_row: top.clone(),
            bottom_row: bottom.clone(),
        });
        return;
    }
    if top.len() < n - s {
        top.push(next);
        fill(next + 1, n, s, top, bottom, out);
        top.pop();
    }
    if bottom.len() < s && bottom.len() < top.len() {
        bottom.push(next);
        fill(next + 1, n, s, top, bottom, out);
        bottom.pop();
    }
}
