//! Buchberger's algorithm specialised to pure binomials `x^a - x^b`.
//!
//! Modulo a binomial Gröbner basis every monomial has a monomial normal
//! form, so a binomial reduces to zero exactly when its two terms share a
//! normal form. Pairs are pruned with the Gebauer–Möller criteria and
//! processed by increasing degree, which allows degree-truncated runs on
//! homogeneous input.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// A binomial with `lead > trail` in the active order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bin {
    pub lead: Vec<u32>,
    pub trail: Vec<u32>,
    sig: u128,
}

fn signature(m: &[u32]) -> u128 {
    let mut s = 0u128;
    for (i, &e) in m.iter().enumerate() {
        if e != 0 {
            s |= 1 << (i % 128);
        }
    }
    s
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn disjoint(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

fn degree(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).sum()
}

pub(crate) fn cancel_common(a: &mut [u32], b: &mut [u32]) {
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let m = (*x).min(*y);
        *x -= m;
        *y -= m;
    }
}

impl Bin {
    /// Orders the two terms; `None` when they coincide.
    pub fn new(order: &MonomialOrder, a: Vec<u32>, b: Vec<u32>) -> Option<Bin> {
        match order.cmp(&a, &b) {
            Ordering::Equal => None,
            Ordering::Greater => Some(Bin {
                sig: signature(&a),
                lead: a,
                trail: b,
            }),
            Ordering::Less => Some(Bin {
                sig: signature(&b),
                lead: b,
                trail: a,
            }),
        }
    }
}

pub(crate) struct Engine {
    order: MonomialOrder,
    elems: Vec<Bin>,
    active: Vec<bool>,
    pairs: BTreeSet<(u64, usize, usize)>,
    cancel: bool,
    pair_budget: u64,
}

impl Engine {
    /// `cancel` divides out common factors of the two terms; only valid
    /// for ideals that are saturated with respect to every variable.
    pub fn new(order: MonomialOrder, cancel: bool, pair_budget: u64) -> Self {
        Engine {
            order,
            elems: Vec::new(),
            active: Vec::new(),
            pairs: BTreeSet::new(),
            cancel,
            pair_budget,
        }
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    fn find_divisor(&self, m: &[u32]) -> Option<usize> {
        let s = signature(m);
        (0..self.elems.len()).find(|&i| {
            self.active[i] && self.elems[i].sig & !s == 0 && divides(&self.elems[i].lead, m)
        })
    }

    pub fn reduce_monomial(&self, m: &mut [u32]) {
        while let Some(i) = self.find_divisor(m) {
            let g = &self.elems[i];
            for ((x, l), t) in m.iter_mut().zip(&g.lead).zip(&g.trail) {
                *x = *x - l + t;
            }
        }
    }

    /// Fully reduced form of `x^a - x^b`, or `None` if it reduces to zero.
    pub fn normal_form(&self, mut a: Vec<u32>, mut b: Vec<u32>) -> Option<Bin> {
        if self.cancel {
            cancel_common(&mut a, &mut b);
        }
        self.reduce_monomial(&mut a);
        self.reduce_monomial(&mut b);
        if self.cancel {
            // irreducible monomials stay irreducible after division
            cancel_common(&mut a, &mut b);
        }
        Bin::new(&self.order, a, b)
    }

    /// Adds a generator (reduced first). Returns whether it was new.
    pub fn add_generator(&mut self, a: Vec<u32>, b: Vec<u32>) -> Result<bool> {
        match self.normal_form(a, b) {
            Some(h) => {
                self.insert(h)?;
                Ok(true)
            }
            None => Ok(false),
        }
    }

    fn insert(&mut self, h: Bin) -> Result<()> {
        let hi = self.elems.len();
        let cands: Vec<(usize, Vec<u32>, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let l = lcm(&h.lead, &self.elems[g].lead);
                (g, l, disjoint(&h.lead, &self.elems[g].lead))
            })
            .collect();
        // Gebauer–Möller: keep (h,g1) unless some other candidate's lcm divides it
        let mut kept: Vec<(usize, Vec<u32>, bool)> = Vec::new();
        for (c, (g1, l1, dj)) in cands.iter().enumerate() {
            let dominated = !dj
                && (cands[c + 1..].iter().any(|(_, l2, _)| divides(l2, l1))
                    || kept.iter().any(|(_, l2, _)| divides(l2, l1)));
            if !dominated {
                kept.push((*g1, l1.clone(), *dj));
            }
        }
        // prune old pairs whose lcm is divisible by lead(h) strictly
        let lead_h = h.lead.clone();
        let elems = &self.elems;
        self.pairs.retain(|&(_, i, j)| {
            let l = lcm(&elems[i].lead, &elems[j].lead);
            if !divides(&lead_h, &l) {
                return true;
            }
            lcm(&elems[i].lead, &lead_h) == l || lcm(&elems[j].lead, &lead_h) == l
        });
        for (g, l, dj) in kept {
            if !dj {
                self.pairs.insert((degree(&l), g, hi));
            }
        }
        if self.pairs.len() as u64 > self.pair_budget {
            return Err(Error::BudgetExceeded {
                what: "pair queue",
                limit: self.pair_budget,
            });
        }
        for g in 0..hi {
            if self.active[g] && divides(&h.lead, &self.elems[g].lead) {
                self.active[g] = false;
            }
        }
        self.elems.push(h);
        self.active.push(true);
        Ok(())
    }

    /// Processes all pairs of degree at most `limit` (all pairs if `None`).
    pub fn complete(&mut self, limit: Option<u64>) -> Result<()> {
        while let Some(&(d, i, j)) = self.pairs.first() {
            if limit.is_some_and(|l| d > l) {
                break;
            }
            self.pairs.pop_first();
            let l = lcm(&self.elems[i].lead, &self.elems[j].lead);
            let sa: Vec<u32> = l
                .iter()
                .zip(&self.elems[i].lead)
                .zip(&self.elems[i].trail)
                .map(|((x, y), z)| x - y + z)
                .collect();
            let sb: Vec<u32> = l
                .iter()
                .zip(&self.elems[j].lead)
                .zip(&self.elems[j].trail)
                .map(|((x, y), z)| x - y + z)
                .collect();
            if let Some(r) = self.normal_form(sa, sb) {
                self.insert(r)?;
            }
        }
        Ok(())
    }

    /// Reduced Gröbner basis of the active elements, sorted by leading term.
    pub fn reduced_basis(&self) -> Vec<Bin> {
        let mut out: Vec<Bin> = (0..self.elems.len())
            .filter(|&i| self.active[i])
            .map(|i| {
                let g = &self.elems[i];
                let mut t = g.trail.clone();
                self.reduce_monomial(&mut t);
                let mut lead = g.lead.clone();
                if self.cancel {
                    cancel_common(&mut lead, &mut t);
                }
                Bin::new(&self.order, lead, t).expect("nonzero element")
            })
            .collect();
        out.sort_by(|a, b| self.order.cmp(&a.lead, &b.lead));
        out
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub(crate) fn groebner(
    order: &MonomialOrder,
    gens: &[(Vec<u32>, Vec<u32>)],
    cancel: bool,
    pair_budget: u64,
) -> Result<Vec<Bin>> {
    let mut e = Engine::new(order.clone(), cancel, pair_budget);
    let mut sorted: Vec<&(Vec<u32>, Vec<u32>)> = gens.iter().collect();
    sorted.sort_by_key(|(a, b)| degree(a).max(degree(b)));
    for (a, b) in sorted {
        e.add_generator(a.clone(), b.clone())?;
    }
    e.complete(None)?;
    Ok(e.reduced_basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_cubic() {
        // kernel of [[3,2,1,0],[0,1,2,3]]: ideal of the twisted cubic
        let o = MonomialOrder::degrevlex(4);
        let gens = vec![
            (vec![1, 0, 1, 0], vec![0, 2, 0, 0]),
            (vec![0, 1, 0, 1], vec![0, 0, 2, 0]),
        ];
        // lattice basis ideal is not saturated; saturation is tested elsewhere
        let g = groebner(&o, &gens, false, 1000).unwrap();
        assert!(g.len() >= 2);
        let full = vec![
            (vec![1, 0, 1, 0], vec![0, 2, 0, 0]),
            (vec![0, 1, 0, 1], vec![0, 0, 2, 0]),
            (vec![1, 0, 0, 1], vec![0, 1, 1, 0]),
        ];
        let g = groebner(&o, &full, true, 1000).unwrap();
        assert_eq!(g.len(), 3);
        let e = {
            let mut e = Engine::new(o.clone(), true, 1000);
            for (a, b) in &full {
                e.add_generator(a.clone(), b.clone()).unwrap();
            }
            e.complete(None).unwrap();
            e
        };
        // x0^2 x3 - x1^3 lies in the ideal
        assert!(e.normal_form(vec![2, 0, 0, 1], vec![0, 3, 0, 0]).is_none());
        assert!(e.normal_form(vec![1, 0, 0, 0], vec![0, 1, 0, 0]).is_some());
    }

    #[test]
    fn equal_columns_give_linear_binomial() {
        let o = MonomialOrder::degrevlex(2);
        let g = groebner(&o, &[(vec![1, 0], vec![0, 1])], true, 10).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].lead, vec![1, 0]);
    }

    #[test]
    fn budget_is_enforced() {
        let o = MonomialOrder::degrevlex(4);
        let gens = vec![
            (vec![1, 0, 1, 0], vec![0, 2, 0, 0]),
            (vec![0, 1, 0, 1], vec![0, 0, 2, 0]),
            (vec![1, 0, 0, 1], vec![0, 1, 1, 0]),
        ];
        assert!(matches!(groebner(&o, &gens, true, 0), Err(Error::BudgetExceeded { .. })));
    }
}
