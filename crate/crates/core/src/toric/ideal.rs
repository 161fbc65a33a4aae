use std::collections::HashSet;

use super::groebner::{cancel_common, groebner, Bin, Engine};
use super::{BasisKind, Binomial, BinomialBasis, MonomialOrder, ToricBudget, ToricMatrix};
use crate::designs::{all_pods, pod_expand};
use crate::error::{Error, Result};
use crate::exactmath::kernel_basis;
use crate::incidence::build_matrix;

type Gen = (Vec<u32>, Vec<u32>);

fn lattice_generators(a: &ToricMatrix) -> Result<Vec<Gen>> {
    kernel_basis(&a.matrix)
        .basis_vectors
        .iter()
        .map(|v| Binomial::from_vector(v).map(|b| (b.plus, b.minus)))
        .collect()
}

/// `(gens) : (x_0 ... x_{n-1})^inf`, one variable at a time. Each step
/// computes a Gröbner basis with `x_i` cheapest, where every binomial whose
/// leading term is divisible by `x_i` has its trailing term divisible by
/// the same power, and strips that power.
fn saturate(n: usize, mut gens: Vec<Gen>, pair_budget: u64) -> Result<Vec<Gen>> {
    for i in 0..n {
        // a variable absent from all generators is a nonzerodivisor
        if gens.iter().all(|(a, b)| a[i] == 0 && b[i] == 0) {
            continue;
        }
        let order = MonomialOrder::with_cheapest(n, i);
        gens = groebner(&order, &gens, false, pair_budget)?
            .into_iter()
            .map(|g| {
                let (mut a, mut b) = (g.lead, g.trail);
                let m = a[i].min(b[i]);
                a[i] -= m;
                b[i] -= m;
                (a, b)
            })
            .collect();
    }
    Ok(gens)
}

fn to_binomials(bins: Vec<Bin>) -> Vec<Binomial> {
    bins.into_iter()
        .map(|g| {
            let (mut a, mut b) = (g.lead, g.trail);
            cancel_common(&mut a, &mut b);
            Binomial::new(a, b).expect("reduced binomials are nonzero")
        })
        .collect()
}

fn saturated_groebner(a: &ToricMatrix, gens: Vec<Gen>, order: &MonomialOrder, budget: &ToricBudget) -> Result<Vec<Binomial>> {
    if order.var_count() != a.var_count() {
        return Err(Error::DimensionMismatch {
            expected: a.var_count(),
            got: order.var_count(),
        });
    }
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let sat = saturate(a.var_count(), gens, budget.pair_queue)?;
    Ok(to_binomials(groebner(order, &sat, true, budget.pair_queue)?))
}

/// Reduced Gröbner basis of the toric ideal `I_A`, obtained by saturating
/// the ideal of a lattice basis of `ker_Z(A)`.
pub fn lattice_ideal_groebner(a: &ToricMatrix, order: &MonomialOrder, budget: &ToricBudget) -> Result<BinomialBasis> {
    let gens = lattice_generators(a)?;
    let elements = saturated_groebner(a, gens, order, budget)?;
    Ok(BinomialBasis {
        kind: BasisKind::Groebner,
        elements,
        matrix: a.clone(),
    })
}

/// A minimal generating set of `I_A` (a minimal Markov basis). Gröbner
/// elements are scanned by increasing degree and kept only when they are
/// not in the ideal of the elements kept so far.
pub fn minimal_markov(a: &ToricMatrix, budget: &ToricBudget) -> Result<BinomialBasis> {
    let order = MonomialOrder::degrevlex(a.var_count());
    let mut gb = lattice_ideal_groebner(a, &order, budget)?.elements;
    if gb.iter().any(|b| !b.is_homogeneous()) {
        return Err(Error::PreconditionFailed(
            "minimal generating sets are only well defined for homogeneous ideals".into(),
        ));
    }
    gb.sort_by(|x, y| {
        x.degree()
            .cmp(&y.degree())
            .then_with(|| order.cmp(&x.plus, &y.plus))
            .then_with(|| order.cmp(&x.minus, &y.minus))
    });
    // the accepted elements need not generate a saturated ideal
    let mut engine = Engine::new(order.clone(), false, budget.pair_queue);
    let mut kept = Vec::new();
    for b in gb {
        engine.complete(Some(b.degree()))?;
        if engine.add_generator(b.plus.clone(), b.minus.clone())? {
            kept.push(b.canonical(&order));
        }
    }
    Ok(BinomialBasis {
        kind: BasisKind::Markov,
        elements: kept,
        matrix: a.clone(),
    })
}

/// Graver basis from the Gröbner basis of the Lawrence lifting
/// `[[A, 0], [I, I]]`, whose toric ideal has a universal Gröbner basis
/// in bijection with the primitive vectors of `ker_Z(A)`.
pub fn graver_basis(a: &ToricMatrix, budget: &ToricBudget) -> Result<BinomialBasis> {
    let n = a.var_count();
    let gens: Vec<Gen> = lattice_generators(a)?
        .into_iter()
        .map(|(p, m)| {
            let mut x = p.clone();
            x.extend(&m);
            let mut y = m;
            y.extend(&p);
            (x, y)
        })
        .collect();
    let mut elements = Vec::new();
    if !gens.is_empty() {
        let sat = saturate(2 * n, gens, budget.pair_queue)?;
        let order = MonomialOrder::degrevlex(2 * n);
        let gb = groebner(&order, &sat, true, budget.pair_queue)?;
        let small = MonomialOrder::degrevlex(n);
        let mut seen = HashSet::new();
        for g in gb {
            let v: Vec<i64> = (0..n).map(|i| g.lead[i] as i64 - g.trail[i] as i64).collect();
            let b = Binomial::from_i64(&v)?.canonical(&small);
            if seen.insert(b.clone()) {
                elements.push(b);
            }
        }
        elements.sort_by(|x, y| {
            x.degree()
                .cmp(&y.degree())
                .then_with(|| small.cmp(&x.plus, &y.plus))
                .then_with(|| small.cmp(&x.minus, &y.minus))
        });
    }
    Ok(BinomialBasis {
        kind: BasisKind::Graver,
        elements,
        matrix: a.clone(),
    })
}

/// One squarefree binomial per pod of `(n, k, t)`: the positive and
/// negative supports of the pod design.
pub fn octahedral_generators(n: usize, k: usize, t: usize) -> Result<BinomialBasis> {
    let inc = build_matrix(n, k, t)?;
    let a = ToricMatrix::from(&inc);
    let order = MonomialOrder::degrevlex(a.var_count());
    let mut elements = Vec::new();
    for pod in all_pods(n, k, t) {
        let d = pod_expand(&pod, n)?;
        let col = |s: &crate::combinat::SubsetIndex| inc.column_of(s).expect("pod subsets are columns");
        let plus: Vec<usize> = d.positive_support().iter().map(col).collect();
        let minus: Vec<usize> = d.negative_support().iter().map(col).collect();
        elements.push(Binomial::from_supports(a.var_count(), &plus, &minus)?.canonical(&order));
    }
    Ok(BinomialBasis {
        kind: BasisKind::Octahedral,
        elements,
        matrix: a,
    })
}

/// Ideal membership for binomials against a fixed generating set.
pub struct IdealMembership {
    engine: Engine,
}

impl IdealMembership {
    /// `saturated` must only be set when the generated ideal is saturated
    /// with respect to all variables (as toric ideals are).
    pub fn new(elements: &[Binomial], saturated: bool, budget: &ToricBudget) -> Result<Self> {
        let n = elements.first().map_or(0, |b| b.var_count);
        let mut engine = Engine::new(MonomialOrder::degrevlex(n), saturated, budget.pair_queue);
        for b in elements {
            engine.add_generator(b.plus.clone(), b.minus.clone())?;
        }
        engine.complete(None)?;
        Ok(IdealMembership { engine })
    }

    pub fn contains(&self, b: &Binomial) -> bool {
        if self.engine.order().var_count() != b.var_count {
            return false;
        }
        self.engine.normal_form(b.plus.clone(), b.minus.clone()).is_none()
    }

    pub fn generator_count(&self) -> usize {
        self.engine.active_count()
    }
}

/// Whether `J : (x_1 ... x_n)^inf` equals the toric ideal of `J.matrix`.
pub fn saturation_equals(j: &BinomialBasis, budget: &ToricBudget) -> Result<bool> {
    let a = &j.matrix;
    if let Some(bad) = j.elements.iter().find(|b| !b.in_kernel(&a.matrix)) {
        return Err(Error::PreconditionFailed(format!(
            "{} is not in the kernel",
            bad.display_with("x", &a.labels)
        )));
    }
    let order = MonomialOrder::degrevlex(a.var_count());
    let gens: Vec<Gen> = j.elements.iter().map(|b| (b.plus.clone(), b.minus.clone())).collect();
    let sat = saturated_groebner(a, gens, &order, budget)?;
    let toric = lattice_ideal_groebner(a, &order, budget)?.elements;
    if sat.is_empty() || toric.is_empty() {
        return Ok(sat.is_empty() && toric.is_empty());
    }
    let in_sat = IdealMembership::new(&sat, true, budget)?;
    let in_toric = IdealMembership::new(&toric, true, budget)?;
    Ok(toric.iter().all(|b| in_sat.contains(b)) && sat.iter().all(|b| in_toric.contains(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::IntMatrix;

    fn twisted_cubic() -> ToricMatrix {
        ToricMatrix::new(IntMatrix::from_rows(&[[3, 2, 1, 0], [0, 1, 2, 3]]))
    }

    #[test]
    fn twisted_cubic_ideal() {
        let a = twisted_cubic();
        let b = ToricBudget::default();
        let g = lattice_ideal_groebner(&a, &MonomialOrder::degrevlex(4), &b).unwrap();
        assert!(g.all_in_kernel());
        let m = minimal_markov(&a, &b).unwrap();
        assert_eq!(m.degree_counts().into_iter().collect::<Vec<_>>(), vec![(2, 3)]);
        // x0^2 x3 - x1^3 is a cubic in the ideal
        let mem = IdealMembership::new(&g.elements, true, &b).unwrap();
        assert!(mem.contains(&Binomial::from_i64(&[2, -3, 0, 1]).unwrap()));
        assert!(!mem.contains(&Binomial::from_i64(&[1, -1, 0, 0]).unwrap()));
    }

    /// Primitive kernel vectors found by brute force in a box.
    fn brute_graver(a: &IntMatrix, bound: i64) -> Vec<Vec<i64>> {
        let n = a.cols();
        let side = (2 * bound + 1) as usize;
        let kernel: Vec<Vec<i64>> = (0..side.pow(n as u32))
            .map(|mut code| {
                (0..n)
                    .map(|_| {
                        let x = (code % side) as i64 - bound;
                        code /= side;
                        x
                    })
                    .collect::<Vec<i64>>()
            })
            .filter(|v| v.iter().any(|&x| x != 0))
            .filter(|v| a.mul_vec_i64(v).unwrap().iter().all(|x| x.sign() == num_bigint::Sign::NoSign))
            .collect();
        let conformal = |w: &[i64], v: &[i64]| w.iter().zip(v).all(|(&x, &y)| x * y >= 0 && x.abs() <= y.abs());
        let mut out: Vec<Vec<i64>> = kernel
            .iter()
            .filter(|v| !kernel.iter().any(|w| w != *v && conformal(w, v)))
            .filter(|v| v.iter().find(|&&x| x != 0).unwrap() > &0)
            .cloned()
            .collect();
        out.sort();
        out
    }

    #[test]
    fn twisted_cubic_graver_matches_brute_force() {
        let a = twisted_cubic();
        let g = graver_basis(&a, &ToricBudget::default()).unwrap();
        let mut got: Vec<Vec<i64>> = g
            .elements
            .iter()
            .map(|b| {
                let v = b.vector();
                if v.iter().find(|&&x| x != 0).unwrap() < &0 {
                    b.negated().vector()
                } else {
                    v
                }
            })
            .collect();
        got.sort();
        assert_eq!(got, brute_graver(&a.matrix, 3));
    }

    #[test]
    fn trivial_kernel_gives_empty_bases() {
        let inc = build_matrix(4, 3, 2).unwrap();
        let a = ToricMatrix::from(&inc);
        let b = ToricBudget::default();
        assert!(lattice_ideal_groebner(&a, &MonomialOrder::degrevlex(4), &b).unwrap().is_empty());
        assert!(minimal_markov(&a, &b).unwrap().is_empty());
    }

    #[test]
    fn repeated_column_gives_linear_binomial() {
        let a = ToricMatrix::new(IntMatrix::from_rows(&[[1, 1, 0], [0, 0, 1]]));
        let g = lattice_ideal_groebner(&a, &MonomialOrder::degrevlex(3), &ToricBudget::default()).unwrap();
        assert_eq!(g.elements, vec![Binomial::from_i64(&[1, -1, 0]).unwrap()]);
    }

    #[test]
    fn octahedral_counts() {
        assert_eq!(octahedral_generators(6, 3, 2).unwrap().len(), 15);
        let o = octahedral_generators(7, 3, 2).unwrap();
        assert_eq!(o.len(), 105);
        assert!(o.all_in_kernel());
        assert!(o.elements.iter().all(|b| b.degree() == 4 && b.is_squarefree()));
    }
}
