use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::edge::{derangement_sign, edge_index, phi, EdgeVector, TriangleLattice};
use super::poly::{SymbolicPoly, TermJson};
use crate::combinat::{derangements, k_subsets};
use crate::error::{Error, Result};
use crate::incidence::build_matrix;
use crate::toric::{minimal_markov, BinomialBasis, ToricBudget, ToricMatrix};

fn edge_count(n: usize) -> usize {
    n * (n - 1) / 2
}

fn exponents(v: &EdgeVector) -> Vec<u32> {
    v.exponents.iter().map(|&e| e as u32).collect()
}

/// `det(P_n)` as the signed sum of `phi(sigma)` over all derangements.
pub fn det_leibniz(n: usize, max_n: usize) -> Result<SymbolicPoly> {
    if n > max_n {
        return Err(Error::BudgetExceeded {
            what: "Leibniz expansion size n",
            limit: max_n as u64,
        });
    }
    if n < 2 {
        return Err(Error::BadParameters("need n >= 2".into()));
    }
    let mut p = SymbolicPoly::zero(edge_count(n));
    for d in derangements(n) {
        p.add_term(exponents(&phi(&d)), BigInt::from(derangement_sign(&d)));
    }
    Ok(p)
}

/// `det(P_n)` by Laplace expansion along rows, memoized on the set of
/// columns still available.
pub fn det_cofactor(n: usize) -> Result<SymbolicPoly> {
    if !(2..=12).contains(&n) {
        return Err(Error::BadParameters(format!("cofactor expansion needs 2 <= n <= 12, got {n}")));
    }
    let vars = edge_count(n);
    let entry = |i: usize, j: usize| -> Option<SymbolicPoly> {
        (i != j).then(|| {
            let mut e = vec![0; vars];
            e[edge_index(i, j)] = 1;
            SymbolicPoly::monomial(e, BigInt::one())
        })
    };
    // minor of rows row..=n over the columns in `mask`
    fn minor(
        row: usize,
        mask: u32,
        n: usize,
        entry: &dyn Fn(usize, usize) -> Option<SymbolicPoly>,
        memo: &mut HashMap<u32, SymbolicPoly>,
        vars: usize,
    ) -> SymbolicPoly {
        if row > n {
            return SymbolicPoly::constant(vars, BigInt::one());
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = SymbolicPoly::zero(vars);
        let mut position = 0;
        for col in 1..=n {
            if mask >> (col - 1) & 1 == 0 {
                continue;
            }
            if let Some(e) = entry(row, col) {
                let sub = minor(row + 1, mask & !(1 << (col - 1)), n, entry, memo, vars);
                let term = e.mul(&sub);
                acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            position += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    let mut memo = HashMap::new();
    Ok(minor(1, (1u32 << n) - 1, n, &entry, &mut memo, vars))
}

/// `det(P_n) = f / g` with `f` a polynomial and `g` a monomial in the
/// triangle variables `c_T`, sharing no monomial factor.
#[derive(Clone, Debug)]
pub struct CExpression {
    pub n: usize,
    pub f: SymbolicPoly,
    pub g: Vec<u32>,
    pub det: SymbolicPoly,
    /// Whether `f(p) == det(P_n) * g(p)` after substituting `c_T -> p` products.
    pub verified: bool,
}

impl CExpression {
    pub fn triangle_labels(&self) -> Vec<String> {
        k_subsets(self.n, 3).iter().map(|s| s.to_string()).collect()
    }

    pub fn f_display(&self) -> String {
        self.f.display_with("c", &self.triangle_labels())
    }

    pub fn g_display(&self) -> String {
        SymbolicPoly::monomial(self.g.clone(), BigInt::one()).display_with("c", &self.triangle_labels())
    }
}

#[derive(Serialize)]
struct CExpressionJson {
    n: usize,
    f: Vec<TermJson>,
    g: Vec<TermJson>,
    f_text: String,
    g_text: String,
    leibniz_terms: usize,
    verified: bool,
}

impl Serialize for CExpression {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let labels = self.triangle_labels();
        CExpressionJson {
            n: self.n,
            f: self.f.to_json(&labels),
            g: SymbolicPoly::monomial(self.g.clone(), BigInt::one()).to_json(&labels),
            f_text: self.f_display(),
            g_text: self.g_display(),
            leibniz_terms: self.det.len(),
            verified: self.verified,
        }
        .serialize(s)
    }
}

/// Each triangle variable as a monomial in the edge variables.
pub fn triangle_images(n: usize) -> Vec<Vec<u32>> {
    k_subsets(n, 3)
        .iter()
        .map(|t| exponents(&EdgeVector::triangle(n, t.members[0], t.members[1], t.members[2])))
        .collect()
}

/// Writes every Leibniz monomial of `det(P_n)` as a Laurent monomial in
/// the `c_T` through its coset certificate, then clears denominators.
pub fn det_as_c_expression(n: usize, max_n: usize) -> Result<CExpression> {
    if !n.is_multiple_of(3) || n == 0 {
        return Err(Error::PreconditionFailed(format!("n = {n} is not divisible by 3")));
    }
    let det = det_leibniz(n, max_n)?;
    let lattice = TriangleLattice::new(n)?;
    let tri = lattice.triangles.len();
    let mut laurent: Vec<(Vec<i64>, BigInt)> = Vec::with_capacity(det.len());
    for (e, c) in &det.terms {
        let v = EdgeVector {
            n,
            exponents: e.iter().map(|&x| x as i64).collect(),
        };
        let cert = lattice
            .coset_member(&v)?
            .ok_or_else(|| Error::PreconditionFailed(format!("{v} is not in C_{n}")))?;
        laurent.push((cert.coefficients, c.clone()));
    }
    let mut g = vec![0u32; tri];
    for (a, _) in &laurent {
        for (gi, &x) in g.iter_mut().zip(a) {
            *gi = (*gi).max((-x).max(0) as u32);
        }
    }
    let mut f = SymbolicPoly::zero(tri);
    for (a, c) in &laurent {
        let e = a.iter().zip(&g).map(|(&x, &gi)| (x + gi as i64) as u32).collect();
        f.add_term(e, c.clone());
    }
    let common: Vec<u32> = f.monomial_content().iter().zip(&g).map(|(a, b)| *a.min(b)).collect();
    let f = f.div_monomial(&common).expect("common factor divides");
    let g: Vec<u32> = g.iter().zip(&common).map(|(a, b)| a - b).collect();

    let images = triangle_images(n);
    let f_p = f.substitute(&images, edge_count(n));
    let g_p = SymbolicPoly::monomial(g.clone(), BigInt::one()).substitute(&images, edge_count(n));
    let verified = f_p == det.mul(&g_p);
    Ok(CExpression { n, f, g, det, verified })
}

/// Generators of `I_{n,3,2} + (f : (prod c)^inf)` with the forward
/// containment check `phi(h) in (det P_n)` for each of them.
#[derive(Clone, Debug)]
pub struct TildeIdeal {
    pub n: usize,
    pub markov: BinomialBasis,
    pub f: SymbolicPoly,
    /// Generator of the saturation, made primitive over the integers.
    pub saturated_f: SymbolicPoly,
    pub unit_ideal: bool,
    pub markov_maps_to_zero: bool,
    pub saturated_f_contained: bool,
}

impl TildeIdeal {
    pub fn containment_holds(&self) -> bool {
        self.markov_maps_to_zero && self.saturated_f_contained
    }

    pub fn generator_count(&self) -> usize {
        self.markov.len() + 1
    }
}

#[derive(Serialize)]
struct TildeJson<'a> {
    n: usize,
    markov: &'a BinomialBasis,
    f: String,
    saturated_f: String,
    unit_ideal: bool,
    markov_maps_to_zero: bool,
    saturated_f_contained: bool,
    containment_holds: bool,
}

impl Serialize for TildeIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let labels: Vec<String> = k_subsets(self.n, 3).iter().map(|t| t.to_string()).collect();
        TildeJson {
            n: self.n,
            markov: &self.markov,
            f: self.f.display_with("c", &labels),
            saturated_f: self.saturated_f.display_with("c", &labels),
            unit_ideal: self.unit_ideal,
            markov_maps_to_zero: self.markov_maps_to_zero,
            saturated_f_contained: self.saturated_f_contained,
            containment_holds: self.containment_holds(),
        }
        .serialize(s)
    }
}

pub fn tilde_ideal_generators(n: usize, max_n: usize, budget: &ToricBudget) -> Result<TildeIdeal> {
    let expr = det_as_c_expression(n, max_n)?;
    let a = ToricMatrix::from(&build_matrix(n, 3, 2)?);
    let markov = minimal_markov(&a, budget)?;

    // saturating a principal ideal variable by variable strips the largest
    // power of that variable dividing the generator
    let mut sat = expr.f.clone();
    for i in 0..sat.var_count {
        let content = sat.monomial_content();
        let mut strip = vec![0; sat.var_count];
        strip[i] = content[i];
        sat = sat.div_monomial(&strip).expect("content divides");
    }
    let content = sat.content();
    let sat = SymbolicPoly {
        var_count: sat.var_count,
        terms: sat.terms.into_iter().map(|(e, c)| (e, c / &content)).collect(),
    };
    let unit_ideal = sat.len() == 1 && sat.terms.keys().all(|e| e.iter().all(|&x| x == 0));

    let images = triangle_images(n);
    let pvars = edge_count(n);
    let markov_maps_to_zero = markov.elements.iter().all(|b| {
        let plus = SymbolicPoly::monomial(b.plus.clone(), BigInt::one()).substitute(&images, pvars);
        let minus = SymbolicPoly::monomial(b.minus.clone(), BigInt::one()).substitute(&images, pvars);
        plus.sub(&minus).is_zero()
    });
    let sat_p = sat.substitute(&images, pvars);
    let saturated_f_contained = sat_p.is_divisible_by(&expr.det);
    Ok(TildeIdeal {
        n,
        markov,
        f: expr.f,
        saturated_f: sat,
        unit_ideal,
        markov_maps_to_zero,
        saturated_f_contained,
    })
}
