use rayon::prelude::*;
use serde::Serialize;

use super::edge::{fiber_size_formula, phi, transposition_relations_check, CosetCertificate, EdgeVector, TriangleLattice};
use crate::combinat::{derangements, Derangement};
use crate::error::{Error, Result};

/// One membership statement with its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub name: String,
    pub statement: String,
    pub passed: bool,
    /// Number of instances checked (each with a recomputed certificate when
    /// the claim is a membership).
    pub checked: usize,
    pub failure: Option<String>,
    /// Certificates for the constant instances; per-derangement claims keep
    /// only the first.
    pub certificates: Vec<CosetCertificate>,
}

impl Claim {
    fn new(name: &str, statement: String) -> Self {
        Claim {
            name: name.into(),
            statement,
            passed: true,
            checked: 0,
            failure: None,
            certificates: Vec::new(),
        }
    }

    fn fail(&mut self, why: String) {
        if self.passed {
            self.passed = false;
            self.failure = Some(why);
        }
    }

    /// Requires `v` in `C_n` with a certificate that recomputes.
    fn member(&mut self, lattice: &TriangleLattice, v: &EdgeVector, what: &str, keep: bool) -> Result<()> {
        self.checked += 1;
        match lattice.coset_member(v)? {
            Some(c) if c.verify() => {
                if keep {
                    self.certificates.push(c);
                }
            }
            Some(_) => self.fail(format!("certificate for {what} does not recompute")),
            None => self.fail(format!("{what} is not in C_n")),
        }
        Ok(())
    }

    /// Requires every vector of the batch in `C_n`; keeps one certificate.
    fn all_members(&mut self, lattice: &TriangleLattice, batch: &[(String, EdgeVector)]) -> Result<()> {
        let results: Vec<Result<Option<CosetCertificate>>> =
            batch.par_iter().map(|(_, v)| lattice.coset_member(v)).collect();
        for ((what, _), r) in batch.iter().zip(results) {
            self.checked += 1;
            match r? {
                Some(c) if c.verify() => {
                    if self.certificates.is_empty() {
                        self.certificates.push(c);
                    }
                }
                Some(_) => self.fail(format!("certificate for {what} does not recompute")),
                None => self.fail(format!("{what} is not in C_n")),
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section5Report {
    pub n: usize,
    pub derangements: usize,
    pub lattice_rank: usize,
    pub claims: Vec<Claim>,
}

impl Section5Report {
    pub fn all_passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }
}

fn two_cycles(n: usize, cycles: &[(usize, usize)]) -> EdgeVector {
    cycles
        .iter()
        .fold(EdgeVector::zero(n), |acc, &(a, b)| &acc + &EdgeVector::edge(n, a, b).scaled(2))
}

/// Evaluates every membership claim of the derangement calculus that
/// applies to `n`.
pub fn check_section5(n: usize, max_n: usize) -> Result<Section5Report> {
    if n > max_n {
        return Err(Error::BudgetExceeded {
            what: "derangement enumeration size n",
            limit: max_n as u64,
        });
    }
    if n < 3 {
        return Err(Error::BadParameters(format!("need n >= 3, got {n}")));
    }
    let lattice = TriangleLattice::new(n)?;
    let all: Vec<Derangement> = derangements(n).collect();
    let images: Vec<(String, EdgeVector)> = all.iter().map(|d| (format!("phi{d}"), phi(d))).collect();
    let reference = images[0].1.clone();
    let mut claims = Vec::new();

    let mut degrees = Claim::new("degree", format!("deg phi(sigma) = {n} for all sigma"));
    for (what, v) in &images {
        degrees.checked += 1;
        if v.degree() != n as i64 || !v.is_monomial() {
            degrees.fail(format!("{what} has degree {}", v.degree()));
        }
    }
    claims.push(degrees);

    if n >= 5 {
        let mut c = Claim::new(
            "transitivity",
            format!("phi(sigma) in phi({})C_{n} for all sigma", all[0]),
        );
        let diffs: Vec<(String, EdgeVector)> =
            images.iter().map(|(w, v)| (format!("{w} - phi{}", all[0]), v - &reference)).collect();
        c.all_members(&lattice, &diffs)?;
        claims.push(c);
    }

    if n.is_multiple_of(3) {
        let mut c = Claim::new("phi_in_c", format!("phi(sigma) in C_{n} for all sigma"));
        c.all_members(&lattice, &images)?;
        claims.push(c);
    } else {
        // the degree functional (every c has degree 3) rules membership out
        let mut c = Claim::new("phi_not_in_c", format!("phi(sigma) not in C_{n} for all sigma"));
        for (what, v) in &images {
            c.checked += 1;
            if lattice.coset_member(v)?.is_some() {
                c.fail(format!("{what} is in C_n"));
            }
        }
        claims.push(c);
    }

    if n % 2 == 1 && n % 3 == 2 {
        let all_edges = EdgeVector::all_edges(n);
        let mut lemma = Claim::new(
            "product_lemma",
            format!("prod p_ij in p13*p23*p24*p14*C_{n}"),
        );
        let base = [(1, 3), (2, 3), (2, 4), (1, 4)]
            .iter()
            .fold(EdgeVector::zero(n), |acc, &(a, b)| &acc + &EdgeVector::edge(n, a, b));
        lemma.member(&lattice, &(&all_edges - &base), "prod p_ij / (p13 p23 p24 p14)", true)?;
        claims.push(lemma);

        let mut c = Claim::new("phi_times_product", format!("phi(sigma) * prod p_ij in C_{n} for all sigma"));
        let batch: Vec<(String, EdgeVector)> =
            images.iter().map(|(w, v)| (format!("{w}*prod"), v + &all_edges)).collect();
        c.all_members(&lattice, &batch)?;
        claims.push(c);
    }

    let triple_reps = match n % 3 {
        2 => Some((
            vec![two_cycles(n, &[(1, 2)]), two_cycles(n, &[(1, 3)]), two_cycles(n, &[(2, 3)])],
            EdgeVector::triangle(n, 1, 2, 3).scaled(2),
        )),
        1 if n > 4 => Some((
            vec![
                two_cycles(n, &[(1, 2), (3, 4)]),
                two_cycles(n, &[(1, 3), (2, 4)]),
                two_cycles(n, &[(1, 4), (2, 3)]),
            ],
            [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
                .iter()
                .fold(EdgeVector::zero(n), |acc, &(a, b, c)| &acc + &EdgeVector::triangle(n, a, b, c)),
        )),
        _ => None,
    };
    if let Some((reps, product)) = triple_reps {
        let mut c = Claim::new(
            "triple_product",
            format!("phi(s1)phi(s2)phi(s3) in C_{n} for all s1, s2, s3"),
        );
        // every phi(sigma) shares the coset of each representative
        for (i, r) in reps.iter().enumerate() {
            c.member(&lattice, &(&reference - r), &format!("phi{} - rep{}", all[0], i + 1), true)?;
        }
        c.checked += 1;
        let sum = reps.iter().fold(EdgeVector::zero(n), |acc, r| &acc + r);
        if sum != product {
            c.fail(format!("representatives multiply to {sum}, not {product}"));
        }
        c.member(&lattice, &reference.scaled(3), &format!("phi{}^3", all[0]), true)?;
        if all.len() <= 50 {
            let mut triples = Vec::new();
            for a in 0..all.len() {
                for b in a..all.len() {
                    for d in b..all.len() {
                        let v = &(&images[a].1 + &images[b].1) + &images[d].1;
                        triples.push((format!("{}{}{}", images[a].0, images[b].0, images[d].0), v));
                    }
                }
            }
            let mut ex = Claim::new("", String::new());
            ex.all_members(&lattice, &triples)?;
            c.checked += ex.checked;
            if let Some(f) = ex.failure {
                c.fail(f);
            }
        }
        claims.push(c);
    }

    if n >= 5 {
        let mut c = Claim::new(
            "transposition_lemma",
            "p_ki p_js = p_kj p_is c_kit c_jst / (c_kjt c_ist) and p_ij^2 = p_ks^2 c_ijk c_ijs / (c_iks c_jks)".into(),
        );
        match transposition_relations_check(n)? {
            Ok(count) => c.checked = count,
            Err(idx) => c.fail(format!("identity fails at {idx:?}")),
        }
        claims.push(c);
    }

    // theorem items, as consequences of the claims above
    let passed = |claims: &[Claim], name: &str| claims.iter().find(|c| c.name == name).map(|c| c.passed);
    let mut items = Vec::new();
    if n.is_multiple_of(3) {
        items.push(("det_in_c", format!("det(P_{n}) in K[C_{n}]"), passed(&claims, "phi_in_c")));
    }
    if n != 4 {
        let cube = if n.is_multiple_of(3) {
            passed(&claims, "phi_in_c")
        } else {
            passed(&claims, "triple_product")
        };
        items.push(("det_cubed_in_c", format!("det(P_{n})^3 in K[C_{n}]"), cube));
    }
    if n % 6 == 5 {
        items.push((
            "det_times_product_in_c",
            format!("det(P_{n}) * prod p_ij in K[C_{n}]"),
            passed(&claims, "phi_times_product"),
        ));
    }
    for (name, statement, ok) in items {
        let mut c = Claim::new(name, statement);
        c.checked = 1;
        if ok != Some(true) {
            c.fail("a supporting claim failed".into());
        }
        claims.push(c);
    }

    Ok(Section5Report {
        n,
        derangements: all.len(),
        lattice_rank: lattice.rank(),
        claims,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub n: usize,
    pub derangements: usize,
    pub distinct_images: usize,
    /// `(sigma, brute-force size, formula)` for every disagreement.
    pub mismatches: Vec<(String, usize, u64)>,
}

impl FiberReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares brute-force fiber sizes with `2^{t - s}` for all derangements.
pub fn check_fibers(n: usize, max_n: usize) -> Result<FiberReport> {
    if n > max_n {
        return Err(Error::BudgetExceeded {
            what: "derangement enumeration size n",
            limit: max_n as u64,
        });
    }
    let all: Vec<Derangement> = derangements(n).collect();
    let mut by_image: std::collections::HashMap<EdgeVector, usize> = std::collections::HashMap::new();
    for d in &all {
        *by_image.entry(phi(d)).or_insert(0) += 1;
    }
    let mismatches = all
        .iter()
        .filter_map(|d| {
            let brute = by_image[&phi(d)];
            let formula = fiber_size_formula(d);
            (brute as u64 != formula).then(|| (d.to_string(), brute, formula))
        })
        .collect();
    Ok(FiberReport {
        n,
        derangements: all.len(),
        distinct_images: by_image.len(),
        mismatches,
    })
}
