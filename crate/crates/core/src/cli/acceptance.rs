//! The fourteen acceptance criteria, each returning a pass/fail line.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::RunConfig;
use crate::combinat::{binom, SubsetIndex};
use crate::complexes::{crossflip_example, crosspolytope, orientation, orientation_binomial, pinched_torus, verify};
use crate::designs::{all_pods, min_support_scan, pod_expand, pod_matrix, ScanMode};
use crate::error::Result;
use crate::exactmath::{kernel_basis, LatticeBasis};
use crate::incidence::{build_matrix, check_rank_theorems};
use crate::polytope::{is_face, neighborliness, placing_triangulation_capped, simplex_volumes, PointConfig, VolumeLattice};
use crate::threepoint::{check_fibers, check_section5, det_as_c_expression, tilde_ideal_generators};
use crate::toric::{minimal_markov, octahedral_generators, saturation_equals, Binomial, IdealMembership, ToricMatrix};

pub const CRITERIA: usize = 14;

/// Criteria that cannot pass as stated; see the README.
pub const KNOWN_FAILURES: &[usize] = &[14];

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {:<28} {:>8.2}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub fn name(id: usize) -> &'static str {
    match id {
        1 => "rank law",
        2 => "mod-p rank law",
        3 => "I_{6,3,2} structure",
        4 => "degree of P_{6,3,2}",
        5 => "volume divisibility",
        6 => "support bound",
        7 => "neighborliness",
        8 => "pod generation",
        9 => "saturation identity",
        10 => "topology",
        11 => "orientation binomials",
        12 => "derangement fibers",
        13 => "triangle memberships",
        14 => "det expressions",
        _ => "unknown",
    }
}

fn binomial_from(a: &ToricMatrix, plus: &[&str], minus: &[&str]) -> Result<Binomial> {
    let col = |s: &&str| -> Result<usize> {
        let label = SubsetIndex::parse(6, s)?.to_string();
        Ok(a.labels.iter().position(|l| *l == label).expect("label of a column"))
    };
    let plus = plus.iter().map(col).collect::<Result<Vec<_>>>()?;
    let minus = minus.iter().map(col).collect::<Result<Vec<_>>>()?;
    Binomial::from_supports(a.var_count(), &plus, &minus)
}

fn check(id: usize, cfg: &RunConfig) -> Result<(bool, String)> {
    match id {
        1 => {
            let r = check_rank_theorems(8, &[])?;
            let bad: Vec<String> = r
                .rows
                .iter()
                .filter(|row| row.rank_q != row.expected_rank)
                .map(|row| format!("({},{},{})", row.n, row.k, row.t))
                .collect();
            Ok((bad.is_empty(), format!("{} triples, rank deficient: {:?}", r.rows.len(), bad)))
        }
        2 => {
            let r = check_rank_theorems(8, &[2, 3, 5, 7, 11, 13])?;
            let bad = r.rows.iter().flat_map(|row| row.mod_p.iter()).filter(|m| !m.agrees).count();
            let cases = r.rows.iter().map(|row| row.mod_p.len()).sum::<usize>();
            Ok((
                bad == 0,
                format!(
                    "{cases} (n,k,t,p) cases on the Lefschetz map, {bad} disagree; raw A disagrees in {}",
                    r.raw_incidence_mismatches()
                ),
            ))
        }
        3 => {
            let a = ToricMatrix::from(&build_matrix(6, 3, 2)?);
            let m = minimal_markov(&a, &cfg.toric)?;
            let degrees = m.degree_counts();
            let quartic = binomial_from(&a, &["136", "246", "145", "235"], &["146", "236", "245", "135"])?;
            let sextic = binomial_from(
                &a,
                &["146", "156", "236", "123", "345", "245"],
                &["136", "126", "456", "145", "234", "235"],
            )?;
            let ideal = IdealMembership::new(&m.elements, true, &cfg.toric)?;
            let members = ideal.contains(&quartic) && ideal.contains(&sextic);
            let rank = kernel_basis(&a.matrix).rank();
            let ok = m.len() == 30
                && degrees.get(&4) == Some(&15)
                && degrees.get(&6) == Some(&15)
                && members
                && rank == 5;
            Ok((ok, format!("{} generators, degrees {:?}, displayed pair reduces: {members}, kernel rank {rank}", m.len(), degrees)))
        }
        4 => {
            let cfg632 = PointConfig::from_incidence(&build_matrix(6, 3, 2)?);
            let tri = placing_triangulation_capped(&cfg632, cfg.volume_simplices)?;
            let v: BigInt = simplex_volumes(&cfg632, &tri, VolumeLattice::ColumnLattice)?.into_iter().sum();
            Ok((v == BigInt::from(162), format!("column-lattice volume {v}")))
        }
        5 => {
            let mut parts = Vec::new();
            let mut ok = true;
            for (n, k, t) in [(6, 3, 2), (7, 4, 3)] {
                let pc = PointConfig::from_incidence(&build_matrix(n, k, t)?);
                let tri = placing_triangulation_capped(&pc, cfg.volume_simplices)?;
                let vol: BigInt = simplex_volumes(&pc, &tri, VolumeLattice::Euclidean)?.into_iter().sum();
                let div = [2u32, 3].iter().all(|p| (&vol % *p).is_zero());
                ok &= div;
                parts.push(format!("P_{{{n},{k},{t}}} = {vol} (divisible by 2,3: {div})"));
            }
            Ok((ok, parts.join("; ")))
        }
        6 => {
            let mut parts = Vec::new();
            let mut ok = true;
            for n in [6, 7] {
                let inc = build_matrix(n, 3, 2)?;
                let scan = min_support_scan(&inc, ScanMode::PlusMinusOne { max_support: 8 }, cfg.support_scan)?;
                let pod_supports: Vec<Vec<SubsetIndex>> = all_pods(n, 3, 2)
                    .iter()
                    .map(|p| pod_expand(p, n).map(|d| d.positive_support()))
                    .collect::<Result<_>>()?;
                let witness_is_pod = scan.witness.as_ref().is_some_and(|w| {
                    let (p, m) = (w.positive_support(), w.negative_support());
                    pod_supports.contains(&p) || pod_supports.contains(&m)
                });
                let good = scan.min_positive_support == Some(4) && witness_is_pod;
                ok &= good;
                parts.push(format!("n={n}: min |supp+| = {:?}, pod witness {witness_is_pod}", scan.min_positive_support));
            }
            Ok((ok, parts.join("; ")))
        }
        7 => {
            let mut parts = Vec::new();
            let mut ok = true;
            for n in [6, 7] {
                let inc = build_matrix(n, 3, 2)?;
                let pc = PointConfig::from_incidence(&inc);
                let nb = neighborliness(&pc, 4, cfg.face_lps)?;
                let pod = pod_expand(&all_pods(n, 3, 2)[0], n)?;
                let support: Vec<usize> = pod
                    .positive_support()
                    .iter()
                    .map(|s| inc.column_of(s).expect("pod subsets are columns"))
                    .collect();
                let pod_cert = is_face(&pc, &support)?;
                let pod_non_face = !pod_cert.is_face() && pod_cert.verify(&pc, &support);
                let good = nb.neighborly == 3 && nb.non_face.is_some() && pod_non_face;
                ok &= good;
                parts.push(format!(
                    "n={n}: {}-neighborly after {} LPs ({} of size 3), pod support non-face {pod_non_face}",
                    nb.neighborly,
                    nb.lps_solved,
                    binom(pc.len(), 3)
                ));
            }
            Ok((ok, parts.join("; ")))
        }
        8 => {
            let mut checked = 0;
            let mut bad = Vec::new();
            for n in 2..=7 {
                for k in 2..=n {
                    for t in 1..k {
                        let inc = build_matrix(n, k, t)?;
                        if !inc.has_kernel() {
                            continue;
                        }
                        let pods = pod_matrix(n, k, t)?;
                        let span = LatticeBasis::from_generators(pods.rows(), &pods.columns())?;
                        let ker = kernel_basis(&inc.matrix);
                        if !(span.contains_lattice(&ker)? && ker.contains_lattice(&span)?) {
                            bad.push(format!("({n},{k},{t})"));
                        }
                        checked += 1;
                    }
                }
            }
            Ok((bad.is_empty(), format!("{checked} nontrivial triples, mismatches: {bad:?}")))
        }
        9 => {
            let oct = octahedral_generators(6, 3, 2)?;
            let eq = saturation_equals(&oct, &cfg.toric)?;
            Ok((eq, format!("{} octahedral quartics saturate to I_{{6,3,2}}: {eq}", oct.len())))
        }
        10 => {
            let o = verify(&crosspolytope(3)?);
            let c4 = verify(&crosspolytope(4)?);
            let all_true = |r: &crate::complexes::VerifyReport| {
                r.pure && r.pseudomanifold && r.boundaryless && r.normal && r.balanced && r.orientable && r.facet_ridge_bipartite
            };
            let spheres = [crosspolytope(2)?, crosspolytope(3)?, crosspolytope(4)?, crossflip_example()];
            let lemma = spheres.iter().map(verify).all(|r| r.orientable == r.facet_ridge_bipartite);
            let p = verify(&pinched_torus());
            let pinched = p.pseudomanifold && p.orientable && p.boundaryless && !p.normal;
            let ok = all_true(&o) && all_true(&c4) && lemma && pinched;
            Ok((
                ok,
                format!(
                    "octahedron {}, crosspolytope(4) {}, orientable<=>bipartite {lemma}, pinched torus orientable+boundaryless+non-normal {pinched}",
                    all_true(&o),
                    all_true(&c4)
                ),
            ))
        }
        11 => {
            let o = crosspolytope(3)?;
            let (b, a) = orientation_binomial(&o, &orientation(&o).expect("orientable"), &cfg.toric)?;
            let quartic = binomial_from(&a, &["136", "246", "145", "235"], &["146", "236", "245", "135"])?;
            let oct_ok = b == quartic || b == quartic.negated();
            let c = crossflip_example();
            let (b9, a9) = orientation_binomial(&c, &orientation(&c).expect("orientable"), &cfg.toric)?;
            let label = |s: &str| a9.labels.iter().position(|l| l == s).expect("column label");
            let plus: Vec<usize> = ["146", "236", "135", "245", "678", "179", "389"].iter().map(|s| label(s)).collect();
            let minus: Vec<usize> = ["789", "167", "368", "139", "246", "145", "235"].iter().map(|s| label(s)).collect();
            let displayed = Binomial::from_supports(a9.var_count(), &plus, &minus)?;
            let flip_ok = b9 == displayed;
            // orientation_binomial rejects kernel or primitivity failures
            Ok((
                oct_ok && flip_ok,
                format!("octahedral quartic {oct_ok}, degree-7 cross-flip binomial {flip_ok}; both in kernel and primitive"),
            ))
        }
        12 => {
            let mut total = 0;
            let mut bad = 0;
            for n in 2..=6 {
                let r = check_fibers(n, cfg.max_derangement_n)?;
                total += r.derangements;
                bad += r.mismatches.len();
            }
            Ok((bad == 0, format!("{total} derangements for n <= 6, {bad} fiber-size mismatches")))
        }
        13 => {
            let r6 = check_section5(6, cfg.max_derangement_n)?;
            let r5 = check_section5(5, cfg.max_derangement_n)?;
            let r7 = check_section5(7, cfg.max_derangement_n)?;
            let needed = [
                (&r6, "phi_in_c"),
                (&r5, "phi_times_product"),
                (&r5, "triple_product"),
                (&r5, "product_lemma"),
                (&r7, "triple_product"),
                (&r7, "transposition_lemma"),
            ];
            let mut parts = Vec::new();
            let mut ok = true;
            for (r, name) in needed {
                let c = r.claim(name).expect("claim is evaluated for this n");
                let certs = c.certificates.iter().all(|x| x.verify());
                ok &= c.passed && certs;
                parts.push(format!("n={} {name} {}/{}", r.n, if c.passed { c.checked } else { 0 }, c.checked));
            }
            Ok((ok, parts.join(", ")))
        }
        14 => {
            let e3 = det_as_c_expression(3, cfg.max_det_n)?;
            let three = e3.verified && e3.f_display() == "2*c123" && e3.g_display() == "1";
            let e6 = det_as_c_expression(6, cfg.max_det_n)?;
            let six = e6.verified && e6.det.len() == 130;
            let t3 = tilde_ideal_generators(3, cfg.max_det_n, &cfg.toric)?;
            let reproduces = !t3.unit_ideal && t3.saturated_f.len() == 1;
            let tilde = reproduces && t3.containment_holds();
            Ok((
                three && six && tilde,
                format!(
                    "det(P3) = 2*c123 {three}; n=6 f/g verified over {} Leibniz terms ({} monomials) {six}; \
                     n=3 saturation is {} so (c123) is {}reproduced and the containment check {}",
                    e6.det.terms.values().map(|c| c.magnitude().clone()).sum::<num_bigint::BigUint>(),
                    e6.det.len(),
                    if t3.unit_ideal { "the unit ideal" } else { "proper" },
                    if reproduces { "" } else { "not " },
                    if t3.containment_holds() { "passes" } else { "fails" }
                ),
            ))
        }
        _ => Ok((false, format!("no criterion {id}"))),
    }
}

pub fn run_criterion(id: usize, cfg: &RunConfig) -> CriterionResult {
    let start = Instant::now();
    let (passed, detail) = match check(id, cfg) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult {
        id,
        name: name(id),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(cfg: &RunConfig) -> Vec<CriterionResult> {
    (1..=CRITERIA).map(|id| run_criterion(id, cfg)).collect()
}
