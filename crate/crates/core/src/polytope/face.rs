use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::PointConfig;
use crate::combinat::{binom, k_subsets, SubsetIndex};
use crate::error::{Error, Result};
use crate::exactmath::{decimal, lp_feasible, LpOutcome, RationalLpProblem, Relation};
use crate::incidence::IncidenceMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FaceCertificate {
    /// `normal · p = offset` on the subset and `< offset` elsewhere.
    Face {
        #[serde(serialize_with = "ser_rationals")]
        normal: Vec<BigRational>,
        #[serde(serialize_with = "ser_rational")]
        offset: BigRational,
    },
    /// An affine dependence `sum v_i p_i = 0`, `sum v_i = 0`, nonpositive
    /// off the subset and negative somewhere off it.
    NotFace {
        #[serde(with = "decimal::vec")]
        witness: Vec<BigInt>,
    },
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_rationals<S: serde::Serializer>(x: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|r| r.to_string()))
}

impl FaceCertificate {
    pub fn is_face(&self) -> bool {
        matches!(self, FaceCertificate::Face { .. })
    }

    /// Exact re-check against the configuration.
    pub fn verify(&self, cfg: &PointConfig, subset: &[usize]) -> bool {
        let inside = membership(cfg.len(), subset);
        match self {
            FaceCertificate::Face { normal, offset } => {
                normal.len() == cfg.ambient_dim()
                    && cfg.points.iter().zip(&inside).all(|(p, &s)| {
                        let v: BigRational = normal
                            .iter()
                            .zip(p)
                            .map(|(c, &x)| c * BigRational::from_integer(x.into()))
                            .sum();
                        if s {
                            &v == offset
                        } else {
                            &v < offset
                        }
                    })
            }
            FaceCertificate::NotFace { witness } => {
                if witness.len() != cfg.len() {
                    return false;
                }
                let mut combo = vec![BigInt::zero(); cfg.ambient_dim() + 1];
                for (p, w) in cfg.homogenized().iter().zip(witness) {
                    for (c, &x) in combo.iter_mut().zip(p) {
                        *c += w * x;
                    }
                }
                combo.iter().all(Zero::is_zero)
                    && witness.iter().zip(&inside).all(|(w, &s)| s || !w.is_positive())
                    && witness.iter().zip(&inside).any(|(w, &s)| !s && w.is_negative())
            }
        }
    }
}

fn membership(n: usize, subset: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &i in subset {
        if i < n {
            inside[i] = true;
        }
    }
    inside
}

fn face_lp(cfg: &PointConfig, inside: &[bool]) -> RationalLpProblem {
    let n = cfg.ambient_dim();
    let mut lp = RationalLpProblem::new(n + 1);
    for (p, &s) in cfg.points.iter().zip(inside) {
        let mut row = p.clone();
        row.push(-1);
        if s {
            lp.constrain(&row, Relation::Eq, 0);
        } else {
            lp.constrain(&row, Relation::Le, -1);
        }
    }
    lp
}

/// Decides whether `subset` is exactly the vertex set of a face, with a
/// certificate either way.
pub fn is_face(cfg: &PointConfig, subset: &[usize]) -> Result<FaceCertificate> {
    if subset.is_empty() {
        return Err(Error::PreconditionFailed("empty subset".into()));
    }
    if let Some(&i) = subset.iter().find(|&&i| i >= cfg.len()) {
        return Err(Error::IndexOutOfRange { index: i, n: cfg.len() });
    }
    let inside = membership(cfg.len(), subset);
    let lp = face_lp(cfg, &inside);
    match lp_feasible(&lp)? {
        LpOutcome::Feasible { point, .. } => {
            let n = cfg.ambient_dim();
            Ok(FaceCertificate::Face {
                normal: point[..n].to_vec(),
                offset: point[n].clone(),
            })
        }
        LpOutcome::Infeasible { certificate } => {
            let denom = certificate.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
            let mut v: Vec<BigInt> = certificate.iter().map(|w| -(w.numer() * (&denom / w.denom()))).collect();
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() {
                v.iter_mut().for_each(|x| *x /= &g);
            }
            Ok(FaceCertificate::NotFace { witness: v })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Neighborliness {
    /// Largest `s <= checked_up_to` such that every set of at most `s`
    /// points is a face.
    pub neighborly: usize,
    pub checked_up_to: usize,
    pub lps_solved: u64,
    /// First non-face (colex order) of size `neighborly + 1`, if found.
    pub non_face: Option<(Vec<usize>, FaceCertificate)>,
}

/// Checks every subset of size `1..=s_max` for being a face.
pub fn neighborliness(cfg: &PointConfig, s_max: usize, lp_budget: u64) -> Result<Neighborliness> {
    let total: u64 = (1..=s_max.min(cfg.len())).map(|s| binom(cfg.len(), s)).sum();
    if total > lp_budget {
        return Err(Error::BudgetExceeded {
            what: "face LPs",
            limit: lp_budget,
        });
    }
    let mut solved = 0;
    for s in 1..=s_max.min(cfg.len()) {
        let subsets: Vec<Vec<usize>> = k_subsets(cfg.len(), s)
            .into_iter()
            .map(|x| x.members.iter().map(|i| i - 1).collect())
            .collect();
        let found = subsets
            .par_iter()
            .map(|sub| is_face(cfg, sub).map(|c| (sub, c)))
            .find_map_first(|r| match r {
                Ok((_, c)) if c.is_face() => None,
                other => Some(other),
            });
        match found {
            None => solved += subsets.len() as u64,
            Some(Err(e)) => return Err(e),
            Some(Ok((sub, cert))) => {
                return Ok(Neighborliness {
                    neighborly: s - 1,
                    checked_up_to: s,
                    lps_solved: solved + subsets.iter().position(|x| x == sub).unwrap_or(0) as u64 + 1,
                    non_face: Some((sub.clone(), cert)),
                })
            }
        }
    }
    Ok(Neighborliness {
        neighborly: s_max.min(cfg.len()),
        checked_up_to: s_max.min(cfg.len()),
        lps_solved: solved,
        non_face: None,
    })
}

/// The hyperplane `sum_{T in 𝒯} y_T = C(k,t)` where `𝒯` collects the
/// t-subsets of the chosen vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HtHyperplane {
    pub t_sets: Vec<String>,
    pub rhs: u64,
    /// Vertices lying on the hyperplane; the face it cuts out.
    pub on_plane: Vec<String>,
    /// A vertex strictly below the hyperplane.
    pub below: String,
}

impl HtHyperplane {
    /// The hyperplane as a face certificate for its `on_plane` vertices.
    pub fn certificate(&self, a: &IncidenceMatrix) -> FaceCertificate {
        FaceCertificate::Face {
            normal: a
                .row_labels
                .iter()
                .map(|r| BigRational::from_integer(BigInt::from(self.t_sets.contains(&r.to_string()) as i64)))
                .collect(),
            offset: BigRational::from_integer(BigInt::from(self.rhs)),
        }
    }
}

/// Supporting hyperplane through the chosen vertices of `P_{n,k,t}` when
/// `2k < n` and fewer than `2^t` vertices are chosen.
pub fn supporting_hyperplane_ht(a: &IncidenceMatrix, chosen: &[usize]) -> Result<HtHyperplane> {
    let (n, k, t) = (a.n, a.k, a.t);
    if 2 * k >= n {
        return Err(Error::PreconditionFailed(format!("need 2k < n, got k = {k}, n = {n}")));
    }
    if chosen.is_empty() || chosen.len() >= 1 << t {
        return Err(Error::PreconditionFailed(format!("need 1 <= #vertices < 2^t = {}", 1u64 << t)));
    }
    if let Some(&j) = chosen.iter().find(|&&j| j >= a.cols()) {
        return Err(Error::IndexOutOfRange { index: j, n: a.cols() });
    }
    let tsets: Vec<SubsetIndex> = chosen
        .iter()
        .flat_map(|&j| {
            let kset = &a.col_labels[j];
            k_subsets(k, t).into_iter().map(move |s| {
                SubsetIndex::new(n, s.members.iter().map(|&i| kset.members[i - 1]).collect()).expect("subset of a k-set")
            })
        })
        .sorted_by_key(crate::combinat::colex_rank)
        .dedup()
        .collect();
    let rhs = binom(k, t);
    if tsets.len() as u64 > chosen.len() as u64 * rhs {
        return Err(Error::PreconditionFailed("t-set count exceeds the covering bound".into()));
    }
    let value = |kset: &SubsetIndex| tsets.iter().filter(|s| s.is_subset_of(kset)).count() as u64;
    let mut on_plane = Vec::new();
    let mut below = None;
    for kset in &a.col_labels {
        let v = value(kset);
        if v == rhs {
            on_plane.push(kset.to_string());
        } else if below.is_none() {
            below = Some(kset.to_string());
        }
    }
    if chosen.iter().any(|&j| !on_plane.contains(&a.col_labels[j].to_string())) {
        return Err(Error::PreconditionFailed("a chosen vertex is off the hyperplane".into()));
    }
    let below = below.ok_or_else(|| Error::PreconditionFailed("every vertex lies on the hyperplane".into()))?;
    Ok(HtHyperplane {
        t_sets: tsets.iter().map(ToString::to_string).collect(),
        rhs,
        on_plane,
        below,
    })
}
