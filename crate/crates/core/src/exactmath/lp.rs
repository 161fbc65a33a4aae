//! Exact simplex over the rationals.
//!
//! Rows are scaled to integers and the tableau is kept fraction-free
//! (every entry is an integer over the common denominator `d`, the last
//! pivot). Arithmetic runs in `i128` with checked operations and is
//! redone in `BigInt` if anything overflows. Pivoting follows Bland's rule.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

/// Maximize `objective · x` over free variables `x` subject to the
/// constraints. A zero objective is a pure feasibility problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLpProblem {
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// An optimal point (any feasible point when the objective is zero).
    Feasible {
        point: Vec<BigRational>,
        value: BigRational,
    },
    /// Multipliers `w` with `sum w_i a_i = 0` and `w · b < 0`, where
    /// `w_i >= 0` on `<=` rows, `w_i <= 0` on `>=` rows, free on `=` rows.
    Infeasible { certificate: Vec<BigRational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible { .. })
    }

    /// Exact re-evaluation of the point or of the Farkas certificate.
    pub fn verify(&self, p: &RationalLpProblem) -> bool {
        match self {
            LpOutcome::Feasible { point, value } => {
                point.len() == p.dim()
                    && &dot(&p.objective, point) == value
                    && p.constraints.iter().all(|c| {
                        let lhs = dot(&c.coeffs, point);
                        match c.relation {
                            Relation::Le => lhs <= c.rhs,
                            Relation::Eq => lhs == c.rhs,
                            Relation::Ge => lhs >= c.rhs,
                        }
                    })
            }
            LpOutcome::Infeasible { certificate } => {
                if certificate.len() != p.constraints.len() {
                    return false;
                }
                let mut combo = vec![BigRational::zero(); p.dim()];
                let mut wb = BigRational::zero();
                for (w, c) in certificate.iter().zip(&p.constraints) {
                    let ok = match c.relation {
                        Relation::Le => !w.is_negative(),
                        Relation::Ge => !w.is_positive(),
                        Relation::Eq => true,
                    };
                    if !ok {
                        return false;
                    }
                    for (s, a) in combo.iter_mut().zip(&c.coeffs) {
                        *s += w * a;
                    }
                    wb += w * &c.rhs;
                }
                combo.iter().all(Zero::is_zero) && wb.is_negative()
            }
        }
    }
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl RationalLpProblem {
    /// Empty feasibility problem in `dim` variables.
    pub fn new(dim: usize) -> Self {
        RationalLpProblem {
            objective: vec![BigRational::zero(); dim],
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.objective.len()
    }

    pub fn maximize(mut self, objective: &[i64]) -> Self {
        self.objective = objective.iter().map(|&x| rat(x)).collect();
        self
    }

    pub fn constrain(&mut self, coeffs: &[i64], relation: Relation, rhs: i64) {
        self.constraints.push(Constraint {
            coeffs: coeffs.iter().map(|&x| rat(x)).collect(),
            relation,
            rhs: rat(rhs),
        });
    }

    fn check(&self) -> Result<()> {
        for c in &self.constraints {
            if c.coeffs.len() != self.dim() {
                return Err(Error::DimensionMismatch {
                    expected: self.dim(),
                    got: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Solve exactly. Infeasibility comes back as a certificate;
/// unboundedness as `Error::Unbounded`.
pub fn lp_feasible(p: &RationalLpProblem) -> Result<LpOutcome> {
    p.check()?;
    let int = IntLp::from_problem(p);
    let mut out = match solve::<i128>(&int) {
        Some(r) => r?,
        None => solve::<BigInt>(&int).expect("bigint never overflows")?,
    };
    if let LpOutcome::Feasible { point, value } = &mut out {
        *value = dot(&p.objective, point);
    }
    debug_assert!(out.verify(p));
    Ok(out)
}

/// Integer-scaled copy of the problem.
struct IntLp {
    n: usize,
    objective: Vec<BigInt>,
    rows: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    rel: Vec<Relation>,
    /// positive scale applied to each row
    scale: Vec<BigInt>,
}

impl IntLp {
    fn from_problem(p: &RationalLpProblem) -> Self {
        let lcm_of = |xs: &mut dyn Iterator<Item = &BigRational>| {
            xs.fold(BigInt::one(), |l, x| l.lcm(x.denom()))
        };
        let ol = lcm_of(&mut p.objective.iter());
        let objective = p
            .objective
            .iter()
            .map(|x| (x * BigRational::from_integer(ol.clone())).to_integer())
            .collect();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut rel = Vec::new();
        let mut scale = Vec::new();
        for c in &p.constraints {
            let l = lcm_of(&mut c.coeffs.iter().chain(std::iter::once(&c.rhs)));
            let lr = BigRational::from_integer(l.clone());
            rows.push(c.coeffs.iter().map(|x| (x * &lr).to_integer()).collect());
            rhs.push((&c.rhs * &lr).to_integer());
            rel.push(c.relation);
            scale.push(l);
        }
        IntLp {
            n: p.dim(),
            objective,
            rows,
            rhs,
            rel,
            scale,
        }
    }
}

trait Num: Clone + std::fmt::Debug {
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn nil() -> Self;
    fn sign(&self) -> Ordering;
    fn cmul(&self, o: &Self) -> Option<Self>;
    fn csub(&self, o: &Self) -> Option<Self>;
    fn cneg(&self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
}

impl Num for i128 {
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn nil() -> Self {
        0
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn cneg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
}

impl Num for BigInt {
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn nil() -> Self {
        Zero::zero()
    }
    fn sign(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn cneg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(self.is_multiple_of(o));
        self / o
    }
}

struct Tableau<T> {
    /// constraint rows; last entry is the right-hand side
    t: Vec<Vec<T>>,
    /// objective row of scaled reduced costs; last entry is `-d * value`
    obj: Vec<T>,
    basis: Vec<usize>,
    d: T,
    width: usize,
}

impl<T: Num> Tableau<T> {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let p = self.t[r][c].clone();
        debug_assert_eq!(p.sign(), Ordering::Greater);
        let pr = self.t[r].clone();
        let update = |row: &mut Vec<T>, d: &T| -> Option<()> {
            let f = row[c].clone();
            if f.sign() == Ordering::Equal {
                for x in row.iter_mut() {
                    if x.sign() != Ordering::Equal {
                        *x = x.cmul(&p)?.div_exact(d);
                    }
                }
                return Some(());
            }
            for (x, y) in row.iter_mut().zip(&pr) {
                let a = x.cmul(&p)?;
                let b = if y.sign() == Ordering::Equal {
                    T::nil()
                } else {
                    f.cmul(y)?
                };
                *x = a.csub(&b)?.div_exact(d);
            }
            Some(())
        };
        let d = self.d.clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r {
                update(row, &d)?;
            }
        }
        update(&mut self.obj, &d)?;
        self.basis[r] = c;
        self.d = p;
        Some(())
    }

    /// Bland's rule iterations until optimal. `Ok(false)` means unbounded.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> Option<bool> {
        loop {
            let Some(c) = (0..self.width).find(|&j| allowed(j) && self.obj[j].sign() == Ordering::Less)
            else {
                return Some(true);
            };
            let rhs = self.rhs();
            let mut best: Option<usize> = None;
            for i in 0..self.t.len() {
                if self.t[i][c].sign() != Ordering::Greater {
                    continue;
                }
                best = Some(match best {
                    None => i,
                    Some(b) => {
                        // compare t[i][rhs]/t[i][c] with t[b][rhs]/t[b][c]
                        let lhs = self.t[i][rhs].cmul(&self.t[b][c])?;
                        let rhs_ = self.t[b][rhs].cmul(&self.t[i][c])?;
                        match lhs.csub(&rhs_)?.sign() {
                            Ordering::Less => i,
                            Ordering::Greater => b,
                            Ordering::Equal => {
                                if self.basis[i] < self.basis[b] {
                                    i
                                } else {
                                    b
                                }
                            }
                        }
                    }
                });
            }
            let Some(r) = best else { return Some(false) };
            self.pivot(r, c)?;
        }
    }
}

/// `None` on arithmetic overflow.
fn solve<T: Num>(p: &IntLp) -> Option<Result<LpOutcome>> {
    let m = p.rows.len();
    let n = p.n;
    // columns: x+ (n), x- (n), slacks, artificials
    let mut sign = vec![1i8; m];
    let mut rel = p.rel.clone();
    for i in 0..m {
        if p.rhs[i].is_negative() {
            sign[i] = -1;
            rel[i] = match rel[i] {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }
    let mut slack_col = vec![None; m];
    let mut art_col = vec![None; m];
    let mut next = 2 * n;
    for i in 0..m {
        if rel[i] != Relation::Eq {
            slack_col[i] = Some(next);
            next += 1;
        }
    }
    let first_art = next;
    for i in 0..m {
        if rel[i] != Relation::Le {
            art_col[i] = Some(next);
            next += 1;
        }
    }
    let width = next;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![T::nil(); width + 1];
        for j in 0..n {
            let a = if sign[i] < 0 {
                -&p.rows[i][j]
            } else {
                p.rows[i][j].clone()
            };
            let neg = -&a;
            row[j] = T::from_big(&a)?;
            row[n + j] = T::from_big(&neg)?;
        }
        let b = if sign[i] < 0 {
            -&p.rhs[i]
        } else {
            p.rhs[i].clone()
        };
        row[width] = T::from_big(&b)?;
        let one = T::from_big(&BigInt::one())?;
        if let Some(s) = slack_col[i] {
            row[s] = if rel[i] == Relation::Le {
                one.clone()
            } else {
                one.cneg()?
            };
        }
        if let Some(a) = art_col[i] {
            row[a] = one;
            basis.push(a);
        } else {
            basis.push(slack_col[i].expect("le row has slack"));
        }
        t.push(row);
    }
    // phase I objective: minimize the sum of artificials
    let mut obj = vec![T::nil(); width + 1];
    for i in 0..m {
        if art_col[i].is_none() {
            continue;
        }
        for j in 0..=width {
            if j >= first_art && j < width {
                continue;
            }
            obj[j] = obj[j].csub(&t[i][j])?;
        }
    }
    let mut tab = Tableau {
        t,
        obj,
        basis,
        d: T::from_big(&BigInt::one())?,
        width,
    };
    if first_art < width {
        tab.optimize(&|_| true)?;
        if tab.obj[width].sign() != Ordering::Equal {
            // infeasible: read duals y from slack/artificial reduced costs
            let d = tab.d.to_big();
            let cert = (0..m)
                .map(|i| {
                    let y_num = if let Some(a) = art_col[i] {
                        &d - tab.obj[a].to_big()
                    } else {
                        -tab.obj[slack_col[i].expect("slack")].to_big()
                    };
                    let w = -y_num * &p.scale[i] * BigInt::from(sign[i]);
                    BigRational::new(w, d.clone())
                })
                .collect();
            return Some(Ok(LpOutcome::Infeasible { certificate: cert }));
        }
        // drive remaining artificials out of the basis
        for r in 0..m {
            if tab.basis[r] < first_art {
                continue;
            }
            let Some(c) = (0..first_art).find(|&j| tab.t[r][j].sign() != Ordering::Equal) else {
                continue; // redundant row; its artificial stays at zero
            };
            if tab.t[r][c].sign() == Ordering::Less {
                for x in tab.t[r].iter_mut() {
                    *x = x.cneg()?;
                }
            }
            tab.pivot(r, c)?;
        }
    }
    // phase II: minimize -objective
    if p.objective.iter().any(|x| !x.is_zero()) {
        let mut cost = vec![BigInt::zero(); width];
        for j in 0..n {
            cost[j] = -&p.objective[j];
            cost[n + j] = p.objective[j].clone();
        }
        let cost: Vec<T> = cost.iter().map(T::from_big).collect::<Option<_>>()?;
        let mut obj = vec![T::nil(); width + 1];
        for j in 0..=width {
            let mut v = if j < width {
                cost[j].cmul(&tab.d)?
            } else {
                T::nil()
            };
            for i in 0..m {
                let b = tab.basis[i];
                if b < width && cost[b].sign() != Ordering::Equal && tab.t[i][j].sign() != Ordering::Equal {
                    v = v.csub(&cost[b].cmul(&tab.t[i][j])?)?;
                }
            }
            obj[j] = v;
        }
        tab.obj = obj;
        if !tab.optimize(&|j| j < first_art)? {
            return Some(Err(Error::Unbounded));
        }
    }
    let d = tab.d.to_big();
    let mut xs = vec![BigInt::zero(); 2 * n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < 2 * n {
            xs[b] = tab.t[i][width].to_big();
        }
    }
    let point: Vec<BigRational> = (0..n)
        .map(|j| BigRational::new(&xs[j] - &xs[n + j], d.clone()))
        .collect();
    Some(Ok(LpOutcome::Feasible {
        value: BigRational::zero(),
        point,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut p = RationalLpProblem::new(1);
        p.constrain(&[1], Relation::Ge, 1);
        p.constrain(&[1], Relation::Le, 0);
        let out = lp_feasible(&p).unwrap();
        assert!(!out.is_feasible());
        assert!(out.verify(&p));
    }

    #[test]
    fn maximize_on_interval() {
        let mut p = RationalLpProblem::new(1).maximize(&[1]);
        p.constrain(&[1], Relation::Ge, 0);
        p.constrain(&[1], Relation::Le, 1);
        let out = lp_feasible(&p).unwrap();
        assert!(out.verify(&p));
        match out {
            LpOutcome::Feasible { point, value } => {
                assert_eq!(point, vec![r(1, 1)]);
                assert_eq!(value, r(1, 1));
            }
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn unbounded_is_an_error() {
        let mut p = RationalLpProblem::new(1).maximize(&[1]);
        p.constrain(&[1], Relation::Ge, 0);
        assert_eq!(lp_feasible(&p), Err(Error::Unbounded));
    }

    #[test]
    fn fractional_optimum() {
        // max x + y s.t. 2x + y <= 2, x + 3y <= 3, x,y >= 0 -> (3/5, 4/5)
        let mut p = RationalLpProblem::new(2).maximize(&[1, 1]);
        p.constrain(&[2, 1], Relation::Le, 2);
        p.constrain(&[1, 3], Relation::Le, 3);
        p.constrain(&[1, 0], Relation::Ge, 0);
        p.constrain(&[0, 1], Relation::Ge, 0);
        let out = lp_feasible(&p).unwrap();
        assert!(out.verify(&p));
        match out {
            LpOutcome::Feasible { point, value } => {
                assert_eq!(point, vec![r(3, 5), r(4, 5)]);
                assert_eq!(value, r(7, 5));
            }
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn rational_coefficients_and_equalities() {
        let mut p = RationalLpProblem::new(2);
        p.constraints.push(Constraint {
            coeffs: vec![r(1, 2), r(1, 3)],
            relation: Relation::Eq,
            rhs: r(1, 6),
        });
        p.constrain(&[1, -1], Relation::Eq, 0);
        let out = lp_feasible(&p).unwrap();
        assert!(out.verify(&p));
        match out {
            LpOutcome::Feasible { point, .. } => assert_eq!(point, vec![r(1, 5), r(1, 5)]),
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn huge_coefficients_fall_back_to_bigint() {
        let big = i64::MAX / 3;
        let mut p = RationalLpProblem::new(3).maximize(&[1, 1, 1]);
        p.constrain(&[big, big - 1, 7], Relation::Le, big);
        p.constrain(&[big - 5, big, 1], Relation::Le, big - 2);
        p.constrain(&[3, big, big - 7], Relation::Le, big - 1);
        for j in 0..3 {
            let mut e = vec![0; 3];
            e[j] = 1;
            p.constrain(&e, Relation::Ge, 0);
        }
        let out = lp_feasible(&p).unwrap();
        assert!(out.is_feasible());
        assert!(out.verify(&p));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(200))]
        #[test]
        fn outcome_always_verifies(
            m in 1usize..6, n in 1usize..4,
            a in proptest::collection::vec(-4i64..5, 24),
            b in proptest::collection::vec(-4i64..5, 6),
            rels in proptest::collection::vec(0u8..3, 6),
            obj in proptest::collection::vec(-2i64..3, 3),
            bounded in proptest::bool::ANY,
        ) {
            let mut p = RationalLpProblem::new(n).maximize(&obj[..n]);
            for i in 0..m {
                let rel = [Relation::Le, Relation::Eq, Relation::Ge][rels[i] as usize];
                p.constrain(&a[i * n..(i + 1) * n], rel, b[i]);
            }
            if bounded {
                for j in 0..n {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    p.constrain(&e, Relation::Le, 5);
                    p.constrain(&e, Relation::Ge, -5);
                }
            }
            match lp_feasible(&p) {
                Ok(out) => proptest::prop_assert!(out.verify(&p)),
                Err(Error::Unbounded) => proptest::prop_assert!(!bounded),
                Err(e) => proptest::prop_assert!(false, "{e}"),
            }
        }
    }
}
