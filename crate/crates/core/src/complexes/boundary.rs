use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::verify::{ridge_map, verify, Coloring, Orientation};
use super::SimplicialComplex;
use crate::combinat::SubsetIndex;
use crate::error::{Error, Result};
use crate::exactmath::IntMatrix;
use crate::incidence::build_matrix;
use crate::toric::{is_primitive, Binomial, ToricBudget, ToricMatrix};

/// Top boundary matrix with its row (ridge) and column (facet) labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedBoundary {
    pub matrix: IntMatrix,
    pub ridges: Vec<Vec<usize>>,
    pub facets: Vec<Vec<usize>>,
}

impl SignedBoundary {
    /// Sign of the nonzero entries of each row.
    pub fn row_signs(&self) -> Vec<i8> {
        (0..self.matrix.rows())
            .map(|i| {
                let neg = self.matrix.row(i).iter().any(|x| x.is_negative());
                if neg {
                    -1
                } else {
                    1
                }
            })
            .collect()
    }

    /// The matrix with every negative row negated.
    pub fn unsigned(&self) -> IntMatrix {
        let signs = self.row_signs();
        let mut m = self.matrix.clone();
        for (i, s) in signs.iter().enumerate() {
            if *s < 0 {
                for j in 0..m.cols() {
                    let v = -m.get(i, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        m
    }
}

/// The top boundary map when vertices are ordered by color first, then
/// label. Rows are ridges in lexicographic order, columns the facets in
/// stored order. With a proper coloring the sign of an entry depends only
/// on the color missing from the ridge, so every row is sign-uniform.
pub fn signed_boundary_matrix(delta: &SimplicialComplex, coloring: &Coloring) -> Result<SignedBoundary> {
    if !delta.is_pure() || !coloring.is_proper_for(delta) {
        return Err(Error::NotBalanced("some facet repeats a color".into()));
    }
    let ridges: Vec<Vec<usize>> = ridge_map(delta).into_keys().collect();
    let rindex: HashMap<&[usize], usize> = ridges.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
    let mut m = IntMatrix::zeros(ridges.len(), delta.facets.len());
    for (j, f) in delta.facets.iter().enumerate() {
        let mut ordered = f.clone();
        ordered.sort_by_key(|&v| (coloring.color(v), v));
        for (pos, v) in ordered.iter().enumerate() {
            let ridge: Vec<usize> = f.iter().copied().filter(|u| u != v).collect();
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            m.set(rindex[ridge.as_slice()], j, BigInt::from(sign));
        }
    }
    for (i, _) in ridges.iter().enumerate() {
        let row = m.row(i);
        let pos = row.iter().any(|x| x.is_positive());
        let neg = row.iter().any(|x| x.is_negative());
        if pos && neg {
            return Err(Error::NotBalanced(format!("row {:?} mixes signs", ridges[i])));
        }
    }
    let out = SignedBoundary {
        matrix: m,
        ridges,
        facets: delta.facets.clone(),
    };
    debug_assert!(out.unsigned().entries().iter().all(|x| x.is_zero() || x == &BigInt::from(1)));
    Ok(out)
}

/// The squarefree binomial `prod_{eps=+1} c_F - prod_{eps=-1} c_F` in the
/// variables of the `(n, k, k-1)` incidence matrix, `k` the facet size.
///
/// `orientation` is taken with respect to increasing labels, as returned by
/// [`super::orientation`]. It is converted to the color-sorted order in
/// which it becomes the facet-ridge bipartition; the side containing the
/// first facet is the positive monomial.
pub fn orientation_binomial(
    delta: &SimplicialComplex,
    orientation: &Orientation,
    budget: &ToricBudget,
) -> Result<(Binomial, ToricMatrix)> {
    let report = verify(delta);
    let k = delta.dimension() + 1;
    let mut failed = Vec::new();
    if k < 3 {
        failed.push(format!("dimension {} < 2", k - 1));
    }
    for (ok, name) in [
        (report.pseudomanifold, "pseudomanifold"),
        (report.boundaryless, "without boundary"),
        (report.normal, "normal"),
        (report.balanced, "balanced"),
        (report.orientable, "orientable"),
    ] {
        if !ok {
            failed.push(format!("not {name}"));
        }
    }
    if orientation.epsilon.len() != delta.facets.len() || orientation.epsilon.iter().any(|e| e.abs() != 1) {
        failed.push("orientation does not match the facets".into());
    }
    if !failed.is_empty() {
        return Err(Error::PreconditionFailed(failed.join(", ")));
    }
    let k = k as usize;
    let coloring = report.coloring.expect("balanced");
    // re-express the orientation in the color-sorted vertex order, up to a global sign
    let signs: Vec<i8> = delta
        .facets
        .iter()
        .zip(&orientation.epsilon)
        .map(|(f, e)| e * sort_sign(f, &coloring))
        .collect();
    let flip = signs[0];
    let inc = build_matrix(delta.n, k, k - 1)?;
    let a = ToricMatrix::from(&inc);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (f, e) in delta.facets.iter().zip(&signs) {
        let col = inc
            .column_of(&SubsetIndex::new(delta.n, f.clone())?)
            .expect("facets are k-subsets");
        if e * flip > 0 {
            plus.push(col);
        } else {
            minus.push(col);
        }
    }
    let b = Binomial::from_supports(a.var_count(), &plus, &minus)?;
    if !b.in_kernel(&a.matrix) {
        return Err(Error::PreconditionFailed("orientation is not a cycle".into()));
    }
    if !is_primitive(&b, &a, budget)? {
        return Err(Error::PreconditionFailed("orientation binomial is not primitive".into()));
    }
    Ok((b, a))
}

/// Sign of the permutation sorting the (label-sorted) facet by color.
fn sort_sign(f: &[usize], coloring: &Coloring) -> i8 {
    let keys: Vec<usize> = f.iter().map(|&v| coloring.color(v).unwrap_or(0)).collect();
    let inversions = (0..keys.len())
        .flat_map(|i| (i + 1..keys.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| keys[i] > keys[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
