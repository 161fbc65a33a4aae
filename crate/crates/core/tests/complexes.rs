use std::collections::{BTreeMap, BTreeSet};

use incidence_toric::complexes::*;
use incidence_toric::exactmath::{rank_q, IntMatrix};
use incidence_toric::incidence::build_matrix;
use incidence_toric::toric::{is_primitive, Binomial, ToricBudget, ToricMatrix};
use proptest::prelude::*;

fn octahedron() -> SimplicialComplex {
    crosspolytope(3).unwrap()
}

fn labels_of(b: &Binomial, a: &ToricMatrix) -> (BTreeSet<String>, BTreeSet<String>) {
    let side = |s: Vec<usize>| s.into_iter().map(|j| a.labels[j].clone()).collect();
    (side(b.plus_support()), side(b.minus_support()))
}

fn set(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Boundary of a signed chain, computed facet by facet with the standard
/// alternating signs on sorted vertices.
fn chain_boundary(c: &SimplicialComplex, eps: &[i8]) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    for (f, &e) in c.facets.iter().zip(eps) {
        for i in 0..f.len() {
            let mut r = f.clone();
            r.remove(i);
            let s = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(r).or_insert(0) += s * e as i64;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

#[test]
fn octahedron_satisfies_everything() {
    let o = octahedron();
    assert_eq!(o.facets.len(), 8);
    let r = verify(&o);
    assert!(r.pure && r.pseudomanifold && r.boundaryless && r.normal && r.strongly_connected);
    assert!(r.balanced && r.orientable && r.facet_ridge_bipartite);
    assert_eq!(r.dimension, 2);
    let col = r.coloring.unwrap();
    let expect: BTreeMap<usize, usize> = [(1, 1), (2, 1), (3, 2), (4, 2), (5, 3), (6, 3)].into();
    assert_eq!(col.classes, expect);
    let eps = r.orientation.unwrap().epsilon;
    assert!(chain_boundary(&o, &eps).is_empty());
}

#[test]
fn crosspolytope_sizes() {
    let sq = crosspolytope(2).unwrap();
    assert_eq!(sq.facets, vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]);
    let r = verify(&sq);
    assert!(r.pseudomanifold && r.boundaryless && r.balanced && r.orientable);
    let c4 = crosspolytope(4).unwrap();
    assert_eq!(c4.facets.len(), 16);
    assert_eq!(c4.vertices().len(), 8);
    let r = verify(&c4);
    assert!(r.pseudomanifold && r.boundaryless && r.normal && r.balanced && r.orientable);
    assert_eq!(r.coloring.unwrap().color_count(), 4);
    assert!(crosspolytope(0).is_err());
}

#[test]
fn single_triangle_has_boundary() {
    let t = SimplicialComplex::new(3, vec![vec![1, 2, 3]]).unwrap();
    let r = verify(&t);
    assert!(r.pure && r.pseudomanifold && r.orientable && r.balanced);
    assert!(!r.boundaryless);
    assert_eq!(r.orientation.unwrap().epsilon, vec![1]);
}

#[test]
fn pinched_torus_is_orientable_but_not_normal() {
    let p = pinched_torus();
    assert_eq!(p.facets.len(), 20);
    assert_eq!(p.vertices().len(), 11);
    let r = verify(&p);
    assert!(r.pseudomanifold && r.boundaryless && r.orientable);
    assert!(!r.normal);
    let eps = r.orientation.unwrap().epsilon;
    assert!(eps.iter().all(|e| e.abs() == 1));
    assert!(chain_boundary(&p, &eps).is_empty());

    // link of the merged vertex: two disjoint 4-cycles
    let link = p.link(&[1]);
    assert_eq!(link.len(), 8);
    let mut comps: Vec<BTreeSet<usize>> = Vec::new();
    for e in &link {
        let hit: Vec<usize> = (0..comps.len()).filter(|&i| e.iter().any(|v| comps[i].contains(v))).collect();
        let mut merged: BTreeSet<usize> = e.iter().copied().collect();
        for &i in hit.iter().rev() {
            merged.extend(comps.remove(i));
        }
        comps.push(merged);
    }
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|c| c.len() == 4));

    // the only obstruction: every other vertex link is connected
    for v in 2..=11 {
        let l = p.link(&[v]);
        let verts: BTreeSet<usize> = l.iter().flatten().copied().collect();
        assert_eq!(verts.len(), l.len(), "link of {v} is a single cycle");
    }
    assert!(orientation_binomial(&p, &Orientation { epsilon: eps }, &ToricBudget::default())
        .unwrap_err()
        .to_string()
        .contains("not normal"));
}

#[test]
fn octahedron_boundary_matches_displayed_matrix() {
    let o = octahedron();
    let r = verify(&o);
    let sb = signed_boundary_matrix(&o, r.coloring.as_ref().unwrap()).unwrap();
    assert_eq!(sb.matrix.rows(), 12);
    assert_eq!(sb.matrix.cols(), 8);
    let rows = ["15", "16", "13", "14", "25", "26", "23", "24", "35", "36", "45", "46"];
    let cols = ["135", "145", "136", "146", "235", "245", "236", "246"];
    let displayed = [
        [-1, -1, 0, 0, 0, 0, 0, 0],
        [0, 0, -1, -1, 0, 0, 0, 0],
        [1, 0, 1, 0, 0, 0, 0, 0],
        [0, 1, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, -1, -1, 0, 0],
        [0, 0, 0, 0, 0, 0, -1, -1],
        [0, 0, 0, 0, 1, 0, 1, 0],
        [0, 0, 0, 0, 0, 1, 0, 1],
        [-1, 0, 0, 0, -1, 0, 0, 0],
        [0, 0, -1, 0, 0, 0, -1, 0],
        [0, -1, 0, 0, 0, -1, 0, 0],
        [0, 0, 0, -1, 0, 0, 0, -1],
    ];
    let digits = |s: &str| s.chars().map(|c| c.to_digit(10).unwrap() as usize).collect::<Vec<_>>();
    let mut flipped = Vec::new();
    for (i, rl) in rows.iter().enumerate() {
        let ri = sb.ridges.iter().position(|r| *r == digits(rl)).unwrap();
        let ours: Vec<i64> = cols
            .iter()
            .map(|cl| {
                let cj = sb.facets.iter().position(|f| *f == digits(cl)).unwrap();
                i64::try_from(sb.matrix.get(ri, cj)).unwrap()
            })
            .collect();
        if ours == displayed[i] {
            continue;
        }
        let neg: Vec<i64> = displayed[i].iter().map(|x| -x).collect();
        assert_eq!(ours, neg, "row {rl}");
        flipped.push(*rl);
    }
    // the display negates exactly the rows missing color 1
    assert_eq!(flipped, ["35", "36", "45", "46"]);
    assert!(sb.row_signs().iter().all(|s| s.abs() == 1));

    // unsigned rows are rows of the (6,3,2) incidence matrix
    let inc = build_matrix(6, 3, 2).unwrap();
    let u = sb.unsigned();
    for (i, ridge) in sb.ridges.iter().enumerate() {
        let row = inc.row_labels.iter().position(|s| s.members == *ridge).unwrap();
        for (j, facet) in sb.facets.iter().enumerate() {
            let col = inc.col_labels.iter().position(|s| s.members == *facet).unwrap();
            assert_eq!(u.get(i, j), inc.matrix.get(row, col));
        }
    }
}

#[test]
fn square_boundary_and_bad_coloring() {
    let sq = crosspolytope(2).unwrap();
    let col = verify(&sq).coloring.unwrap();
    let sb = signed_boundary_matrix(&sq, &col).unwrap();
    assert_eq!((sb.matrix.rows(), sb.matrix.cols()), (4, 4));
    for i in 0..4 {
        let row = sb.matrix.row(i);
        let nz: Vec<_> = row.iter().filter(|x| **x != 0.into()).collect();
        assert!(nz.iter().all(|x| *x == nz[0]));
    }
    let mut bad = col.clone();
    bad.classes.insert(3, 1);
    assert!(matches!(
        signed_boundary_matrix(&sq, &bad),
        Err(incidence_toric::Error::NotBalanced(_))
    ));
}

#[test]
fn octahedron_binomial_is_the_octahedral_quartic() {
    let o = octahedron();
    let eps = orientation(&o).unwrap();
    let (b, a) = orientation_binomial(&o, &eps, &ToricBudget::default()).unwrap();
    let (p, m) = labels_of(&b, &a);
    let q_plus = set(&["136", "246", "145", "235"]);
    let q_minus = set(&["146", "236", "245", "135"]);
    assert!((p == q_plus && m == q_minus) || (p == q_minus && m == q_plus));
    assert!(b.is_squarefree() && b.is_homogeneous() && b.degree() == 4);
}

#[test]
fn four_dimensional_crosspolytope_binomial() {
    let c = crosspolytope(4).unwrap();
    let eps = orientation(&c).unwrap();
    let budget = ToricBudget::default();
    let (b, a) = orientation_binomial(&c, &eps, &budget).unwrap();
    assert_eq!(a.matrix.rows(), 56);
    assert_eq!(a.var_count(), 70);
    assert_eq!(b.degree(), 8);
    assert!(b.is_squarefree() && b.in_kernel(&a.matrix));
    assert!(is_primitive(&b, &a, &budget).unwrap());
}

#[test]
fn crossflip_sphere_gives_the_degree_seven_binomial() {
    let c = crossflip_example();
    assert_eq!(c.facets.len(), 14);
    assert_eq!(c.vertices().len(), 9);
    let r = verify(&c);
    assert!(r.pseudomanifold && r.boundaryless && r.normal && r.balanced && r.orientable);
    let eps = r.orientation.unwrap();
    let (b, a) = orientation_binomial(&c, &eps, &ToricBudget::default()).unwrap();
    let (p, m) = labels_of(&b, &a);
    assert_eq!(p, set(&["146", "236", "135", "245", "678", "179", "389"]));
    assert_eq!(m, set(&["789", "167", "368", "139", "246", "145", "235"]));
    assert_eq!(b.degree(), 7);
}

#[test]
fn orientable_iff_bipartite_on_stored_spheres() {
    for c in [
        octahedron(),
        crosspolytope(3).unwrap(),
        crosspolytope(4).unwrap(),
        crossflip_example(),
    ] {
        let r = verify(&c);
        assert!(r.balanced && r.normal && r.boundaryless && r.dimension >= 2);
        assert_eq!(r.orientable, r.facet_ridge_bipartite);
    }
    // a non-orientable normal pseudomanifold: the 6-vertex projective plane
    let rp2 = SimplicialComplex::parse(
        "1 2 3\n1 3 4\n1 4 5\n1 5 6\n1 2 6\n2 3 5\n3 4 6\n2 4 5\n2 4 6\n3 5 6\n",
    )
    .unwrap();
    let r = verify(&rp2);
    assert!(r.pseudomanifold && r.boundaryless && r.normal);
    assert!(!r.orientable && !r.facet_ridge_bipartite && !r.balanced);
}

#[test]
fn orientations_span_the_top_kernel() {
    for c in [octahedron(), crosspolytope(4).unwrap(), crossflip_example(), pinched_torus()] {
        let eps = orientation(&c).unwrap().epsilon;
        assert!(eps.iter().all(|e| e.abs() == 1));
        // rank of the boundary is facets - 1, so the kernel is a line
        let ridges: BTreeSet<Vec<usize>> = c
            .facets
            .iter()
            .flat_map(|f| (0..f.len()).map(move |i| [&f[..i], &f[i + 1..]].concat()))
            .collect();
        let ridges: Vec<_> = ridges.into_iter().collect();
        let mut rows = vec![vec![0i64; c.facets.len()]; ridges.len()];
        for (j, f) in c.facets.iter().enumerate() {
            for i in 0..f.len() {
                let r = [&f[..i], &f[i + 1..]].concat();
                let ri = ridges.iter().position(|x| *x == r).unwrap();
                rows[ri][j] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(rank_q(&IntMatrix::from_rows(&rows)), c.facets.len() - 1);
    }
}

fn relabel(c: &SimplicialComplex, perm: &[usize], facet_order: &[usize]) -> SimplicialComplex {
    let facets = facet_order
        .iter()
        .map(|&i| c.facets[i].iter().map(|&v| perm[v - 1]).collect())
        .collect();
    SimplicialComplex::new(c.n, facets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verification_is_label_invariant(
        which in 0usize..3,
        perm in Just((1..=9).collect::<Vec<usize>>()).prop_shuffle(),
        order in Just((0..16).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let base = [octahedron(), crossflip_example(), pinched_torus()][which].clone();
        let perm: Vec<usize> = if base.n <= 9 {
            perm.into_iter().filter(|&v| v <= base.n).collect()
        } else {
            (1..=base.n).collect()
        };
        let order: Vec<usize> = order.into_iter().filter(|&i| i < base.facets.len())
            .chain(16..base.facets.len()).collect();
        let c = relabel(&base, &perm, &order);
        let (r0, r) = (verify(&base), verify(&c));
        prop_assert_eq!(r0.pseudomanifold, r.pseudomanifold);
        prop_assert_eq!(r0.normal, r.normal);
        prop_assert_eq!(r0.balanced, r.balanced);
        prop_assert_eq!(r0.orientable, r.orientable);
        prop_assert_eq!(r0.facet_ridge_bipartite, r.facet_ridge_bipartite);
        let eps = r.orientation.clone().unwrap();
        prop_assert!(chain_boundary(&c, &eps.epsilon).is_empty());
        prop_assert!(r.coloring.as_ref().is_none_or(|col| col.is_proper_for(&c)));
        if r.normal && which < 2 {
            let (b, a) = orientation_binomial(&c, &eps, &ToricBudget::default()).unwrap();
            prop_assert!(b.is_squarefree() && b.is_homogeneous() && b.in_kernel(&a.matrix));
            prop_assert_eq!(b.degree() * 2, c.facets.len() as u64);
        }
    }
}
