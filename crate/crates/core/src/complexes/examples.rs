use itertools::Itertools;

use super::SimplicialComplex;
use crate::error::{Error, Result};

/// Boundary of the `d`-dimensional cross-polytope. Vertices `2i-1` and
/// `2i` form the antipodal pair of color `i`; facets pick one from each.
pub fn crosspolytope(d: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(Error::BadParameters("crosspolytope needs d >= 1".into()));
    }
    let facets = (1..=d)
        .map(|i| [2 * i - 1, 2 * i])
        .multi_cartesian_product()
        .collect();
    SimplicialComplex::new(2 * d, facets)
}

/// A balanced 2-sphere on 9 vertices obtained from the octahedron by one
/// cross-flip at the facet 145. Facets alternate sides of the facet-ridge
/// bipartition in the listed order: the first seven get orientation +1.
pub fn crossflip_example() -> SimplicialComplex {
    let facets = [
        [1, 4, 6],
        [2, 3, 6],
        [1, 3, 5],
        [2, 4, 5],
        [6, 7, 8],
        [1, 7, 9],
        [3, 8, 9],
        [7, 8, 9],
        [1, 6, 7],
        [3, 6, 8],
        [1, 3, 9],
        [2, 4, 6],
        [1, 4, 5],
        [2, 3, 5],
    ];
    SimplicialComplex::new(9, facets.iter().map(|f| f.to_vec()).collect()).expect("valid facets")
}

/// A pinched torus: an 11-vertex balanced 2-sphere (three octahedra glued
/// by connected sums) with two vertices of the same color identified.
/// Those two vertices share no neighbor, so the quotient is a
/// pseudomanifold whose merged vertex has a link made of two 4-cycles.
pub fn pinched_torus() -> SimplicialComplex {
    fn octahedron(pairs: [(usize, usize); 3]) -> Vec<Vec<usize>> {
        pairs
            .iter()
            .map(|&(a, b)| [a, b])
            .multi_cartesian_product()
            .collect()
    }
    fn without(mut fs: Vec<Vec<usize>>, facet: &[usize]) -> Vec<Vec<usize>> {
        fs.retain(|f| {
            let mut s = f.clone();
            s.sort_unstable();
            s != facet
        });
        fs
    }
    let mut facets = without(octahedron([(1, 2), (3, 4), (5, 6)]), &[2, 4, 6]);
    facets.extend(without(without(octahedron([(2, 7), (4, 8), (6, 9)]), &[2, 4, 6]), &[7, 8, 9]));
    facets.extend(without(octahedron([(7, 10), (8, 11), (9, 12)]), &[7, 8, 9]));
    let relabel = |v: usize| match v {
        10 => 1,
        11 => 10,
        12 => 11,
        v => v,
    };
    let facets = facets
        .into_iter()
        .map(|f| f.into_iter().map(relabel).collect())
        .collect();
    SimplicialComplex::new(11, facets).expect("valid facets")
}
