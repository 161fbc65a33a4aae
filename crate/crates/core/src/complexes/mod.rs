//! Simplicial complexes and their combinatorial certificates.
//!
//! The facet-ridge bipartition of a balanced sphere is what turns its
//! orientation into a binomial: facets on one side form the positive
//! monomial, the rest the negative one.

mod boundary;
mod complex;
mod examples;
mod verify;

pub use boundary::{orientation_binomial, signed_boundary_matrix, SignedBoundary};
pub use complex::SimplicialComplex;
pub use examples::{crossflip_example, crosspolytope, pinched_torus};
pub use verify::{
    balanced_coloring, facet_ridge_bipartite, is_normal, is_pseudomanifold, is_strongly_connected, orientation,
    verify, Coloring, Orientation, VerifyReport,
};
