//! Derangement monomials, the triangle lattice `C_n` inside the edge
//! group `G_n`, and expressions for `det(P_n)` in three-point variables.
//!
//! Membership in `C_n` is decided at the lattice level: a vector of edge
//! exponents lies in `C_n` when it is an integer combination of triangles,
//! negative coefficients allowed.

mod check;
mod det;
mod edge;
mod poly;

pub use check::{check_fibers, check_section5, Claim, FiberReport, Section5Report};
pub use det::{
    det_as_c_expression, det_cofactor, det_leibniz, tilde_ideal_generators, triangle_images, CExpression, TildeIdeal,
};
pub use edge::{
    derangement_sign, edge_index, fiber, fiber_size_formula, phi, transposition_identities,
    transposition_relations_check, CosetCertificate, EdgeVector, TriangleLattice,
};
pub use poly::{SymbolicPoly, TermJson};

/// Largest `n` for which derangements are enumerated.
pub const DEFAULT_MAX_N: usize = 8;
/// Largest `n` for which `det(P_n)` is expanded symbolically.
pub const DEFAULT_MAX_DET_N: usize = 7;
