//! Exact integer and rational linear algebra.

pub mod decimal;
mod hnf;
mod lattice;
mod lp;
mod matrix;
mod minors;
mod rank;

pub use hnf::{hnf, saturation_index, smith_invariants, HnfResult};
pub use lattice::{combine, kernel_basis, lattice_member, LatticeBasis, LatticeSolver};
pub use lp::{lp_feasible, Constraint, LpOutcome, RationalLpProblem, Relation};
pub use matrix::{det_small, gcd_all, is_zero_vec, to_big, IntMatrix};
pub use minors::{gcd_maximal_minors, gcd_minors_range, minor_count, MinorGcd};
pub use rank::{is_prime, rank_mod_p, rank_q};
