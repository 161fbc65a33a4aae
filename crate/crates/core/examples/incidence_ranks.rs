//! Ranks of the containment matrix of 2-subsets in 3-subsets of [6],
//! over Q and over small prime fields.

use incidence_toric::exactmath::{gcd_maximal_minors, rank_mod_p, rank_q};
use incidence_toric::incidence::build_matrix;

fn main() -> incidence_toric::Result<()> {
    let a = build_matrix(6, 3, 2)?;
    println!("A(6,3,2) is {} x {}", a.rows(), a.cols());
    println!("rank over Q: {}", rank_q(&a.matrix));
    for p in [2, 3, 5, 7] {
        println!("rank over F_{p}: {}", rank_mod_p(&a.matrix, p)?);
    }
    let g = gcd_maximal_minors(&a.matrix, a.rows(), 1_000_000);
    println!("gcd of the 15-minors: {} ({} minors)", g.gcd, g.enumerated);
    Ok(())
}
