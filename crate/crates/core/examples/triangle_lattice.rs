//! Derangement monomials modulo the lattice generated by triangles.

use incidence_toric::combinat::{derangements, Derangement};
use incidence_toric::threepoint::{check_section5, fiber, fiber_size_formula, phi, TriangleLattice};

fn main() -> incidence_toric::Result<()> {
    let sigma = Derangement::from_cycles(6, &[vec![1, 4, 2, 6, 3, 5]])?;
    let v = phi(&sigma);
    println!("phi{sigma} = {v}");
    let c6 = TriangleLattice::new(6)?;
    if let Some(cert) = c6.coset_member(&v)? {
        println!("in C_6 via {:?}", cert.terms());
    }
    println!("fiber size {} (formula {})", fiber(&v, 8)?.len(), fiber_size_formula(&sigma));
    println!("{} derangements of 6 points", derangements(6).count());

    for n in [5, 6, 7] {
        let r = check_section5(n, 8)?;
        let names: Vec<&str> = r.claims.iter().map(|c| c.name.as_str()).collect();
        println!("n = {n}: all claims hold: {} {:?}", r.all_passed(), names);
    }
    Ok(())
}
