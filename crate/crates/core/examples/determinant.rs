//! The symmetric edge determinant written as a polynomial in triangle
//! variables divided by a monomial.

use incidence_toric::threepoint::{det_as_c_expression, det_leibniz, tilde_ideal_generators};
use incidence_toric::toric::ToricBudget;

fn main() -> incidence_toric::Result<()> {
    println!("det P_3 = {}", det_leibniz(3, 7)?.display_with("p", &incidence_toric::threepoint::EdgeVector::labels(3)));
    let e3 = det_as_c_expression(3, 7)?;
    println!("n = 3: f = {}, g = {}", e3.f_display(), e3.g_display());
    let e6 = det_as_c_expression(6, 7)?;
    println!("n = 6: {} monomials in f, g = {}, verified {}", e6.f.len(), e6.g_display(), e6.verified);
    let t = tilde_ideal_generators(6, 7, &ToricBudget::default())?;
    println!("n = 6 ideal: {} generators, containment {}", t.generator_count(), t.containment_holds());
    Ok(())
}
