//! Certificates for balanced spheres and the binomials their orientations
//! produce.

use incidence_toric::complexes::{crossflip_example, crosspolytope, orientation, orientation_binomial, pinched_torus, verify};
use incidence_toric::toric::ToricBudget;

fn main() -> incidence_toric::Result<()> {
    let budget = ToricBudget::default();
    for (name, c) in [("octahedron", crosspolytope(3)?), ("cross-flip sphere", crossflip_example())] {
        let r = verify(&c);
        println!("{name}: normal {}, balanced {}, orientable {}", r.normal, r.balanced, r.orientable);
        let eps = orientation(&c).expect("spheres are orientable");
        let (b, a) = orientation_binomial(&c, &eps, &budget)?;
        println!("  degree {} binomial {}", b.degree(), b.display_with("x", &a.labels));
    }
    let p = verify(&pinched_torus());
    println!("pinched torus: orientable {}, normal {}", p.orientable, p.normal);
    Ok(())
}
