//! The minimal Markov basis of I(6,3,2): fifteen octahedral quartics and
//! fifteen sextics.

use incidence_toric::incidence::build_matrix;
use incidence_toric::toric::{minimal_markov, octahedral_generators, saturation_equals, ToricBudget, ToricMatrix};

fn main() -> incidence_toric::Result<()> {
    let budget = ToricBudget::default();
    let a = ToricMatrix::from(&build_matrix(6, 3, 2)?);
    let m = minimal_markov(&a, &budget)?;
    println!("{} generators, by degree {:?}", m.len(), m.degree_counts());
    for line in m.display_lines("x").iter().take(3) {
        println!("  {line}");
    }
    let oct = octahedral_generators(6, 3, 2)?;
    println!("octahedral quartics saturate to the toric ideal: {}", saturation_equals(&oct, &budget)?);
    Ok(())
}
